"""Spatial-modulation codebook and transmit/receive sampling.

Each channel use carries log2(n_active * mod_order) bits: the high-order
bits pick the active antenna, the low-order bits pick a Gray-labeled PSK
symbol. The receive samplers produce the pre-beamforming antenna vectors
at Bob and at the attacker so several beamformers can share one sample.
"""

import math
from dataclasses import dataclass

import numpy as np

from .channel import crandn


@dataclass(frozen=True)
class TxCodebook:
    """Enumeration of all (antenna, symbol) transmit hypotheses.

    labels[i] is the bit pattern carried by entry i; antennas[i] the
    0-based active-antenna index; symbols[i] the unit-energy PSK symbol.
    """

    n_active: int
    mod_order: int
    labels: np.ndarray
    antennas: np.ndarray
    symbols: np.ndarray

    @property
    def size(self):
        return self.n_active * self.mod_order

    @property
    def bits_per_use(self):
        return int(math.log2(self.size))

    def effective_scalars(self, row):
        """Post-beamforming symbol hypotheses for a 1 x n_active channel row."""
        return row[self.antennas] * self.symbols


@dataclass(frozen=True)
class RxSample:
    """Pre-beamforming receive vectors for one transmitted entry."""

    y_bob: np.ndarray
    y_eve: np.ndarray
    truth: int


def _gray(k):
    return k ^ (k >> 1)


def build_codebook(n_active, mod_order):
    """Enumerate the n_active * mod_order spatial-modulation hypotheses.

    PSK points s_k = exp(2j pi k / mod_order) carry Gray-coded symbol
    bits; the antenna index is encoded directly in the high-order bits.
    """
    for name, value in (("n_active", n_active), ("mod_order", mod_order)):
        if value < 1 or value & (value - 1):
            raise ValueError(f"{name} must be a power of 2, got {value}")
    if mod_order < 2:
        raise ValueError("mod_order must be at least 2")
    sym_bits = int(math.log2(mod_order))
    points = np.exp(2j * np.pi * np.arange(mod_order) / mod_order)
    labels, antennas, symbols = [], [], []
    for n in range(n_active):
        for k in range(mod_order):
            labels.append((n << sym_bits) | _gray(k))
            antennas.append(n)
            symbols.append(points[k])
    return TxCodebook(n_active=n_active, mod_order=mod_order,
                      labels=np.array(labels), antennas=np.array(antennas),
                      symbols=np.array(symbols))


def transmit_alice(codebook, index, chset, cfg, rng):
    """Alice's antenna-space signal for codebook entry `index`.

    Superimposes the power-scaled data symbol on the selected antenna
    with projected artificial noise, then maps through the antenna
    selection: x_a = T (sqrt(beta P) e_n s + sqrt((1-beta) P) P_AN n_a).
    """
    e = np.zeros(cfg.n_active, dtype=np.complex128)
    e[codebook.antennas[index]] = codebook.symbols[index]
    n_a = math.sqrt(cfg.an_var) * crandn(rng, cfg.n_active)
    inner = (math.sqrt(cfg.beta * cfg.power) * e
             + math.sqrt((1.0 - cfg.beta) * cfg.power) * (chset.P_AN @ n_a))
    return chset.T @ inner


def transmit_mallory(chset, cfg, rng):
    """The attacker's jamming signal x_m = sqrt(P_M) P_JM n_m."""
    n_m = math.sqrt(cfg.jam_var) * crandn(rng, chset.P_JM.shape[1])
    return math.sqrt(cfg.power_mallory) * (chset.P_JM @ n_m)


def receive(codebook, index, chset, cfg, rng):
    """One pre-beamforming receive sample at Bob and at the attacker.

    y_bob = H x_a + F x_m + n_b and y_eve = G x_a + M_self x_m + n_e with
    independent receiver noise; draw order is fixed (AN, jamming, Bob
    noise, attacker noise) so samples reproduce under a seeded rng.
    """
    x_a = transmit_alice(codebook, index, chset, cfg, rng)
    x_m = transmit_mallory(chset, cfg, rng)
    n_b = math.sqrt(cfg.noise_var_bob) * crandn(rng, cfg.n_rx)
    n_e = math.sqrt(cfg.noise_var_eve) * crandn(rng, cfg.n_mallory)
    y_bob = chset.H @ x_a + chset.F @ x_m + n_b
    y_eve = chset.G @ x_a + chset.M_self @ x_m + n_e
    return RxSample(y_bob=y_bob, y_eve=y_eve, truth=int(index))
