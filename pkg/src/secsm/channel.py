"""Channel realizations and the derived transmit-side matrices.

A realization bundles the four i.i.d. Rayleigh channel matrices with
everything derived from them: the max-norm antenna selection, the
artificial-noise projection aimed at Bob's null space, and the attacker's
receive vector / self-interference-free jamming precoder pair.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from .numerics import max_eigvec_hermitian, null_space_basis

log = logging.getLogger(__name__)

# rng stream tag for channel sampling; the sweep harness uses tags 1..3
# for its own Monte-Carlo draws.
CHANNEL_STREAM = 0

AN_MODES = ("nullspace", "random")


def derive_rng(seed, *path):
    """Independent generator for one work item.

    Splittable seeding from (seed, path) keeps parallel trials
    reproducible regardless of scheduling or worker count.
    """
    return np.random.default_rng([int(seed)] + [int(p) for p in path])


def crandn(rng, *shape):
    """Circularly-symmetric complex Gaussian draws, unit variance."""
    return math.sqrt(0.5) * (rng.standard_normal(shape)
                             + 1j * rng.standard_normal(shape))


def _is_pow2(x):
    return x >= 1 and (x & (x - 1)) == 0


@dataclass(frozen=True)
class SystemConfig:
    """Scenario parameters for one simulated link.

    n_tx          total transmit antennas at Alice
    n_active      active transmit antennas, fixed at 2^floor(log2 n_tx)
    n_rx          receive antennas at Bob
    n_mallory     antennas at the full-duplex attacker
    power         Alice transmit power [W]
    power_mallory jamming power [W]
    beta          fraction of Alice's power spent on the data symbol,
                  the rest carries artificial noise
    an_var        variance of the artificial-noise vector entries
    jam_var       variance of the jamming vector entries
    noise_var_bob receiver noise variance at Bob
    noise_var_eve receiver noise variance at the attacker
    mod_order     PSK constellation size
    seed          base seed for all derived rng streams
    """

    n_tx: int = 8
    n_active: int = 8
    n_rx: int = 6
    n_mallory: int = 2
    power: float = 10.0
    power_mallory: float = 1.0
    beta: float = 0.5
    an_var: float = 1.0
    jam_var: float = 1.0
    noise_var_bob: float = 1.0
    noise_var_eve: float = 1.0
    mod_order: int = 4
    seed: int = 1

    def __post_init__(self):
        if self.n_tx < 1:
            raise ValueError("n_tx must be at least 1")
        expected = 1 << (self.n_tx.bit_length() - 1)
        if self.n_active != expected:
            raise ValueError(
                f"n_active must equal 2^floor(log2 n_tx) = {expected}, "
                f"got {self.n_active}")
        if self.n_rx < 1:
            raise ValueError("n_rx must be at least 1")
        if self.n_mallory < 1:
            raise ValueError("n_mallory must be at least 1")
        if not _is_pow2(self.mod_order):
            raise ValueError("mod_order must be a power of 2")
        for name in ("power", "power_mallory", "an_var", "jam_var",
                     "noise_var_bob", "noise_var_eve"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError("beta must lie in [0, 1]")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


@dataclass(frozen=True)
class ChannelSet:
    """One channel realization plus its derived precoders.

    H       n_rx x n_tx, Alice -> Bob
    G       n_mallory x n_tx, Alice -> attacker
    F       n_rx x n_mallory, attacker -> Bob
    M_self  n_mallory x n_mallory attacker self-interference channel
    T       n_tx x n_active 0/1 antenna-selection matrix
    P_AN    n_active x n_active artificial-noise projection
    u_er    attacker's unit receive vector
    P_JM    n_mallory x (n_mallory - 1) jamming precoder with
            u_er^H M_self P_JM = 0
    """

    H: np.ndarray
    G: np.ndarray
    F: np.ndarray
    M_self: np.ndarray
    T: np.ndarray
    P_AN: np.ndarray
    u_er: np.ndarray
    P_JM: np.ndarray


def sample_channels(cfg, rng):
    """Draw one set of i.i.d. unit-variance Rayleigh channel matrices.

    Returns (H, G, F, M_self); deterministic given the generator state.
    """
    H = crandn(rng, cfg.n_rx, cfg.n_tx)
    G = crandn(rng, cfg.n_mallory, cfg.n_tx)
    F = crandn(rng, cfg.n_rx, cfg.n_mallory)
    M_self = crandn(rng, cfg.n_mallory, cfg.n_mallory)
    return H, G, F, M_self


def build_tas_matrix(H, n_active):
    """Antenna selection keeping the n_active largest-norm columns of H.

    Ties go to the lower antenna index; the selected columns keep their
    original order, so T is n_tx x n_active with one 1 per column.
    """
    n_tx = H.shape[1]
    if n_active > n_tx:
        raise ValueError(f"cannot select {n_active} of {n_tx} antennas")
    norms = np.sum(np.abs(H) ** 2, axis=0)
    order = np.argsort(-norms, kind="stable")[:n_active]
    selected = np.sort(order)
    return np.eye(n_tx)[:, selected]


def build_an_projection(H, T, an_var, mode="nullspace", rng=None):
    """Artificial-noise projection matrix, scaled to unit AN power.

    In "nullspace" mode the leading columns form a basis of the null
    space of the effective channel H T (so Bob never sees the AN),
    zero-padded to a square n_active x n_active matrix. In "random" mode
    the matrix is a scaled random unitary, which leaks AN into Bob's
    receiver. Either way trace(P_AN P_AN^H) * an_var = 1.
    """
    if mode not in AN_MODES:
        raise ValueError(f"unknown AN mode {mode!r}; expected one of {AN_MODES}")
    n_active = T.shape[1]
    if mode == "random":
        if rng is None:
            raise ValueError("random AN mode needs an rng")
        Q, R = np.linalg.qr(crandn(rng, n_active, n_active))
        Q = Q * (np.diagonal(R) / np.abs(np.diagonal(R)))
        return Q / math.sqrt(n_active * an_var)
    effective = H @ T
    # Null space of the operator H T = complement of the columns of (H T)^H.
    basis = null_space_basis(effective.conj().T)
    width = basis.shape[1]
    if width == 0:
        raise ValueError(
            "AN null space empty: n_active must exceed n_rx for "
            "null-space artificial noise")
    P = np.zeros((n_active, n_active), dtype=np.complex128)
    P[:, :width] = basis / math.sqrt(width * an_var)
    return P


def build_mallory_chain(G, T, M_self, cfg):
    """The attacker's receive vector and jamming precoder.

    u_er maximizes intercepted signal power (dominant eigenvector of
    G T T^H G^H); P_JM spans the orthogonal complement of M_self^H u_er,
    which cancels the attacker's self-interference exactly, scaled so
    trace(P_JM P_JM^H) * jam_var = 1.
    """
    n_mallory = G.shape[0]
    if n_mallory < 2:
        raise ValueError("the attacker needs at least 2 antennas to jam")
    GT = G @ T
    u_er, _ = max_eigvec_hermitian(GT @ GT.conj().T)
    back = M_self.conj().T @ u_er
    if np.linalg.norm(back) <= 1e-14 * np.linalg.norm(M_self):
        # Probability-zero degenerate self-channel: any precoder is
        # self-interference free, use the leading identity columns.
        log.warning("M_self^H u_er vanished; using identity-complement "
                    "jamming precoder")
        basis = np.eye(n_mallory, dtype=np.complex128)[:, :n_mallory - 1]
    else:
        basis = null_space_basis(back.reshape(-1, 1))
    width = basis.shape[1]
    P_JM = basis / math.sqrt(width * cfg.jam_var)
    return u_er, P_JM


def realize_channels(cfg, index, an_mode="nullspace"):
    """Build the full ChannelSet for one realization index.

    Deterministic in (cfg.seed, index): parallel sweeps may realize any
    subset of indices in any order and still agree with a serial run.
    """
    rng = derive_rng(cfg.seed, CHANNEL_STREAM, index)
    H, G, F, M_self = sample_channels(cfg, rng)
    T = build_tas_matrix(H, cfg.n_active)
    P_AN = build_an_projection(H, T, cfg.an_var, mode=an_mode, rng=rng)
    u_er, P_JM = build_mallory_chain(G, T, M_self, cfg)
    return ChannelSet(H=H, G=G, F=F, M_self=M_self, T=T, P_AN=P_AN,
                      u_er=u_er, P_JM=P_JM)
