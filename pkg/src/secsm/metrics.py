"""Performance quantities: covariances, SJNR, Monte-Carlo mutual
information and secrecy rate, ML detection, BER and FLOP estimates.

Mutual information follows the discrete-input estimator for the
post-beamforming scalar channel: the combined output is whitened by the
scalar interference-plus-noise power, so the noise draws are unit
complex Gaussians regardless of the combiner's scale.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ._kernels import mi_inner_mean
from .channel import crandn
from .modulation import build_codebook, receive

SIDES = ("bob", "mallory")


@dataclass(frozen=True)
class MetricsRecord:
    """Aggregate results for one (method, SNR, jamming power) grid point."""

    method: object
    snr_db: float
    p_m: float
    avg_sr: float
    ber: float
    avg_sjnr_db: float
    sr_samples: tuple = ()
    trial_counts: dict = field(default_factory=dict)
    wall_clock_s: float = 0.0


def noise_cov_bob(chset, cfg):
    """Interference-plus-noise covariance at Bob.

    R_w = (1-beta) P an_var (H T P_AN)(H T P_AN)^H
        + P_M jam_var (F P_JM)(F P_JM)^H + noise_var_bob I.
    """
    an = chset.H @ chset.T @ chset.P_AN
    jam = chset.F @ chset.P_JM
    R = ((1.0 - cfg.beta) * cfg.power * cfg.an_var * (an @ an.conj().T)
         + cfg.power_mallory * cfg.jam_var * (jam @ jam.conj().T)
         + cfg.noise_var_bob * np.eye(cfg.n_rx))
    return 0.5 * (R + R.conj().T)


def _side_terms(chset, cfg, side):
    if side == "bob":
        return (chset.H @ chset.T @ chset.P_AN, chset.F @ chset.P_JM,
                cfg.noise_var_bob)
    if side == "mallory":
        return (chset.G @ chset.T @ chset.P_AN, chset.M_self @ chset.P_JM,
                cfg.noise_var_eve)
    raise ValueError(f"unknown side {side!r}; expected one of {SIDES}")


def scalar_inpn_cov(u, chset, cfg, side="bob"):
    """Interference-plus-noise power seen through the combiner u.

    The Bob side equals u^H R_w u; the attacker side uses its own AN
    leakage and self-interference terms (zero by the jamming precoder's
    construction) with its receiver noise.
    """
    an, jam, noise_var = _side_terms(chset, cfg, side)
    u = np.asarray(u)
    return float((1.0 - cfg.beta) * cfg.power * cfg.an_var
                 * np.sum(np.abs(an.conj().T @ u) ** 2)
                 + cfg.power_mallory * cfg.jam_var
                 * np.sum(np.abs(jam.conj().T @ u) ** 2)
                 + noise_var * np.sum(np.abs(u) ** 2))


def sjnr(u, chset, cfg):
    """Signal-to-jamming-plus-noise ratio of a combiner at Bob."""
    HT = chset.H @ chset.T
    num = (cfg.beta * cfg.power / cfg.n_active
           * float(np.sum(np.abs(HT.conj().T @ u) ** 2)))
    return num / scalar_inpn_cov(u, chset, cfg, "bob")


def mutual_info_mc(u, side, chset, cfg, n_noise, rng):
    """Monte-Carlo mutual information of the post-beamforming channel.

    For every codebook entry, n_noise whitened unit-Gaussian noise draws
    average log2 sum_j exp(-f_ij + |n|^2) over the full codebook, where
    f_ij uses the whitened pairwise symbol differences. The result is
    clamped to [0, log2(size)] bits.
    """
    if n_noise < 1:
        raise ValueError("n_noise must be at least 1")
    power = scalar_inpn_cov(u, chset, cfg, side)
    if power <= 0.0:
        raise ValueError(
            "interference-plus-noise power is zero; the whitened channel "
            "is undefined (set a positive receiver noise variance)")
    channel = chset.H if side == "bob" else chset.G
    row = np.asarray(u).conj() @ channel @ chset.T
    codebook = build_codebook(cfg.n_active, cfg.mod_order)
    g = math.sqrt(cfg.beta * cfg.power / power) * codebook.effective_scalars(row)
    diffs = g[:, None] - g[None, :]
    noise = crandn(rng, codebook.size, n_noise)
    bits = math.log2(codebook.size) - mi_inner_mean(diffs, noise)
    return float(np.clip(bits, 0.0, math.log2(codebook.size)))


def secrecy_rate(beamformer, chset, cfg, n_noise, rng):
    """Per-realization secrecy rate max(0, I_bob - I_attacker).

    Bob combines with the supplied beamformer, the attacker with its own
    u_er; draws come sequentially from the one rng (Bob first).
    """
    i_b = mutual_info_mc(beamformer.u, "bob", chset, cfg, n_noise, rng)
    i_e = mutual_info_mc(chset.u_er, "mallory", chset, cfg, n_noise, rng)
    return max(0.0, i_b - i_e)


def ml_detect(y_bob, beamformer, chset, cfg):
    """Maximum-likelihood detection of the codebook index from y_bob.

    Projects onto the combiner, whitens by the scalar interference-plus-
    noise power, and picks the nearest whitened symbol hypothesis; ties
    break to the lowest index. A zero-power degenerate case (noiseless,
    no interference) skips the whitening, which cannot change the argmin.
    """
    u = beamformer.u
    power = scalar_inpn_cov(u, chset, cfg, "bob")
    scale = 1.0 / math.sqrt(power) if power > 0.0 else 1.0
    z = scale * complex(np.asarray(u).conj() @ y_bob)
    row = np.asarray(u).conj() @ chset.H @ chset.T
    codebook = build_codebook(cfg.n_active, cfg.mod_order)
    refs = (scale * math.sqrt(cfg.beta * cfg.power)
            * codebook.effective_scalars(row))
    return int(np.argmin(np.abs(z - refs) ** 2))


def _ber_counts(beamformer, chset, cfg, codebook, n_trials, rng):
    """Bit-error tally over n_trials random codebook transmissions.

    Returns (uses, bit_errors, squared_error_sum); the squared sum of
    per-use bit errors supports an empirical variance estimate.
    """
    labels = codebook.labels
    errors = 0
    squared = 0
    for _ in range(n_trials):
        idx = int(rng.integers(codebook.size))
        sample = receive(codebook, idx, chset, cfg, rng)
        detected = ml_detect(sample.y_bob, beamformer, chset, cfg)
        e = int(labels[idx] ^ labels[detected]).bit_count()
        errors += e
        squared += e * e
    return n_trials, errors, squared


def ber(method, channel_sets, cfg, n_trials, rng):
    """Monte-Carlo bit error rate of one method over a channel stream.

    Trials are spread as evenly as possible over the supplied channel
    realizations; each counts both spatial and symbol bit errors from the
    codebook labels.
    """
    from .beamformers import compute_beamformer

    if n_trials < 1:
        raise ValueError("n_trials must be at least 1")
    channel_sets = list(channel_sets)
    if not channel_sets:
        raise ValueError("need at least one channel realization")
    codebook = build_codebook(cfg.n_active, cfg.mod_order)
    base, extra = divmod(n_trials, len(channel_sets))
    uses = errors = 0
    for k, chset in enumerate(channel_sets):
        block = base + (1 if k < extra else 0)
        if block == 0:
            continue
        bf = compute_beamformer(method, chset, cfg)
        n, e, _ = _ber_counts(bf, chset, cfg, codebook, block, rng)
        uses += n
        errors += e
    return errors / (uses * codebook.bits_per_use)


_FLOP_COEFFS = {
    "max_rp": (129.0, 0.0),
    "max_wfrp": (266.0, 3.0),
    "max_rp_zfc": (259.0, 0.0),
    "max_sjnr": (268.0, 3.0),
}


def flop_estimate(method, n_rx):
    """Approximate FLOP count of one beamformer construction at size n_rx."""
    key = getattr(method, "value", method)
    cubic, linear = _FLOP_COEFFS[key]
    return cubic * n_rx ** 3 + linear * n_rx
