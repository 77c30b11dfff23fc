"""Codebook enumeration, labeling and transmit/receive power accounting."""

import numpy as np
import pytest

from secsm.channel import SystemConfig, derive_rng, realize_channels
from secsm.modulation import (build_codebook, receive, transmit_alice,
                              transmit_mallory)


class TestCodebook:
    def test_bpsk_two_antennas(self):
        cb = build_codebook(2, 2)
        assert cb.size == 4
        np.testing.assert_array_equal(cb.antennas, [0, 0, 1, 1])
        np.testing.assert_allclose(cb.symbols, [1, -1, 1, -1], atol=1e-15)

    def test_default_size_and_bits(self):
        cb = build_codebook(8, 4)
        assert cb.size == 32
        assert cb.bits_per_use == 5

    def test_unit_energy(self):
        for m in (2, 4, 8):
            cb = build_codebook(4, m)
            assert np.mean(np.abs(cb.symbols) ** 2) == pytest.approx(1.0)

    def test_labels_bijective(self):
        cb = build_codebook(8, 4)
        assert sorted(cb.labels.tolist()) == list(range(32))
        # label -> (antenna, symbol) -> label round-trip
        for i in range(cb.size):
            label = int(cb.labels[i])
            n = label >> 2
            assert n == int(cb.antennas[i])

    def test_gray_adjacent_symbols(self):
        # adjacent PSK points differ in exactly one symbol bit
        cb = build_codebook(1, 8)
        by_phase = np.argsort(np.angle(cb.symbols) % (2 * np.pi))
        labels = cb.labels[by_phase]
        for a, b in zip(labels, np.roll(labels, -1)):
            assert int(a ^ b).bit_count() == 1

    def test_rejects_bad_orders(self):
        with pytest.raises(ValueError):
            build_codebook(3, 4)
        with pytest.raises(ValueError):
            build_codebook(8, 6)


class TestTransmit:
    def setup_method(self):
        self.cfg = SystemConfig()
        self.ch = realize_channels(self.cfg, 0)
        self.cb = build_codebook(8, 4)

    def test_no_an_limit_exact(self):
        cfg = SystemConfig(beta=1.0)
        rng = derive_rng(1, 9, 0)
        x = transmit_alice(self.cb, 5, self.ch, cfg, rng)
        e = np.zeros(8, dtype=complex)
        e[self.cb.antennas[5]] = self.cb.symbols[5]
        np.testing.assert_allclose(x, np.sqrt(10.0) * self.ch.T @ e,
                                   atol=1e-12)
        assert np.sum(np.abs(x) ** 2) == pytest.approx(10.0)

    def test_an_only_power(self):
        cfg = SystemConfig(beta=0.0)
        rng = derive_rng(1, 9, 1)
        p = np.mean([np.sum(np.abs(transmit_alice(self.cb, 0, self.ch,
                                                  cfg, rng)) ** 2)
                     for _ in range(10_000)])
        assert p == pytest.approx(cfg.power, rel=0.02)

    def test_split_power(self):
        cfg = SystemConfig(beta=0.5, power=10.0)
        rng = derive_rng(1, 9, 2)
        # deterministic symbol part carries beta * power exactly
        sig = np.sqrt(cfg.beta * cfg.power) * self.ch.T[:, 3]
        total = np.mean([np.sum(np.abs(transmit_alice(
            self.cb, 3 * 4, self.ch, cfg, rng)) ** 2)
            for _ in range(10_000)])
        assert np.sum(np.abs(sig) ** 2) == pytest.approx(5.0, abs=1e-12)
        assert total == pytest.approx(10.0, rel=0.02)

    def test_mallory_zero_power(self):
        cfg = SystemConfig(power_mallory=0.0)
        x = transmit_mallory(self.ch, cfg, derive_rng(1, 9, 3))
        np.testing.assert_array_equal(x, np.zeros(2))

    def test_mallory_unit_power(self):
        cfg = SystemConfig(power_mallory=1.0)
        rng = derive_rng(1, 9, 4)
        p = np.mean([np.sum(np.abs(transmit_mallory(self.ch, cfg,
                                                    rng)) ** 2)
                     for _ in range(10_000)])
        assert p == pytest.approx(1.0, rel=0.02)

    def test_mallory_self_interference_free(self):
        cfg = SystemConfig(power_mallory=2.0)
        rng = derive_rng(1, 9, 5)
        for _ in range(100):
            x = transmit_mallory(self.ch, cfg, rng)
            leak = abs(self.ch.u_er.conj() @ self.ch.M_self @ x)
            assert leak <= 1e-9 * max(np.linalg.norm(x), 1e-30)


class TestReceive:
    def test_noiseless_limit(self):
        cfg = SystemConfig(beta=1.0, power_mallory=0.0,
                           noise_var_bob=0.0, noise_var_eve=0.0)
        ch = realize_channels(cfg, 1)
        cb = build_codebook(8, 4)
        smp = receive(cb, 7, ch, cfg, derive_rng(1, 9, 6))
        e = np.zeros(8, dtype=complex)
        e[cb.antennas[7]] = cb.symbols[7]
        np.testing.assert_allclose(smp.y_bob,
                                   np.sqrt(10.0) * ch.H @ ch.T @ e,
                                   atol=1e-12)
        assert smp.truth == 7

    def test_noise_covariance(self):
        cfg = SystemConfig(beta=1.0, power_mallory=0.0, noise_var_bob=2.0)
        ch = realize_channels(cfg, 2)
        cb = build_codebook(8, 4)
        rng = derive_rng(1, 9, 7)
        ys = np.array([receive(cb, 0, ch, cfg, rng).y_bob
                       for _ in range(10_000)])
        w = ys - ys.mean(axis=0)
        cov = (w.conj().T @ w) / len(w)
        np.testing.assert_allclose(cov, 2.0 * np.eye(6),
                                   atol=0.05 * 2.0 * np.sqrt(6))

    def test_reproducible(self):
        cfg = SystemConfig()
        ch = realize_channels(cfg, 3)
        cb = build_codebook(8, 4)
        a = receive(cb, 11, ch, cfg, derive_rng(5, 9, 8))
        b = receive(cb, 11, ch, cfg, derive_rng(5, 9, 8))
        np.testing.assert_array_equal(a.y_bob, b.y_bob)
        np.testing.assert_array_equal(a.y_eve, b.y_eve)
