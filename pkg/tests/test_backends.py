"""Cross-backend equality: compiled kernels must match the pure twin bit for bit."""

import random
from array import array

import pytest

from uwrpl.channel import _kernels as pure

compiled = pytest.importorskip("uwrpl.channel._ckernels")


def test_constants_agree():
    assert compiled.MACKENZIE_D3 == pure.MACKENZIE_D3
    assert compiled.UNCORRECTED_D3 == pure.UNCORRECTED_D3
    assert compiled.TL_GEOMETRY == pure.TL_GEOMETRY
    assert compiled.TL_PRACTICAL == pure.TL_PRACTICAL


def test_scalar_kernels_bit_identical():
    rng = random.Random(0xACDC)
    for _ in range(5000):
        t = rng.uniform(-2.0, 30.0)
        s = rng.uniform(5.0, 40.0)
        d = rng.uniform(0.0, 6000.0)
        f = rng.uniform(0.05, 200.0)
        ph = rng.uniform(7.0, 9.0)
        w = rng.uniform(0.0, 10.0)
        eps = rng.uniform(0.0, 1.0)
        a0 = rng.uniform(0.0, 20.0)
        checks = [
            (compiled.sound_speed_ms(t, s, d, pure.MACKENZIE_D3),
             pure.sound_speed_ms(t, s, d, pure.MACKENZIE_D3)),
            (compiled.sound_speed_ms(t, s, d, pure.UNCORRECTED_D3),
             pure.sound_speed_ms(t, s, d, pure.UNCORRECTED_D3)),
            (compiled.turbulence_noise_db(f), pure.turbulence_noise_db(f)),
            (compiled.shipping_noise_db(f, eps), pure.shipping_noise_db(f, eps)),
            (compiled.wind_noise_db(f, w), pure.wind_noise_db(f, w)),
            (compiled.thermal_noise_db(f), pure.thermal_noise_db(f)),
            (compiled.total_noise_db(f, eps, w), pure.total_noise_db(f, eps, w)),
            (compiled.boric_relaxation_khz(t, s), pure.boric_relaxation_khz(t, s)),
            (compiled.magnesium_relaxation_khz(t), pure.magnesium_relaxation_khz(t)),
            (compiled.absorption_db_km(f, t, s, ph, d / 1000.0),
             pure.absorption_db_km(f, t, s, ph, d / 1000.0)),
            (compiled.attenuation_at_depth_db_km(a0, d),
             pure.attenuation_at_depth_db_km(a0, d)),
        ]
        for mode in (pure.TL_GEOMETRY, pure.TL_PRACTICAL):
            for shallow in (True, False):
                checks.append((
                    compiled.spreading_loss_db(mode, shallow, max(d, 0.5), a0,
                                               1.5, 10.0, 1.0, 1.3),
                    pure.spreading_loss_db(mode, shallow, max(d, 0.5), a0,
                                           1.5, 10.0, 1.0, 1.3),
                ))
        for got, want in checks:
            assert got == want, f"{got.hex()} != {want.hex()}"


def test_scan_links_bit_identical():
    rng = random.Random(7)
    n = 64
    pos = array("d", [rng.uniform(0.0, 700.0) for _ in range(3 * n)])
    alive = bytearray([1] * n)
    alive[5] = alive[40] = 0
    bufs = lambda: (array("i", [0] * n), array("d", [0.0] * n),
                    array("d", [0.0] * n), array("d", [0.0] * n))
    i1, d1, s1, t1 = bufs()
    i2, d2, s2, t2 = bufs()
    for sender in range(n):
        for mode in (pure.TL_GEOMETRY, pure.TL_PRACTICAL):
            c1 = compiled.scan_links(pos, alive, n, sender, 150.0, 171.94, 65.96,
                                     8.06, mode, 100.0, 10.0, 1.0, 1.3, 0.0,
                                     1463.0, i1, d1, s1, t1)
            c2 = pure.scan_links(pos, alive, n, sender, 150.0, 171.94, 65.96,
                                 8.06, mode, 100.0, 10.0, 1.0, 1.3, 0.0,
                                 1463.0, i2, d2, s2, t2)
            assert c1 == c2
            for k in range(c1):
                assert i1[k] == i2[k]
                assert d1[k] == d2[k]
                assert s1[k] == s2[k]
                assert t1[k] == t2[k]


def test_scan_skips_dead_and_self():
    n = 4
    pos = array("d", [0.0, 0.0, 0.0, 10.0, 0.0, 0.0, 20.0, 0.0, 0.0, 9000.0, 0.0, 0.0])
    alive = bytearray([1, 0, 1, 1])
    oi, od, osn, ot = (array("i", [0] * n), array("d", [0.0] * n),
                       array("d", [0.0] * n), array("d", [0.0] * n))
    got = pure.scan_links(pos, alive, n, 0, 150.0, 170.0, 66.0, 8.0,
                          pure.TL_GEOMETRY, 100.0, 10.0, 1.0, 1.3, 0.0, 1500.0,
                          oi, od, osn, ot)
    # node 1 dead, node 3 out of range, sender itself excluded
    assert got == 1
    assert oi[0] == 2
    assert od[0] == 20.0
