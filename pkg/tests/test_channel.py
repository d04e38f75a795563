"""Channel model tests.

Expected values marked "oracle" below were produced by an independent
term-by-term evaluation of each formula (plain arithmetic, no shared code
with the implementation) and frozen here.
"""

import math

import pytest
from hypothesis import given, strategies as st

from uwrpl.channel import (
    ChannelSample,
    Environment,
    absorption_db_per_km,
    ambient_noise,
    attenuation_at_depth,
    channel_capacity_bps,
    delay,
    depth_difference,
    linear_chain_energy,
    relaxation_frequencies_khz,
    snr_and_capacity,
    sound_speed,
    transmission_loss,
)

ENV = Environment()  # T=4, salinity 30, pH 8, wind 0, shipping 0.5


class TestSoundSpeed:
    def test_all_depth_terms_vanish_at_surface_35ppt(self):
        assert sound_speed(Environment(temperature_celsius=0.0, salinity_ppt=35.0), 0.0) == 1449.0

    def test_ten_degrees_surface(self):
        # oracle: 1449 + 45.91 - 5.304 + 0.2374 = 1489.8434
        v = sound_speed(Environment(temperature_celsius=10.0, salinity_ppt=35.0), 0.0)
        assert v == pytest.approx(1489.8434, abs=1e-9)

    def test_corrected_depth_term_at_1000m(self):
        # oracle: 1489.8434 + 16.3 + 0.1675 - 7.139e-13*10*1e9 = 1506.303761
        v = sound_speed(Environment(temperature_celsius=10.0, salinity_ppt=35.0), 1000.0)
        assert v == pytest.approx(1506.303761, abs=1e-6)

    def test_uncorrected_mode_is_nonphysical_at_depth(self):
        v = sound_speed(Environment(temperature_celsius=10.0, salinity_ppt=35.0),
                        1000.0, mode="uncorrected")
        assert v == pytest.approx(-71388493.6891, rel=1e-9)
        assert v < 0  # the misprinted coefficient swamps every physical term

    def test_modes_agree_at_zero_depth(self):
        env = Environment(temperature_celsius=15.0, salinity_ppt=33.0)
        assert sound_speed(env, 0.0) == sound_speed(env, 0.0, mode="uncorrected")

    def test_strictly_increasing_in_temperature_0_to_20(self):
        speeds = [sound_speed(Environment(temperature_celsius=t / 2.0, salinity_ppt=35.0), 0.0)
                  for t in range(41)]
        assert all(b > a for a, b in zip(speeds, speeds[1:]))

    def test_negative_depth_rejected(self):
        with pytest.raises(ValueError):
            sound_speed(ENV, -1.0)

    def test_unknown_mode_rejected(self):
        with pytest.raises(ValueError):
            sound_speed(ENV, 0.0, mode="fast")


class TestAmbientNoise:
    def test_thermal_is_minus_15_at_1khz(self):
        assert ambient_noise(ENV, 1.0).thermal_db == -15.0

    def test_components_at_1khz(self):
        # oracle: Nt=17, Ns=40-60log10(1.03)=39.22976651768967,
        # Nw=50-40log10(1.4)=44.15487857287048, total (power sum)=45.372625068378255
        nb = ambient_noise(Environment(shipping_factor=0.5, wind_speed_mps=0.0), 1.0)
        assert nb.turbulence_db == 17.0
        assert nb.shipping_db == pytest.approx(39.22976651768967, rel=1e-12)
        assert nb.wind_db == pytest.approx(44.15487857287048, rel=1e-12)
        assert nb.total_db == pytest.approx(45.372625068378255, rel=1e-12)

    def test_full_shipping_adds_ten_db(self):
        # oracle: 20*(1.0-0.5) = +10 over the 0.5 case
        nb = ambient_noise(Environment(shipping_factor=1.0, wind_speed_mps=0.0), 1.0)
        assert nb.shipping_db == pytest.approx(49.22976651768967, rel=1e-12)

    def test_total_consistent_with_linear_sum(self):
        nb = ambient_noise(ENV, 30.5)
        linear = sum(10.0 ** (c / 10.0) for c in
                     (nb.turbulence_db, nb.shipping_db, nb.wind_db, nb.thermal_db))
        assert nb.total_db == pytest.approx(10.0 * math.log10(linear), rel=1e-9)

    @given(f=st.floats(0.05, 200.0), eps=st.floats(0.0, 1.0), w=st.floats(0.0, 10.0))
    def test_total_bounded_by_loudest_component(self, f, eps, w):
        nb = ambient_noise(Environment(shipping_factor=eps, wind_speed_mps=w), f)
        loudest = max(nb.turbulence_db, nb.shipping_db, nb.wind_db, nb.thermal_db)
        assert loudest - 1e-9 <= nb.total_db <= loudest + 10.0 * math.log10(4.0) + 1e-9

    @given(f=st.floats(0.05, 200.0), w1=st.floats(0.0, 10.0), w2=st.floats(0.0, 10.0))
    def test_monotone_in_wind(self, f, w1, w2):
        lo, hi = sorted((w1, w2))
        n_lo = ambient_noise(Environment(wind_speed_mps=lo), f).total_db
        n_hi = ambient_noise(Environment(wind_speed_mps=hi), f).total_db
        assert n_hi >= n_lo - 1e-12

    @given(f=st.floats(0.05, 200.0), e1=st.floats(0.0, 1.0), e2=st.floats(0.0, 1.0))
    def test_monotone_in_shipping(self, f, e1, e2):
        lo, hi = sorted((e1, e2))
        n_lo = ambient_noise(Environment(shipping_factor=lo), f).total_db
        n_hi = ambient_noise(Environment(shipping_factor=hi), f).total_db
        assert n_hi >= n_lo - 1e-12

    def test_nonpositive_frequency_rejected(self):
        with pytest.raises(ValueError):
            ambient_noise(ENV, 0.0)


class TestSnrCapacity:
    def test_zero_snr_zero_capacity(self):
        assert channel_capacity_bps(0.0, 30000.0) == 0.0

    def test_unit_snr(self):
        assert channel_capacity_bps(1.0, 30000.0) == 30000.0

    def test_snr_three(self):
        # oracle: log2(4) = 2
        assert channel_capacity_bps(3.0, 30000.0) == 60000.0

    def test_capacity_decreases_with_noise_at_fixed_rx_power(self):
        rx = 1e-3
        caps = [channel_capacity_bps(rx / (n * 30000.0), 30000.0)
                for n in (1e-9, 1e-8, 1e-7, 1e-6)]
        assert all(b < a for a, b in zip(caps, caps[1:]))

    def test_composite_monotone_in_shipping(self):
        sample = ChannelSample(frequency_khz=30.5, distance_m=120.0,
                               depth_m=300.0, bandwidth_hz=30000.0)
        quiet, _ = snr_and_capacity(1.3, sample, Environment(shipping_factor=0.0))
        loud, _ = snr_and_capacity(1.3, sample, Environment(shipping_factor=1.0))
        assert loud < quiet

    def test_zero_bandwidth_rejected(self):
        with pytest.raises(ValueError):
            ChannelSample(frequency_khz=30.5, distance_m=10.0, depth_m=10.0,
                          bandwidth_hz=0.0)
        with pytest.raises(ValueError):
            channel_capacity_bps(1.0, 0.0)


class TestAbsorption:
    def test_boric_relaxation_at_26c(self):
        # oracle: 0.78*sqrt(35/35)*e^1 = 0.78e = 2.120259826198055
        f1, _ = relaxation_frequencies_khz(26.0, 35.0)
        assert f1 == pytest.approx(0.78 * math.e, rel=1e-12)

    def test_magnesium_relaxation_at_17c(self):
        # oracle: 42*e^1 = 114.1678367952799
        _, f2 = relaxation_frequencies_khz(17.0, 35.0)
        assert f2 == pytest.approx(42.0 * math.e, rel=1e-12)

    def test_ph_factor_is_unity_at_ph8(self):
        # at pH 8 the boric exponent is exactly 0, so alpha is insensitive to
        # the exponent scale; check against a manual recomputation
        env = Environment(temperature_celsius=4.0, salinity_ppt=30.0, ph=8.0)
        f = 30.5
        f1, f2 = relaxation_frequencies_khz(4.0, 30.0)
        fsq = f * f
        expected = (0.106 * (f1 * fsq) / (f1 * f1 + fsq)
                    + 0.52 * (1 + 4.0 / 43.0) * (30.0 / 25.0)
                    * (f2 * fsq) / (f2 * f2 + fsq) * math.exp(-1.0 / 6.0)
                    + 4.9e-4 * fsq * math.exp(-(4.0 / 27.0 + 1.0 / 17.0)))
        assert absorption_db_per_km(env, f, 1.0) == pytest.approx(expected, rel=1e-12)

    def test_increasing_in_frequency_below_relaxations(self):
        alphas = [absorption_db_per_km(ENV, f, 1.0) for f in (1.0, 5.0, 10.0, 30.0)]
        assert all(b > a for a, b in zip(alphas, alphas[1:]))

    def test_nonpositive_frequency_rejected(self):
        with pytest.raises(ValueError):
            absorption_db_per_km(ENV, -5.0, 1.0)


class TestAttenuationAtDepth:
    def test_identity_at_surface(self):
        assert attenuation_at_depth(12.5, 0.0) == 12.5

    def test_1000m(self):
        # oracle: 10*(1 - 0.0193) = 9.807
        assert attenuation_at_depth(10.0, 1000.0) == pytest.approx(9.807, rel=1e-12)

    def test_zero_near_linear_root(self):
        assert attenuation_at_depth(10.0, 51813.47) == pytest.approx(0.0, abs=1e-3)

    def test_clamped_beyond_root(self):
        assert attenuation_at_depth(10.0, 80000.0) == 0.0

    def test_linear_and_decreasing(self):
        vals = [attenuation_at_depth(10.0, d) for d in (0.0, 500.0, 1000.0, 1500.0)]
        assert all(b < a for a, b in zip(vals, vals[1:]))
        diffs = [a - b for a, b in zip(vals, vals[1:])]
        assert diffs[0] == pytest.approx(diffs[1], rel=1e-9)
        assert diffs[1] == pytest.approx(diffs[2], rel=1e-9)


class TestTransmissionLoss:
    def test_shallow_zero_at_reference_range(self):
        assert transmission_loss("shallow-cylindrical", 1.0, 30.5, ENV) == 0.0

    def test_deep_zero_at_one_meter(self):
        assert transmission_loss("deep-spherical", 1.0, 30.5, ENV,
                                 alpha_db_per_km=0.0) == 0.0

    def test_deep_pure_spherical_at_1km(self):
        # oracle: 20*log10(1000) = 60
        assert transmission_loss("deep-spherical", 1000.0, 30.5, ENV,
                                 alpha_db_per_km=0.0) == 60.0

    def test_deep_includes_absorption_and_anomaly(self):
        base = transmission_loss("deep-spherical", 2000.0, 30.5, ENV,
                                 alpha_db_per_km=0.0)
        with_alpha = transmission_loss("deep-spherical", 2000.0, 30.5, ENV,
                                       alpha_db_per_km=5.0)
        with_anomaly = transmission_loss("deep-spherical", 2000.0, 30.5, ENV, 3.0,
                                         alpha_db_per_km=0.0)
        assert with_alpha == pytest.approx(base + 10.0, rel=1e-12)  # 5 dB/km * 2 km
        assert with_anomaly == pytest.approx(base + 3.0, rel=1e-12)

    def test_shallow_coefficient_configurable(self):
        tl10 = transmission_loss("shallow-cylindrical", 100.0, 30.5, ENV)
        tl100 = transmission_loss("shallow-cylindrical", 100.0, 30.5, ENV,
                                  shallow_coeff=100.0)
        assert tl10 == pytest.approx(20.0, rel=1e-12)
        assert tl100 == pytest.approx(200.0, rel=1e-12)

    def test_nonpositive_range_rejected(self):
        with pytest.raises(ValueError):
            transmission_loss("deep-spherical", 0.0, 30.5, ENV)

    def test_unknown_geometry_rejected(self):
        with pytest.raises(ValueError):
            transmission_loss("duct", 10.0, 30.5, ENV)


class TestDelay:
    def test_single_hop_propagation(self):
        db = delay([1500.0], 1500.0, 400.0, 30000.0)
        assert db.propagation_s == 1.0

    def test_single_hop_transmission(self):
        # oracle: 400 bits / 30000 bps = 13.333 ms
        db = delay([1500.0], 1500.0, 400.0, 30000.0)
        assert db.transmission_s == pytest.approx(0.013333333333333334, rel=1e-12)

    def test_two_hop_sums(self):
        # oracle: 200/1500 = 0.13333 s, 2*(32/30000) = 2.1333 ms
        db = delay([100.0, 100.0], 1500.0, 32.0, 30000.0)
        assert db.propagation_s == pytest.approx(0.13333333333333333, rel=1e-12)
        assert db.transmission_s == pytest.approx(0.0021333333333333334, rel=1e-12)

    def test_total_is_exact_component_sum(self):
        db = delay([137.0, 91.5, 60.1], 1481.7, 256.0, 30000.0,
                   proc_s=0.003, queue_s=0.017)
        assert db.total_s == db.processing_s + db.queuing_s + db.propagation_s + db.transmission_s

    def test_empty_path_rejected(self):
        with pytest.raises(ValueError):
            delay([], 1500.0, 400.0, 30000.0)


class TestDepthDifference:
    def test_zero_at_equal_pressure(self):
        assert depth_difference(101325.0, 101325.0, ENV) == 0.0

    def test_98kpa_is_10m(self):
        # oracle: 98000/(1000*9.8) = 10
        assert depth_difference(98000.0, 0.0, ENV) == 10.0

    def test_antisymmetric(self):
        a, b = 150000.0, 93000.0
        assert depth_difference(a, b, ENV) == -depth_difference(b, a, ENV)


class TestLinearChainEnergy:
    def test_single_link(self):
        assert linear_chain_energy("shallow", "multi-hop", 1, 100.0, 1.0) == 1.0

    def test_three_hop_shallow_chain(self):
        # oracle: 3*4/2 = 6 relay transmissions
        assert linear_chain_energy("shallow", "multi-hop", 3, 100.0, 1.0) == 6.0

    def test_deep_multihop_is_linear(self):
        assert linear_chain_energy("deep", "multi-hop", 7, 100.0, 2.0) == 14.0

    def test_deep_singlehop_quadratic_per_node(self):
        # spherical spreading: the node at 2d pays 4x the node at d
        e1 = linear_chain_energy("deep", "single-hop", 1, 100.0, 1.0)
        e2 = linear_chain_energy("deep", "single-hop", 2, 100.0, 1.0)
        assert e2 - e1 == 4.0 * e1

    def test_shallow_singlehop_matches_relay_total(self):
        # cylindrical spreading makes direct and relayed totals equal
        for n in (1, 4, 9):
            direct = linear_chain_energy("shallow", "single-hop", n, 50.0, 0.25)
            relay = linear_chain_energy("shallow", "multi-hop", n, 50.0, 0.25)
            assert direct == relay

    def test_matches_bruteforce_for_all_n_to_100(self):
        for n in range(1, 101):
            brute = 0.0
            for i in range(1, n + 1):
                brute += i * 1.0
            assert linear_chain_energy("shallow", "multi-hop", n, 100.0, 1.0) == brute

    def test_packets_scale(self):
        one = linear_chain_energy("shallow", "multi-hop", 5, 100.0, 0.5, packets=1)
        ten = linear_chain_energy("shallow", "multi-hop", 5, 100.0, 0.5, packets=10)
        assert ten == 10.0 * one

    def test_zero_hops_rejected(self):
        with pytest.raises(ValueError):
            linear_chain_energy("shallow", "multi-hop", 0, 100.0, 1.0)


class TestEnvironmentValidation:
    def test_shipping_factor_range(self):
        with pytest.raises(ValueError):
            Environment(shipping_factor=1.5)

    def test_wind_range(self):
        with pytest.raises(ValueError):
            Environment(wind_speed_mps=11.0)

    def test_density_positive(self):
        with pytest.raises(ValueError):
            Environment(water_density_kg_m3=0.0)
