# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled twin of uwrpl.channel._kernels.

Every expression mirrors the pure-Python module term for term, and the build
disables FP contraction, so results are bit-identical across backends.
"""

from libc.math cimport exp, log10, pow, sqrt

TL_GEOMETRY = 0
TL_PRACTICAL = 1

MACKENZIE_D3 = 7.139e-13
UNCORRECTED_D3 = 7.139e-3


cpdef double sound_speed_ms(double t_c, double salinity_ppt, double depth_m,
                            double d3_coeff):
    """Sound speed in seawater (m/s), nine-term empirical polynomial."""
    cdef double t2 = t_c * t_c
    return (
        1449.0
        + 4.591 * t_c
        - 5.304e-2 * t2
        + 2.374e-4 * (t2 * t_c)
        + 1.34 * (salinity_ppt - 35.0)
        + 1.63e-2 * depth_m
        + 1.675e-7 * (depth_m * depth_m)
        + 1.025e-2 * t_c * (salinity_ppt - 35.0)
        - d3_coeff * t_c * ((depth_m * depth_m) * depth_m)
    )


cpdef double turbulence_noise_db(double f_khz):
    """Turbulence noise spectral density, dB re uPa^2/Hz."""
    return 17.0 - 30.0 * log10(f_khz)


cpdef double shipping_noise_db(double f_khz, double shipping_factor):
    """Shipping noise spectral density; shipping_factor in [0, 1]."""
    return (40.0 + 20.0 * (shipping_factor - 0.5)
            + 26.0 * log10(f_khz)
            - 60.0 * log10(f_khz + 0.03))


cpdef double wind_noise_db(double f_khz, double wind_mps):
    """Wind/surface-agitation noise spectral density; wind speed in m/s."""
    return (50.0 + 7.5 * sqrt(wind_mps)
            + 20.0 * log10(f_khz)
            - 40.0 * log10(f_khz + 0.4))


cpdef double thermal_noise_db(double f_khz):
    """Thermal noise spectral density, dominant only well above 100 kHz."""
    return -15.0 + 20.0 * log10(f_khz)


cpdef double total_noise_db(double f_khz, double shipping_factor,
                            double wind_mps):
    """Combined ambient noise density: the four sources summed as powers."""
    cdef double nt = turbulence_noise_db(f_khz)
    cdef double ns = shipping_noise_db(f_khz, shipping_factor)
    cdef double nw = wind_noise_db(f_khz, wind_mps)
    cdef double nth = thermal_noise_db(f_khz)
    cdef double linear = (pow(10.0, nt / 10.0) + pow(10.0, ns / 10.0)
                          + pow(10.0, nw / 10.0) + pow(10.0, nth / 10.0))
    return 10.0 * log10(linear)


cpdef double boric_relaxation_khz(double t_c, double salinity_ppt):
    """Boric-acid relaxation frequency f1, kHz."""
    return 0.78 * sqrt(salinity_ppt / 35.0) * exp(t_c / 26.0)


cpdef double magnesium_relaxation_khz(double t_c):
    """Magnesium-sulfate relaxation frequency f2, kHz."""
    return 42.0 * exp(t_c / 17.0)


cpdef double absorption_db_km(double f_khz, double t_c, double salinity_ppt,
                              double ph, double depth_km):
    """Seawater absorption (dB/km): boric, MgSO4 and pure-water terms."""
    cdef double fsq = f_khz * f_khz
    cdef double f1 = boric_relaxation_khz(t_c, salinity_ppt)
    cdef double f2 = magnesium_relaxation_khz(t_c)
    cdef double boric = (0.106 * ((f1 * fsq) / (f1 * f1 + fsq))
                         * exp((ph - 8.0) / exp(0.56)))
    cdef double mgso4 = (0.52 * (1.0 + t_c / 43.0) * (salinity_ppt / 25.0)
                         * ((f2 * fsq) / (f2 * f2 + fsq)) * exp(-depth_km / 6.0))
    cdef double water = 4.9e-4 * fsq * exp(-(t_c / 27.0 + depth_km / 17.0))
    return boric + mgso4 + water


cpdef double attenuation_at_depth_db_km(double alpha_surface, double depth_m):
    """Absorption rescaled by depth, clamped at zero past the linear root."""
    cdef double scaled = alpha_surface * (1.0 - 1.93e-5 * depth_m)
    return scaled if scaled > 0.0 else 0.0


cpdef double spreading_loss_db(int tl_mode, bint shallow, double r_m,
                               double alpha_db_km, double anomaly_db,
                               double shallow_coeff, double ref_m,
                               double practical_k):
    """One-way transmission loss (dB) at range r_m; see the pure twin."""
    cdef double r = r_m if r_m > ref_m else ref_m
    if tl_mode == TL_PRACTICAL:
        return 10.0 * practical_k * log10(r / ref_m) + alpha_db_km * r * 1e-3
    if shallow:
        return shallow_coeff * log10(r / ref_m)
    return 20.0 * log10(r) + alpha_db_km * r * 1e-3 + anomaly_db


cpdef int scan_links(double[::1] pos, unsigned char[::1] alive, int n_nodes,
                     int sender, double range_m, double source_db,
                     double noise_band_db, double alpha_db_km, int tl_mode,
                     double depth_threshold_m, double shallow_coeff,
                     double ref_m, double practical_k, double anomaly_db,
                     double speed_mps, int[::1] out_idx, double[::1] out_dist,
                     double[::1] out_snr, double[::1] out_delay):
    """Per-receiver link budgets for one transmission; the engine hot path."""
    cdef double sx = pos[3 * sender]
    cdef double sy = pos[3 * sender + 1]
    cdef double sz = pos[3 * sender + 2]
    cdef double rng2 = range_m * range_m
    cdef int count = 0
    cdef int i
    cdef double dx, dy, dz, d2, r, tl
    cdef bint shallow
    for i in range(n_nodes):
        if i == sender or alive[i] == 0:
            continue
        dx = pos[3 * i] - sx
        dy = pos[3 * i + 1] - sy
        dz = pos[3 * i + 2] - sz
        d2 = (dx * dx + dy * dy) + dz * dz
        if d2 > rng2:
            continue
        r = sqrt(d2)
        shallow = (sz + pos[3 * i + 2]) * 0.5 < depth_threshold_m
        tl = spreading_loss_db(tl_mode, shallow, r, alpha_db_km, anomaly_db,
                               shallow_coeff, ref_m, practical_k)
        out_idx[count] = i
        out_dist[count] = r
        out_snr[count] = (source_db - tl) - noise_band_db
        out_delay[count] = r / speed_mps
        count += 1
    return count
