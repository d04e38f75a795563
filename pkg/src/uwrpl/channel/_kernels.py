"""Scalar numeric kernels for the acoustic channel.

Pure-Python reference implementation. uwrpl.channel._ckernels is a line-by-line
Cython translation of this module, compiled without floating-point contraction
so both backends return bit-identical doubles; uwrpl.channel.backend picks one
at import time.

Frequencies are in kHz, distances in meters unless the name says km, levels in
dB, temperature in Celsius, salinity in ppt. Keep every expression in the same
shape as the compiled twin: evaluation order is part of the contract here.
"""

import math

# transmission-loss modes shared with scan_links
TL_GEOMETRY = 0   # cylindrical when shallow, spherical + absorption when deep
TL_PRACTICAL = 1  # 10*k*log10(r) + absorption, k = practical spreading exponent

MACKENZIE_D3 = 7.139e-13   # standard depth-cubed coefficient
UNCORRECTED_D3 = 7.139e-3  # widely reproduced misprint, nonphysical at depth


def sound_speed_ms(t_c, salinity_ppt, depth_m, d3_coeff):
    """Sound speed in seawater (m/s), nine-term empirical polynomial."""
    t2 = t_c * t_c
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


def turbulence_noise_db(f_khz):
    """Turbulence noise spectral density, dB re uPa^2/Hz."""
    return 17.0 - 30.0 * math.log10(f_khz)


def shipping_noise_db(f_khz, shipping_factor):
    """Shipping noise spectral density; shipping_factor in [0, 1]."""
    return (40.0 + 20.0 * (shipping_factor - 0.5)
            + 26.0 * math.log10(f_khz)
            - 60.0 * math.log10(f_khz + 0.03))


def wind_noise_db(f_khz, wind_mps):
    """Wind/surface-agitation noise spectral density; wind speed in m/s."""
    return (50.0 + 7.5 * math.sqrt(wind_mps)
            + 20.0 * math.log10(f_khz)
            - 40.0 * math.log10(f_khz + 0.4))


def thermal_noise_db(f_khz):
    """Thermal noise spectral density, dominant only well above 100 kHz."""
    return -15.0 + 20.0 * math.log10(f_khz)


def total_noise_db(f_khz, shipping_factor, wind_mps):
    """Combined ambient noise density: the four sources summed as powers."""
    nt = turbulence_noise_db(f_khz)
    ns = shipping_noise_db(f_khz, shipping_factor)
    nw = wind_noise_db(f_khz, wind_mps)
    nth = thermal_noise_db(f_khz)
    linear = (10.0 ** (nt / 10.0) + 10.0 ** (ns / 10.0)
              + 10.0 ** (nw / 10.0) + 10.0 ** (nth / 10.0))
    return 10.0 * math.log10(linear)


def boric_relaxation_khz(t_c, salinity_ppt):
    """Boric-acid relaxation frequency f1, kHz."""
    return 0.78 * math.sqrt(salinity_ppt / 35.0) * math.exp(t_c / 26.0)


def magnesium_relaxation_khz(t_c):
    """Magnesium-sulfate relaxation frequency f2, kHz."""
    return 42.0 * math.exp(t_c / 17.0)


def absorption_db_km(f_khz, t_c, salinity_ppt, ph, depth_km):
    """Seawater absorption (dB/km): boric, MgSO4 and pure-water terms."""
    fsq = f_khz * f_khz
    f1 = boric_relaxation_khz(t_c, salinity_ppt)
    f2 = magnesium_relaxation_khz(t_c)
    boric = (0.106 * ((f1 * fsq) / (f1 * f1 + fsq))
             * math.exp((ph - 8.0) / math.exp(0.56)))
    mgso4 = (0.52 * (1.0 + t_c / 43.0) * (salinity_ppt / 25.0)
             * ((f2 * fsq) / (f2 * f2 + fsq)) * math.exp(-depth_km / 6.0))
    water = 4.9e-4 * fsq * math.exp(-(t_c / 27.0 + depth_km / 17.0))
    return boric + mgso4 + water


def attenuation_at_depth_db_km(alpha_surface, depth_m):
    """Absorption rescaled by depth, clamped at zero past the linear root."""
    scaled = alpha_surface * (1.0 - 1.93e-5 * depth_m)
    return scaled if scaled > 0.0 else 0.0


def spreading_loss_db(tl_mode, shallow, r_m, alpha_db_km, anomaly_db,
                      shallow_coeff, ref_m, practical_k):
    """One-way transmission loss (dB) at range r_m.

    TL_GEOMETRY: shallow_coeff*log10(r/ref) when shallow is true, else
    20log10(r) + alpha*r*1e-3 + anomaly. TL_PRACTICAL ignores the shallow
    flag and applies 10*k*log10(r/ref) + alpha*r*1e-3.
    """
    r = r_m if r_m > ref_m else ref_m
    if tl_mode == TL_PRACTICAL:
        return 10.0 * practical_k * math.log10(r / ref_m) + alpha_db_km * r * 1e-3
    if shallow:
        return shallow_coeff * math.log10(r / ref_m)
    return 20.0 * math.log10(r) + alpha_db_km * r * 1e-3 + anomaly_db


def scan_links(pos, alive, n_nodes, sender, range_m, source_db, noise_band_db,
               alpha_db_km, tl_mode, depth_threshold_m, shallow_coeff, ref_m,
               practical_k, anomaly_db, speed_mps, out_idx, out_dist, out_snr,
               out_delay):
    """Per-receiver link budgets for one transmission; the engine hot path.

    pos is a flat [x0,y0,z0,x1,...] array, alive a 0/1 byte per node, out_*
    preallocated arrays of length >= n_nodes. Fills receiver index, distance
    (m), SNR (dB) and propagation delay (s) for every alive node other than
    the sender within range_m; returns how many were filled.
    """
    sx = pos[3 * sender]
    sy = pos[3 * sender + 1]
    sz = pos[3 * sender + 2]
    rng2 = range_m * range_m
    count = 0
    for i in range(n_nodes):
        if i == sender or alive[i] == 0:
            continue
        dx = pos[3 * i] - sx
        dy = pos[3 * i + 1] - sy
        dz = pos[3 * i + 2] - sz
        d2 = (dx * dx + dy * dy) + dz * dz
        if d2 > rng2:
            continue
        r = math.sqrt(d2)
        shallow = (sz + pos[3 * i + 2]) * 0.5 < depth_threshold_m
        tl = spreading_loss_db(tl_mode, shallow, r, alpha_db_km, anomaly_db,
                               shallow_coeff, ref_m, practical_k)
        out_idx[count] = i
        out_dist[count] = r
        out_snr[count] = (source_db - tl) - noise_band_db
        out_delay[count] = r / speed_mps
        count += 1
    return count
