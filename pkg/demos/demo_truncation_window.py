#!/usr/bin/env python3
"""The beamformer's configurable truncation window.

The beamformer accumulates 27 bits but only 20 leave the stage; a register
picks which 20.  The default window is MSB-aligned (lsb_offset 7): safe at any
drive level, but a weak signal then only toggles the bottom few output bits
and its quantization floor rises.  Sliding the window toward the LSB buys that
resolution back - until the signal is strong enough that the discarded MSBs
stop being a pure sign extension and the output wraps, which the overflow
counter reports.

This sweep runs a weak (-60 dBFS-ish) and a full-drive FM capture through
every window position and plots SQNR against the float oracle.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import dbfrx

CARRIER = 3.6e9
FS = 1.6e9
THETA = np.radians(10.0)

array = dbfrx.ArrayConfig(
    num_elements=4, spacing_m=2.99792458e8 / CARRIER / 2, carrier_hz=CARRIER
)


def sweep(amplitude):
    spec = dbfrx.TestSignalSpec(
        kind="linear_fm",
        carrier_hz=CARRIER,
        arrival_angle_rad=THETA,
        amplitude=amplitude,
        base_tone_hz=1e6,
        deviation_hz=100e6,
        seed=99,
    )
    cap = dbfrx.capture(dbfrx.synthesize_channels(array, spec, FS, 16384))
    z_ref = dbfrx.run(cap, dbfrx.steered_pipeline(array, THETA, "proposed", "float")).steady_state()

    sqnrs, counts = [], []
    for lsb in range(8):
        cfg = dbfrx.steered_pipeline(array, THETA, "proposed", "fixed", lsb_offset=lsb)
        r = dbfrx.run(cap, cfg)
        z = r.steady_state() / r.nominal_scale
        err = z - z_ref
        sqnrs.append(10 * np.log10(np.sum(np.abs(z_ref) ** 2) / np.sum(np.abs(err) ** 2)))
        counts.append(r.diagnostics.beamformer_window_overflows)
    return sqnrs, counts


print(f"{'lsb_offset':>10} | {'weak signal (0.001 FS)':>25} | {'full drive (0.9 FS)':>25}")
print(f"{'':>10} | {'SQNR dB':>12} {'overflows':>12} | {'SQNR dB':>12} {'overflows':>12}")
weak_sqnr, weak_ovf = sweep(0.001)
loud_sqnr, loud_ovf = sweep(0.9)
for lsb in range(8):
    print(
        f"{lsb:>10} | {weak_sqnr[lsb]:>12.1f} {weak_ovf[lsb]:>12} "
        f"| {loud_sqnr[lsb]:>12.1f} {loud_ovf[lsb]:>12}"
    )

print()
print("weak signal : MSB alignment costs ~12 dB; a lower window recovers it")
print("full drive  : windows below lsb_offset 4 wrap (counter fires), the")
print("              rest sit at the weight/coefficient quantization floor")

fig, ax = plt.subplots(figsize=(8, 4.5))
ax.plot(range(8), weak_sqnr, "o-", label="weak signal (0.001 FS)")
ax.plot(range(8), loud_sqnr, "s-", label="full drive (0.9 FS)")
for lsb, c in enumerate(loud_ovf):
    if c:
        ax.annotate("wraps", (lsb, loud_sqnr[lsb]), textcoords="offset points",
                    xytext=(0, 8), ha="center", fontsize=8, color="tab:red")
ax.set_xlabel("window lsb_offset (bits discarded from the LSB side)")
ax.set_ylabel("SQNR vs float oracle (dB)")
ax.set_title("Truncation-window placement vs signal drive")
ax.grid(True, alpha=0.3)
ax.legend()
fig.tight_layout()
fig.savefig("demo_truncation_window.png", dpi=130)
print("\nsaved: demo_truncation_window.png")
