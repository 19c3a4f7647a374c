#!/usr/bin/env python3
"""Under-sampling frequency planning walkthrough.

Shows where the two validation carriers land after 1.6 GSps sampling, then
maps out every usable sampling-rate window for a 100 MHz-wide band at 2 GHz.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import dbfrx

FS = 1.6e9

print("=" * 64)
print("NYQUIST-ZONE PLACEMENT AT fs = 1.6 GSps")
print("=" * 64)
for fc in (3.6e9, 2.0e9, 0.3e9):
    plan = dbfrx.nyquist_zone(fc, FS)
    print(
        f"  fc = {fc/1e9:4.1f} GHz -> zone {plan.zone_index} "
        f"({plan.spectrum_orientation}), alias IF = {plan.alias_if_hz/1e6:.0f} MHz"
    )

print()
print("Both validation carriers alias to 400 MHz = fs/4, which is what lets")
print("the receiver mix with the {1,0,-1,0} sequences instead of multipliers.")

# --------------------------------------------------------------------------
# rate windows for a 100 MHz band at 2 GHz
# --------------------------------------------------------------------------
fc, bw = 2.0e9, 100e6
print()
print("=" * 64)
print(f"SAMPLING-RATE WINDOWS FOR fc = {fc/1e9} GHz, BW = {bw/1e6:.0f} MHz")
print("=" * 64)
print(f"  {'zone':>4} {'placement':>9} {'fs_min (GHz)':>13} {'fs_max (GHz)':>13}")
ranges = dbfrx.all_undersample_ranges(fc, bw)
for r in ranges:
    hi = "inf" if np.isinf(r.fs_max) else f"{r.fs_max/1e9:.4f}"
    print(f"  {r.zone_index:>4} {r.placement:>9} {r.fs_min/1e9:>13.4f} {hi:>13}")

inside = [r for r in ranges if r.contains(FS)]
print(f"\n  1.6 GSps falls in zone {inside[0].zone_index} ({inside[0].placement}),")
print("  so the hardware rate needs no analog mixer for this band.")

# --------------------------------------------------------------------------
# plot the windows
# --------------------------------------------------------------------------
fig, ax = plt.subplots(figsize=(9, 4))
for r in ranges:
    if np.isinf(r.fs_max):
        continue
    color = "tab:blue" if r.placement == "direct" else "tab:red"
    ax.barh(
        y=r.zone_index,
        width=(r.fs_max - r.fs_min) / 1e9,
        left=r.fs_min / 1e9,
        height=0.6,
        color=color,
        alpha=0.7,
    )
ax.axvline(FS / 1e9, color="k", linestyle="--", linewidth=1, label="fs = 1.6 GSps")
ax.set_xlabel("sampling rate (GHz)")
ax.set_ylabel("Nyquist zone of the band")
ax.set_title(f"Valid under-sampling windows, fc = {fc/1e9} GHz, BW = {bw/1e6:.0f} MHz")
ax.legend()
ax.grid(True, alpha=0.3)
fig.tight_layout()
fig.savefig("demo_frequency_planning.png", dpi=130)
print("\nsaved: demo_frequency_planning.png")
