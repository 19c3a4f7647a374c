#!/usr/bin/env python3
"""ADC model characterization: transfer function and spectral performance.

A 12-bit mid-tread quantizer should measure SNR = 6.02*12 + 1.76 = 74 dB on a
full-scale sine.  This script checks that with the package's own spectral
estimator and shows the classic staircase transfer function.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import dbfrx

FS = 1.6e9
N = 16384

# --------------------------------------------------------------------------
# staircase transfer function
# --------------------------------------------------------------------------
v = np.linspace(-1.05, 1.05, 20001)
codes = dbfrx.quantize(v)
print("transfer function endpoints:", codes.min(), "to", codes.max())
print("quantize(0.0) =", dbfrx.quantize(0.0), " (mid-tread: zero is a code)")

# --------------------------------------------------------------------------
# dithered full-scale sine
# --------------------------------------------------------------------------
rng = np.random.default_rng(7)
cycles = 997  # coprime with N -> coherent, spectrally well-spread
x = (2047 / 2048) * np.sin(2 * np.pi * cycles * np.arange(N) / N)
dither = rng.standard_normal(N) * (0.1 / 2048)  # 0.1 LSB rms
quantized = dbfrx.quantize(x + dither)

m = dbfrx.spectral_metrics(quantized.astype(float), FS)
print()
print(f"measured on {N}-point coherent capture ({m.window} window):")
print(f"  SNR  : {m.snr_db:6.2f} dB   (theory 6.02*12 + 1.76 = 74.0)")
print(f"  SNDR : {m.sndr_db:6.2f} dB")
print(f"  SFDR : {m.sfdr_db:6.2f} dB")
print(f"  THD  : {m.thd_db:6.2f} dB")
enob = (m.sndr_db - 1.76) / 6.02
print(f"  ENOB : {enob:6.2f} bits")

fig, axes = plt.subplots(1, 2, figsize=(12, 4.5))
ax = axes[0]
zoom = (v > -4 / 2048) & (v < 4 / 2048)
ax.step(v[zoom] * 2048, codes[zoom], where="mid")
ax.set_xlabel("input (LSB)")
ax.set_ylabel("output code")
ax.set_title("Mid-tread staircase around zero")
ax.grid(True, alpha=0.3)

ax = axes[1]
freqs, pdb = dbfrx.power_spectrum(quantized.astype(float), FS, window="rectangular")
ax.plot(freqs / 1e6, pdb - pdb.max(), linewidth=0.5)
ax.set_xlabel("frequency (MHz)")
ax.set_ylabel("power (dBc)")
ax.set_title(f"Quantized sine: SNR {m.snr_db:.1f} dB, SFDR {m.sfdr_db:.0f} dB")
ax.set_ylim(-140, 5)
ax.grid(True, alpha=0.3)

fig.tight_layout()
fig.savefig("demo_quantization_noise.png", dpi=130)
print("\nsaved: demo_quantization_noise.png")
