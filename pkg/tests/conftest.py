"""Shared fixtures: the frequency-modulated validation capture and friends."""

import numpy as np
import pytest

import dbfrx

SPEED_OF_LIGHT = 2.99792458e8

# The FM validation scenario: 3.6 GHz carrier under-sampled at 1.6 GSps
# (fifth Nyquist zone, 400 MHz = fs/4 alias), +/-100 MHz deviation, 1 MHz
# modulation tone, arriving at 10 degrees on a 4-element half-wave array,
# 0 dB noise relative to the signal amplitude.
FM_CARRIER_HZ = 3.6e9
FM_FS_HZ = 1.6e9
FM_THETA_RAD = np.radians(10.0)
FM_NUM_SAMPLES = 65536
FM_SEED = 20260810


def half_wave_array(carrier_hz: float, num_elements: int = 4) -> dbfrx.ArrayConfig:
    lam = SPEED_OF_LIGHT / carrier_hz
    return dbfrx.ArrayConfig(
        num_elements=num_elements, spacing_m=lam / 2, carrier_hz=carrier_hz
    )


@pytest.fixture(scope="session")
def fm_array() -> dbfrx.ArrayConfig:
    return half_wave_array(FM_CARRIER_HZ)


@pytest.fixture(scope="session")
def fm_capture(fm_array) -> dbfrx.Capture:
    spec = dbfrx.TestSignalSpec(
        kind="linear_fm",
        carrier_hz=FM_CARRIER_HZ,
        arrival_angle_rad=FM_THETA_RAD,
        amplitude=0.25,
        base_tone_hz=1e6,
        deviation_hz=1e8,
        noise_power_db=0.0,
        seed=FM_SEED,
    )
    streams = dbfrx.synthesize_channels(fm_array, spec, FM_FS_HZ, FM_NUM_SAMPLES)
    return dbfrx.capture(streams)


@pytest.fixture(scope="session")
def iq_array() -> dbfrx.ArrayConfig:
    return half_wave_array(2.0e9)


@pytest.fixture(scope="session")
def iq_capture(iq_array) -> dbfrx.Capture:
    """The IQ demodulation scenario: 2 GHz carrier, 30 MHz I and 5 MHz Q tones."""
    spec = dbfrx.TestSignalSpec(
        kind="iq_two_tone",
        carrier_hz=2.0e9,
        arrival_angle_rad=0.0,
        amplitude=0.9,
        i_tone_hz=30e6,
        q_tone_hz=5e6,
        seed=3,
    )
    streams = dbfrx.synthesize_channels(iq_array, spec, FM_FS_HZ, 32768)
    return dbfrx.capture(streams)
