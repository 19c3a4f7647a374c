"""Analytic arithmetic-cost model for both receiver architectures.

Counts real multiplications and real additions per parallel clock tick for a
chain with N channels, T filter taps, and P samples per tick.

proposed (beamform first):
  beamformer: N*P*2 mults, (N-1)*P*2 adds     -- real sample x complex weight
  DDC:        0 mults (sign inversion only)
  FIR:        T*P*2 mults, (T-1)*P*2 adds     -- one complex channel, two rails

standard (per-channel DDC):
  DDC:        0 mults per channel
  FIR:        N*T*P*2 mults, N*(T-1)*P*2 adds -- every channel filtered
  beamformer: N*P*4 mults, N*P*2 + (N-1)*P*2 adds -- complex x complex

Fused-MAC counts treat one multiply plus its accumulation add as a single
operation (one DSP-slice op), which is how synthesis tools tally a
multiply-accumulate tree; both conventions are reported.

Device DSP-slice totals from a synthesized build of this design (1422 for the
proposed chain, 773 for the standard one, which spilled part of its FIR into
fabric logic) are attached as calibration annotations when the parameters
match that build; they are tool outcomes, not values this model derives.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ValidationError

ARCHITECTURES = ("proposed", "standard")

# Synthesized DSP-slice counts for the N=4, T=64, P=8 build, per stage.
_CALIBRATION = {
    "proposed": {"beamformer": 64, "ddc": 0, "fir": 1358, "total": 1422},
    "standard": {"ddc": 0, "fir": 645, "beamformer": 128, "total": 773},
}
_CALIBRATION_PARAMS = (4, 64, 8)


@dataclass(frozen=True)
class StageCost:
    stage: str
    real_multipliers: int
    real_adders: int
    dsp_fused_macs: int
    notes: str = ""

    def as_dict(self) -> dict:
        return {
            "stage": self.stage,
            "real_multipliers": self.real_multipliers,
            "real_adders": self.real_adders,
            "dsp_fused_macs": self.dsp_fused_macs,
            "notes": self.notes,
        }


@dataclass(frozen=True)
class ResourceReport:
    architecture: str
    num_channels: int
    taps: int
    parallel: int
    stages: tuple[StageCost, ...]
    calibration_dsp_slices: dict | None = field(default=None)

    @property
    def total_multipliers(self) -> int:
        return sum(s.real_multipliers for s in self.stages)

    @property
    def total_adders(self) -> int:
        return sum(s.real_adders for s in self.stages)

    @property
    def total_fused_macs(self) -> int:
        return sum(s.dsp_fused_macs for s in self.stages)

    def stage(self, name: str) -> StageCost:
        for s in self.stages:
            if s.stage == name:
                return s
        raise KeyError(name)

    def as_dict(self) -> dict:
        return {
            "architecture": self.architecture,
            "num_channels": self.num_channels,
            "taps": self.taps,
            "parallel": self.parallel,
            "stages": [s.as_dict() for s in self.stages],
            "totals": {
                "real_multipliers": self.total_multipliers,
                "real_adders": self.total_adders,
                "dsp_fused_macs": self.total_fused_macs,
            },
            "calibration_dsp_slices": self.calibration_dsp_slices,
        }


def estimate(arch: str, n_channels: int, taps: int = 64, parallel: int = 8) -> ResourceReport:
    """Per-stage operation counts for one architecture and parameter set."""
    if arch not in ARCHITECTURES:
        raise ValidationError(f"unknown architecture {arch!r}")
    if n_channels < 1 or taps < 1 or parallel < 1:
        raise ValidationError("n_channels, taps, and parallel must all be >= 1")

    n, t, p = n_channels, taps, parallel
    if arch == "proposed":
        stages = (
            StageCost(
                stage="beamformer",
                real_multipliers=n * p * 2,
                real_adders=(n - 1) * p * 2,
                dsp_fused_macs=n * p * 2,
                notes="real sample x complex weight per channel; adder-tree count; "
                "fused-MAC convention folds each add into its multiplier",
            ),
            StageCost(
                stage="ddc",
                real_multipliers=0,
                real_adders=0,
                dsp_fused_macs=0,
                notes="fs/4 mixing is selection and sign inversion only",
            ),
            StageCost(
                stage="fir",
                real_multipliers=t * p * 2,
                real_adders=(t - 1) * p * 2,
                dsp_fused_macs=t * p * 2,
                notes="single combined channel, I and Q rails",
            ),
        )
    else:
        stages = (
            StageCost(
                stage="ddc",
                real_multipliers=0,
                real_adders=0,
                dsp_fused_macs=0,
                notes="per-channel fs/4 mixing, still multiplier-free",
            ),
            StageCost(
                stage="fir",
                real_multipliers=n * t * p * 2,
                real_adders=n * (t - 1) * p * 2,
                dsp_fused_macs=n * t * p * 2,
                notes="one filter pair per channel",
            ),
            StageCost(
                stage="beamformer",
                real_multipliers=n * p * 4,
                real_adders=n * p * 2 + (n - 1) * p * 2,
                dsp_fused_macs=n * p * 4,
                notes="complex x complex weight multiply then channel sum",
            ),
        )

    calibration = None
    if (n, t, p) == _CALIBRATION_PARAMS:
        calibration = dict(_CALIBRATION[arch])
        if arch == "standard":
            calibration["note"] = (
                "synthesized build exceeded available DSP slices; part of the "
                "FIR was implemented in fabric logic, so slice counts undershoot "
                "the arithmetic-op counts"
            )
    return ResourceReport(
        architecture=arch,
        num_channels=n,
        taps=t,
        parallel=p,
        stages=stages,
        calibration_dsp_slices=calibration,
    )
