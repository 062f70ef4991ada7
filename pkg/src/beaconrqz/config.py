"""Run configuration: a validated YAML document mapped onto the library types.

Angles are given in degrees in the document and converted to radians here.
Unknown keys anywhere in the document are rejected.
"""
from __future__ import annotations

import hashlib
import json
from importlib import resources
from pathlib import Path
from typing import Literal, Optional, Union

import numpy as np
import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator

from . import geom
from .antenna import AperturePattern, Ra1631Pattern
from .channel import RadioParams
from .montecarlo import PolicyFamily, SweepSpec, beacon_grid, sky_radius_grid, tau_grid
from .scenario import ScenarioConfig


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class ScenarioSection(_Strict):
    n_satellites: int = Field(1000, ge=1)
    earth_radius_m: float = Field(geom.EARTH_RADIUS_M, gt=0)
    satellite_altitude_m: float = Field(geom.SAT_ALTITUDE_M, gt=0)
    min_elevation_deg: float = Field(0.0, ge=0, lt=90)
    telescope_lat_deg: float = Field(0.0, ge=-90, le=90)
    telescope_lon_deg: float = 0.0
    boresight_azimuth_deg: float = 0.0
    boresight_elevation_deg: float = Field(90.0, ge=0, le=90)
    ground_user_radius_m: float = Field(100e3, gt=0)
    reciprocal_shadowing: bool = True


class RadioSection(_Strict):
    carrier_hz: float = Field(10.65e9, gt=0)
    bandwidth_hz: float = Field(100e6, gt=0)
    sat_psd_dbw_mhz: float = -8.3
    beacon_power_w: float = Field(0.01, ge=0)
    pfd_max_dbw_m2_hz: float = -240.0
    sky_temp_k: float = Field(300.0, ge=0)
    rx_temp_k: float = Field(100.0, ge=0)
    detection_threshold_db: float = 9.6
    shadowing_sigma_db: float = Field(5.0, ge=0)


class AntennaSection(_Strict):
    telescope_gmax_dbi: float = 64.0
    beacon_gmax_dbi: float = 32.0
    satellite_gmax_dbi: float = 30.0
    satellite_beamwidth_deg: float = Field(5.0, gt=0, lt=180)
    satellite_floor_db: Optional[float] = -30.0


class GridRange(_Strict):
    start: float
    stop: float
    num: int = Field(64, ge=1)
    spacing: Literal["linear", "log"] = "linear"

    def values(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.num)
        return np.linspace(self.start, self.stop, self.num)


Grid = Union[list[float], GridRange, None]


def _grid(g: Grid, default) -> tuple[float, ...]:
    if g is None:
        return tuple(float(x) for x in default)
    if isinstance(g, GridRange):
        return tuple(float(x) for x in g.values())
    if not g:
        raise ValueError("grid must be non-empty")
    return tuple(float(x) for x in g)


class FixedQzSection(_Strict):
    ground_radius_m: float = Field(50e3, ge=0)
    sky_radius_m: Grid = None


class DynamicQzSection(_Strict):
    tau_w: Grid = None


class BeaconSection(_Strict):
    sense_duration_s: Grid = None
    beacon_power_w: Optional[float] = None
    threshold_db: Optional[float] = None


class GenieSection(_Strict):
    pass


class PoliciesSection(_Strict):
    fixed_qz: Optional[FixedQzSection] = None
    dynamic_qz: Optional[DynamicQzSection] = None
    beacon: Optional[BeaconSection] = None
    genie: Optional[GenieSection] = None


class SweepSection(_Strict):
    n_trials: int = Field(100_000, ge=1)
    master_seed: int = Field(0, ge=0, lt=2**64)
    n_workers: int = Field(0, ge=0)
    chunk_size: int = Field(500, ge=1)
    policies: PoliciesSection = PoliciesSection(
        fixed_qz=FixedQzSection(), dynamic_qz=DynamicQzSection(), beacon=BeaconSection(), genie=GenieSection()
    )


class OutputSection(_Strict):
    dir: str = "out"


class RunConfig(_Strict):
    scenario: ScenarioSection = ScenarioSection()
    radio: RadioSection = RadioSection()
    antennas: AntennaSection = AntennaSection()
    sweep: SweepSection = SweepSection()
    output: OutputSection = OutputSection()

    @field_validator("sweep")
    @classmethod
    def _needs_policy(cls, v: SweepSection):
        if not any(getattr(v.policies, k) is not None for k in ("fixed_qz", "dynamic_qz", "beacon", "genie")):
            raise ValueError("at least one policy must be configured")
        return v

    # -- mapping onto library types --

    def scenario_config(self) -> ScenarioConfig:
        s, a = self.scenario, self.antennas
        return ScenarioConfig(
            n_satellites=s.n_satellites,
            geometry=geom.GeometryConstants(
                s.earth_radius_m, s.satellite_altitude_m, np.radians(s.min_elevation_deg)
            ),
            radio=RadioParams(**self.radio.model_dump()),
            telescope_lat_rad=np.radians(s.telescope_lat_deg),
            telescope_lon_rad=np.radians(s.telescope_lon_deg),
            boresight_azimuth_rad=np.radians(s.boresight_azimuth_deg),
            boresight_elevation_rad=np.radians(s.boresight_elevation_deg),
            ground_user_radius_m=s.ground_user_radius_m,
            telescope_pattern=Ra1631Pattern(a.telescope_gmax_dbi),
            beacon_pattern=Ra1631Pattern(a.beacon_gmax_dbi),
            satellite_pattern=AperturePattern.from_beamwidth(
                a.satellite_gmax_dbi, np.radians(a.satellite_beamwidth_deg), a.satellite_floor_db
            ),
            reciprocal_shadowing=s.reciprocal_shadowing,
        )

    def families(self, scenario: ScenarioConfig | None = None) -> tuple[PolicyFamily, ...]:
        scenario = scenario or self.scenario_config()
        p = self.sweep.policies
        fams = []
        if p.fixed_qz is not None:
            fams.append(PolicyFamily(
                "fixed_qz", _grid(p.fixed_qz.sky_radius_m, sky_radius_grid(scenario)),
                ground_radius_m=p.fixed_qz.ground_radius_m,
            ))
        if p.dynamic_qz is not None:
            fams.append(PolicyFamily("dynamic_qz", _grid(p.dynamic_qz.tau_w, tau_grid())))
        if p.beacon is not None:
            fams.append(PolicyFamily(
                "beacon", _grid(p.beacon.sense_duration_s, beacon_grid(scenario)),
                beacon_power_w=p.beacon.beacon_power_w, threshold_db=p.beacon.threshold_db,
            ))
        if p.genie is not None:
            fams.append(PolicyFamily("genie"))
        return tuple(fams)

    def sweep_spec(self) -> SweepSpec:
        sc = self.scenario_config()
        w = self.sweep
        return SweepSpec(sc, self.families(sc), w.n_trials, w.master_seed, w.n_workers, w.chunk_size)

    def config_hash(self) -> str:
        """sha256 of the canonical JSON form, leaving out settings that cannot change results."""
        doc = self.model_dump(mode="json", exclude={"output": True, "sweep": {"n_workers"}})
        blob = json.dumps(doc, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def with_overrides(self, *, seed=None, trials=None, workers=None, out=None) -> "RunConfig":
        sweep = self.sweep.model_copy(update={
            k: v for k, v in (("master_seed", seed), ("n_trials", trials), ("n_workers", workers)) if v is not None
        })
        output = self.output if out is None else OutputSection(dir=str(out))
        return RunConfig.model_validate({**self.model_dump(), "sweep": sweep.model_dump(), "output": output.model_dump()})


def load_config(path: str | Path | None = None) -> RunConfig:
    """Parse and validate a YAML run configuration; ``None`` loads the packaged defaults."""
    if path is None:
        text = resources.files("beaconrqz").joinpath("default.yaml").read_text()
    else:
        text = Path(path).read_text()
    doc = yaml.safe_load(text) or {}
    return RunConfig.model_validate(doc)
