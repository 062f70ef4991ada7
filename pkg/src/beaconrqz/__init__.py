"""Monte Carlo study of LEO-satellite interference at a radio telescope.

Compares fixed radio quiet zones, dynamic (gain-threshold) quiet zones,
beacon-assisted silencing and a genie-aided benchmark by outage probability
versus the fraction of satellite links left active.
"""

__version__ = "0.1.0"

from .antenna import AperturePattern, Ra1631Pattern, aperture_gain, ra1631_gain  # noqa: E402
from .channel import DerivedBudget, RadioParams  # noqa: E402
from .montecarlo import PolicyFamily, SweepRecord, SweepSpec, estimate, run_trial  # noqa: E402
from .policy import Beacon, DynamicQz, FixedQz, Genie, PolicyDecision, evaluate  # noqa: E402
from .scenario import ScenarioConfig, Snapshot, build_snapshot  # noqa: E402

__all__ = [
    "AperturePattern", "Ra1631Pattern", "aperture_gain", "ra1631_gain",
    "DerivedBudget", "RadioParams",
    "PolicyFamily", "SweepRecord", "SweepSpec", "estimate", "run_trial",
    "Beacon", "DynamicQz", "FixedQz", "Genie", "PolicyDecision", "evaluate",
    "ScenarioConfig", "Snapshot", "build_snapshot",
]
