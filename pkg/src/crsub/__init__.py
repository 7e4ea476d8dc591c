"""Numerical certification of CR-submanifolds arising as momentum level sets."""
from .crverify import CRReport, analyze, suite
from .errors import (
    ConstraintSingular,
    CRSubError,
    DegenerateRestriction,
    InconsistentScale,
    InvalidParams,
    OffLevel,
    OffManifold,
    SamplingExhausted,
    UnknownScenario,
)
from .levelset import LevelSpec, regularity, sample
from .numlin import SubspaceBasis, ToleranceProfile
from .scenarios import REGISTRY, build

__version__ = "0.1.0"
