from .bridges import pass3_bridges_splits, run_pass3
from .derived import Derivation, PassResult
from .epsilon import EpsFlag, compute_eps_flags, pass2_eliminate_eps, run_pass2
from .pipeline import PASSES, PipelineRun, normalize, run_pipeline
from .shapes import NFStage, ShapeViolation, WrongStageError, eliminate_unary, shape_check
from .strip import pass4_strip, run_pass4
from .wellformed import pass1_wellformed, run_pass1

__all__ = [
    "Derivation",
    "EpsFlag",
    "NFStage",
    "PASSES",
    "PassResult",
    "PipelineRun",
    "ShapeViolation",
    "WrongStageError",
    "compute_eps_flags",
    "eliminate_unary",
    "normalize",
    "pass1_wellformed",
    "pass2_eliminate_eps",
    "pass3_bridges_splits",
    "pass4_strip",
    "run_pass1",
    "run_pass2",
    "run_pass3",
    "run_pass4",
    "run_pipeline",
    "shape_check",
]
