"""Even Clifford algebras of twisted ternary quadratic forms over projective space."""

from .clifford import EvenCliffordAlgebra, FiberAlgebraClass, OddCliffordModule, cliff0, cliff_odd, cliff_shift
from .quadform import FiberClass, SplitTwist, TwistedQuadraticForm, discriminant, fiber_rank, normalized_twist, validate
from .reconstruct import AlgebraWithSplitting, is_pointwise_clifford, reconstruct_form, roundtrip_check

__version__ = "0.1.0"

__all__ = [
    "AlgebraWithSplitting",
    "EvenCliffordAlgebra",
    "FiberAlgebraClass",
    "FiberClass",
    "OddCliffordModule",
    "SplitTwist",
    "TwistedQuadraticForm",
    "cliff0",
    "cliff_odd",
    "cliff_shift",
    "discriminant",
    "fiber_rank",
    "is_pointwise_clifford",
    "normalized_twist",
    "reconstruct_form",
    "roundtrip_check",
    "validate",
]
