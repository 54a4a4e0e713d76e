"""
Tension inference from observed doublet geometry.

=== STRUCTURE ===

    src/inference/
    ├── laws.py       # five angle laws and the radius law (no line tension)
    └── ambiguity.py  # (lambda, mu) family of tensions with line tension
"""

from src.inference.ambiguity import AmbiguityFamily, MemberCheck, ambiguity_family
from src.inference.laws import (
    ANGLE_LAWS,
    AngleLaw,
    InferenceResult,
    infer_from_angles,
    infer_from_radii,
    infer_from_state,
)

__all__ = [
    "ANGLE_LAWS",
    "AmbiguityFamily",
    "AngleLaw",
    "InferenceResult",
    "MemberCheck",
    "ambiguity_family",
    "infer_from_angles",
    "infer_from_radii",
    "infer_from_state",
]
