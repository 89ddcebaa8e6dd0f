"""Exact arithmetic and automorphism enumeration for metacyclic groups H(n, m; t, r)."""

from .automorphism import count, enumerate_automorphisms, theorem_accepts
from .endomorphism import EndoSpec
from .group import Element
from .presentation import Presentation, build_context, context_for, normalize, validate

__all__ = [
    "Element",
    "EndoSpec",
    "Presentation",
    "build_context",
    "context_for",
    "count",
    "enumerate_automorphisms",
    "normalize",
    "theorem_accepts",
    "validate",
]
