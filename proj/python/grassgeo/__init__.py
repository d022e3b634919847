"""Geometry of Grassmann manifolds of finite-dimensional matrix algebras."""

from ._core import (
    CrossCheckError,
    Element,
    Field,
    Geodesic,
    ValidationError,
    bracket,
    epi_demo,
    frobenius_norm,
    geodesic_join,
    projective,
    reproduce,
    spectral_norm,
)

__all__ = [
    "CrossCheckError",
    "Element",
    "Field",
    "Geodesic",
    "ValidationError",
    "bracket",
    "epi_demo",
    "frobenius_norm",
    "geodesic_join",
    "projective",
    "reproduce",
    "spectral_norm",
]
