"""Quadratic field class groups, modular units, and CM curve x-coordinates."""

from _cmray import (
    PrecisionError,
    class_number,
    classify_prime,
    conjugates,
    fricke,
    hilbert_class_poly,
    j,
    j_surd,
    n_min_bound,
    ray_class_degree,
    reduced_forms,
    siegel,
    weber_x,
)

__all__ = [
    "PrecisionError",
    "class_number",
    "classify_prime",
    "conjugates",
    "fricke",
    "hilbert_class_poly",
    "j",
    "j_surd",
    "n_min_bound",
    "ray_class_degree",
    "reduced_forms",
    "siegel",
    "weber_x",
]
