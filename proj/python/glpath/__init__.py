"""Certified paths through the positive-determinant region of matrix space."""

from glpath._core import (
    build_path,
    cone_path,
    cusp_ratio,
    distance_to_variety,
    estimate_constant,
    project_to_rank,
    sample_glplus,
    split_segment,
    surgery2,
)

__all__ = [
    "build_path",
    "cone_path",
    "cusp_ratio",
    "distance_to_variety",
    "estimate_constant",
    "project_to_rank",
    "sample_glplus",
    "split_segment",
    "surgery2",
]
