"""Reduced Khovanov homology of pretzel links P(-p, q, r)."""

import json

from ._core import (
    IntegrityError,
    ParseError,
    ResourceError,
    classify,
    crossing_counts,
    fast_homology,
    orientation_patterns,
    pd_code,
    theorem2_delta,
    theorem3_bigraded,
)
from . import _core

__all__ = [
    "IntegrityError",
    "ParseError",
    "ResourceError",
    "classify",
    "compute",
    "compute_pd",
    "crossing_counts",
    "fast_homology",
    "orientation_patterns",
    "pd_code",
    "theorem2_delta",
    "theorem3_bigraded",
]


def compute(k1, k2, k3, orientation=None, method="all", max_crossings=20):
    """Report for P(k1, k2, k3) as a dict (same schema as the CLI's JSON)."""
    return json.loads(_core.compute_json(k1, k2, k3, orientation, method, max_crossings))


def compute_pd(text, method="all", max_crossings=20):
    """Report for PD text such as 'X(1,4,2,5) ...' or 'P(-3,4,5)'."""
    return json.loads(_core.compute_pd_json(text, method, max_crossings))
