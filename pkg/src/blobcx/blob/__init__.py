"""Finite blob complexes of combinatorial 1-manifolds."""

from .manifold import (
    Arc,
    Manifold,
    circle,
    compatible,
    disjoint_union,
    enumerate_arcs,
    enumerate_configurations,
    interval,
    twigs,
)
from .model import (
    DEFAULT_BUDGET,
    BlobModel,
    BudgetExceeded,
    IdealViolation,
    build_blob_complex,
    estimate_size,
    evaluation_on_fields,
    skein,
    skein_check,
    unit_field,
)
