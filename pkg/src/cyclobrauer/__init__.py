"""Exact computations with Brauer, walled Brauer and cyclotomic Brauer algebras,
and their realization as centralizers for Sp(2n, R) and SO(p, q)."""

__version__ = "0.1.0"

from .coeffs import DeltaPoly, GaussRat, delta_monomial, poly_arith, specialize  # noqa: E402
from .diagrams import (  # noqa: E402
    LabeledDiagram,
    canonicalize,
    compose,
    count_diagrams,
    enumerate_diagrams,
    enumerate_uneven,
    factor_marked,
    format_diagram,
    is_walled,
    parse_diagram,
)
from .algebra import AlgebraElement, elem_arith, generator, verify_presentation, walled_basis  # noqa: E402
from .linalg import GaussMat, Subspace, center_dim, commutant_basis, nullspace, rank, subspace_ops  # noqa: E402
from .groups import GroupContext, GroupSpec, group_context, measure_deltas, tensor_operator  # noqa: E402
from .schur_weyl import (  # noqa: E402
    commutant_check,
    count_bipartitions,
    count_ktypes,
    decompose_sp,
    phi,
    phi_faithful,
    so_dimension_identity,
    verify_phi,
    walled_centralizer_check,
)

__all__ = [
    "DeltaPoly", "GaussRat", "delta_monomial", "poly_arith", "specialize",
    "LabeledDiagram", "canonicalize", "compose", "count_diagrams", "enumerate_diagrams",
    "enumerate_uneven", "factor_marked", "format_diagram", "is_walled", "parse_diagram",
    "AlgebraElement", "elem_arith", "generator", "verify_presentation", "walled_basis",
    "GaussMat", "Subspace", "center_dim", "commutant_basis", "nullspace", "rank", "subspace_ops",
    "GroupContext", "GroupSpec", "group_context", "measure_deltas", "tensor_operator",
    "commutant_check", "count_bipartitions", "count_ktypes", "decompose_sp", "phi",
    "phi_faithful", "so_dimension_identity", "verify_phi", "walled_centralizer_check",
]
