import math

import pytest
from hypothesis import given, settings, strategies as st

from cyclobrauer.algebra import AlgebraElement, generator
from cyclobrauer.coeffs import I, GaussRat
from cyclobrauer.diagrams import enumerate_diagrams
from cyclobrauer.errors import BadSpec, ContextMismatch, IndexOutOfRange, InvariantViolation
from cyclobrauer.groups import (
    GroupSpec,
    conjugated_deltas,
    group_context,
    lie_operator,
    measure_deltas,
    tensor_operator,
)
from cyclobrauer.linalg import GaussMat
from cyclobrauer.schur_weyl import (
    commutant_check,
    count_bipartitions,
    count_ktypes,
    decompose_sp,
    generator_images,
    phi,
    phi_diagram,
    phi_faithful,
    so_dimension_identity,
    verify_phi,
    walled_centralizer_check,
)

from oracle import so_tensor_network

SP2 = GroupSpec.sp(2)
SO32 = GroupSpec.so(3, 2)


def by_id(reports):
    return {r.relation_id: r for r in reports}


# group contexts ----------------------------------------------------------------

def test_bad_specs():
    for bad in [lambda: GroupSpec.sp(0), lambda: GroupSpec.so(2, 2),
                lambda: GroupSpec.so(2, 3), lambda: GroupSpec.so(3, 0),
                lambda: GroupSpec("U", n=2)]:
        with pytest.raises(BadSpec):
            bad()


def test_so_xi_is_the_form():
    ctx = group_context(SO32)
    assert ctx.xi == GaussMat.from_dense([[1 if i == j and i < 3 else (-1 if i == j else 0)
                                           for j in range(5)] for i in range(5)])


def test_sp_xi_on_f_vectors():
    ctx = group_context(SP2)
    f1 = {0: GaussRat(1), 2: GaussRat(1)}
    assert ctx.xi.apply(f1) == {0: I, 2: -I}


def test_sp_lie_basis_kills_v1():
    ctx = group_context(SP2)
    assert len(ctx.lie_basis) == 4
    v1 = ctx.v1
    for X in ctx.lie_basis:
        out = lie_operator(X, 4, 2).apply(v1)
        assert all(not v for v in out.values())


@pytest.mark.parametrize("spec", [GroupSpec.sp(n) for n in range(1, 5)]
                         + [GroupSpec.so(p, q) for p, q in [(2, 1), (3, 2), (4, 1), (4, 3)]])
def test_context_invariants(spec):
    ctx = group_context(spec)
    assert ctx.xi @ ctx.xi == GaussMat.identity(ctx.dim_v)
    for X in ctx.lie_basis:
        assert X @ ctx.xi == ctx.xi @ X


def test_xi_sign_error_is_caught():
    # a sign flip inside the positive block no longer commutes with so(p)
    bad = GaussMat.from_entries(5, 5, [(0, 0, -1), (1, 1, 1), (2, 2, 1), (3, 3, -1), (4, 4, -1)])
    with pytest.raises(InvariantViolation) as err:
        group_context(SO32, xi=bad)
    assert err.value.check == "xi_commutes"


def test_sp_xi_sign_error_is_caught():
    ctx = group_context(GroupSpec.sp(1))
    with pytest.raises(InvariantViolation) as err:
        group_context(GroupSpec.sp(1), xi=ctx.xi.scale(-1))
    assert err.value.check == "xi_on_f_basis"
    with pytest.raises(InvariantViolation) as err:
        group_context(GroupSpec.sp(1), xi=ctx.xi.scale(2))
    assert err.value.check == "xi_involution"


# tensor operators ------------------------------------------------------------------

@pytest.mark.parametrize("spec", [SP2, SO32])
def test_operator_squares(spec):
    ctx = group_context(spec)
    d = ctx.dim_v
    ident = GaussMat.identity(d * d)
    s = tensor_operator("swap", ctx, 2, 1)
    x = tensor_operator("xi", ctx, 2, 1)
    e = tensor_operator("contract", ctx, 2, 1)
    d0, _ = measure_deltas(ctx)
    assert s @ s == ident
    assert x @ x == ident
    assert e @ e == e.scale(d0)


def test_operator_index_range():
    ctx = group_context(SP2)
    with pytest.raises(IndexOutOfRange):
        tensor_operator("swap", ctx, 2, 2)
    with pytest.raises(IndexOutOfRange):
        tensor_operator("xi", ctx, 2, 3)


@pytest.mark.parametrize("spec,k", [(GroupSpec.sp(1), 2), (GroupSpec.sp(1), 3), (SP2, 2),
                                    (GroupSpec.so(2, 1), 2), (GroupSpec.so(2, 1), 3), (SO32, 2)])
def test_generator_images_are_k_maps(spec, k):
    ctx = group_context(spec)
    gens = generator_images(ctx, k)
    for X in ctx.lie_basis:
        L = lie_operator(X, ctx.dim_v, k)
        for g in gens:
            assert L @ g == g @ L


# loop parameters -------------------------------------------------------------------

def test_measured_deltas():
    assert measure_deltas(group_context(SO32)) == (GaussRat(5), GaussRat(1))
    for n in (1, 2, 3):
        d0, d1 = measure_deltas(group_context(GroupSpec.sp(n)))
        assert d0 == GaussRat(-2 * n) and d1 == GaussRat(0)


def test_stated_deltas_differ():
    assert SP2.stated_deltas() == (-2, 0)
    assert SO32.stated_deltas() == (2, 1)


@pytest.mark.parametrize("spec", [SP2, SO32, GroupSpec.so(4, 1)])
def test_deltas_basis_independent(spec):
    ctx = group_context(spec)
    assert conjugated_deltas(ctx, ctx.basis_change) == measure_deltas(ctx)
    assert conjugated_deltas(ctx, ctx.weight_basis) == measure_deltas(ctx)


# phi ---------------------------------------------------------------------------------

def test_phi_examples():
    for spec in (SP2, SO32):
        ctx = group_context(spec)
        d = ctx.dim_v
        assert phi(AlgebraElement.one(2, 2), ctx, 2) == GaussMat.identity(d * d)
        t, e = generator("t", 1, 2, 2), generator("e", 1, 2, 2)
        assert phi(t * e, ctx, 2) == phi(e, ctx, 2)
    ctx = group_context(SO32)
    e, th = generator("e", 1, 2, 2), generator("theta", 1, 2, 2)
    assert phi(e * th * e, ctx, 2) == phi(e, ctx, 2).scale(measure_deltas(ctx)[1])


def test_phi_rejects_other_m():
    with pytest.raises(ContextMismatch):
        phi(AlgebraElement.one(2, 3), group_context(SP2), 2)


@pytest.mark.parametrize("p,q,k", [(2, 1, 2), (2, 1, 3), (3, 2, 2)])
def test_phi_matches_tensor_network(p, q, k):
    ctx = group_context(GroupSpec.so(p, q))
    for d in enumerate_diagrams(k, 2):
        want = so_tensor_network(d, p, q)
        got = {(r, c): v for r, c, v in phi_diagram(ctx, d).entries()}
        assert got == {rc: GaussRat(v) for rc, v in want.items()}


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_phi_multiplicative_sampled(data):
    ctx = group_context(GroupSpec.so(2, 1))
    ds = enumerate_diagrams(3, 2)
    pick = st.integers(0, len(ds) - 1)
    a, b = ds[data.draw(pick)], ds[data.draw(pick)]
    x = AlgebraElement.from_diagram(a) * AlgebraElement.from_diagram(b)
    assert phi(x, ctx, 3) == phi_diagram(ctx, a) @ phi_diagram(ctx, b)


def test_verify_phi_so():
    reports = verify_phi(group_context(SO32), 2)
    assert all(r.passed for r in reports if not r.informational)


def test_verify_phi_sp_theta_pair_sign():
    # xi (x) xi sends v1 to -v1 for the symplectic form, so theta theta e = -e
    reports = by_id(verify_phi(group_context(SP2), 2))
    failing = {rid for rid, r in reports.items() if not r.passed and not r.informational}
    assert failing == {"rel4", "theta_pair_e", "homomorphism_pairs"}
    for rid in ("rel1", "rel2", "rel3", "e_square", "e_theta_e", "t_theta_conj"):
        assert reports[rid].passed
    ctx = group_context(SP2)
    e = tensor_operator("contract", ctx, 2, 1)
    xx = tensor_operator("xi", ctx, 2, 1) @ tensor_operator("xi", ctx, 2, 2)
    assert xx @ e == e.scale(-1)


# faithfulness, commutant --------------------------------------------------------------

@pytest.mark.parametrize("spec,k,rank", [(SP2, 2, 12), (SO32, 2, 12), (SP2, 1, 2)])
def test_phi_faithful(spec, k, rank):
    out = phi_faithful(group_context(spec), k)
    assert out["rank"] == rank and out["injective"]


@pytest.mark.parametrize("spec,k,dim", [(SP2, 2, 12), (SO32, 2, 12), (SP2, 1, 2)])
def test_commutant_check(spec, k, dim):
    out = commutant_check(group_context(spec), k)
    assert out["commutant_dim"] == dim and out["image_dim"] == dim and out["equal"]


def test_identity_component_has_larger_commutant():
    out = commutant_check(group_context(SO32), 2)
    assert out["identity_component_commutant_dim"] == 21


def test_image_rank_never_exceeds_expected():
    ctx = group_context(GroupSpec.so(2, 1))
    for k in (1, 2, 3):
        r = phi_faithful(ctx, k)["rank"]
        assert r <= math.factorial(2 * k) // math.factorial(k)


# sectors and K-types ------------------------------------------------------------------

def test_decompose_sp2_k2():
    rep = decompose_sp(2, 2)
    assert [s["block_dim"] for s in rep.sectors] == [2, 8, 2]
    assert [s["expected"] for s in rep.sectors] == [2, 8, 2]
    assert rep.off_block_zero and rep.total_dim == 12
    assert rep.cross_check["agree"]


def test_decompose_k0():
    rep = decompose_sp(2, 0)
    assert [s["block_dim"] for s in rep.sectors] == [1] and rep.total_dim == 1


@pytest.mark.parametrize("spec,k,n", [(SP2, 1, 2), (SP2, 2, 6), (SO32, 1, 2), (SO32, 2, 6)])
def test_count_ktypes(spec, k, n):
    assert count_ktypes(group_context(spec), k) == n == count_bipartitions(k)


@pytest.mark.parametrize("k,n", [(0, 1), (1, 2), (2, 6), (3, 12), (4, 26)])
def test_count_bipartitions(k, n):
    assert count_bipartitions(k) == n


def test_so_dimension_identity():
    for k in range(13):
        out = so_dimension_identity(k)
        assert out["equal"] and out["lhs"] == math.factorial(2 * k) // math.factorial(k)
    assert so_dimension_identity(2)["lhs"] == 12
    assert so_dimension_identity(3)["rhs"] == 120


@pytest.mark.parametrize("n,s,t,dim", [(2, 1, 1, 2), (3, 2, 1, 6), (2, 0, 0, 1)])
def test_walled_centralizer(n, s, t, dim):
    out = walled_centralizer_check(n, s, t)
    assert out["commutant_dim"] == dim and out["equal"]


@pytest.mark.parametrize("spec", [GroupSpec.so(2, 1), SO32, GroupSpec.so(4, 1)])
def test_verify_phi_so_three_strands(spec):
    reports = by_id(verify_phi(group_context(spec), 3))
    assert {"rel5", "rel6"} <= set(reports)
    assert all(r.passed for r in reports.values() if not r.informational)
