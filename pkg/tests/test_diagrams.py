import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from cyclobrauer.diagrams import (
    arc_diagram,
    bottom,
    canonicalize,
    compose,
    count_diagrams,
    enumerate_diagrams,
    enumerate_uneven,
    factor_marked,
    format_diagram,
    identity,
    is_walled,
    parse_diagram,
    permutation_diagram,
    standard_factorization,
    theta_diagram,
    top,
    ascii_art,
)
from cyclobrauer.errors import BadLabel, BadModulus, NotAMatching, ParseError, SizeMismatch

# the two elements multiplied in the worked k=6, m=3 example
FIG_X = "t2-b3,t3-t4,b1-b6,b4-b5:1,t5-t6:1,t1-b2:2"
FIG_Y = "t2-b1,b3-b6,b4-b5:1,t3-t6:1,t4-t5:1,t1-b2:2"
FIG_XY = "t1-b1:2,t2-b2,t3-t4,t5-t6:1,b3-b6,b4-b5:1"
MARKED = "t2-b3,t3-t4,b1-b6,t1-b2:1,b4-b5:1,t5-t6:1"


def _reverse_all(text, m):
    out = []
    for part in text.split(","):
        edge, _, lab = part.partition(":")
        u, v = edge.split("-")
        out.append("%s-%s:%d" % (v, u, (-int(lab or 0)) % m))
    return ",".join(out)


def strategy_diagram(kmax=3, mmax=3):
    @st.composite
    def build(draw):
        k = draw(st.integers(0, kmax))
        m = draw(st.integers(1, mmax))
        ds = enumerate_diagrams(k, m)
        return ds[draw(st.integers(0, len(ds) - 1))]
    return build()


# canonicalize -------------------------------------------------------------

def test_reversed_edge_negates_label():
    d = canonicalize([(bottom(1), top(1), 1)], 1, 3)
    assert d.edges == ((top(1), bottom(1), 2),)


def test_canonical_edge_unchanged():
    d = canonicalize([(top(1), bottom(1), 0)], 1, 2)
    assert d.edges == ((top(1), bottom(1), 0),)


def test_reversed_example_has_same_canonical_form():
    x = parse_diagram(FIG_X, m=3)
    assert parse_diagram(_reverse_all(FIG_X, 3), m=3) == x


def test_canonicalize_rejects_bad_input():
    with pytest.raises(NotAMatching):
        canonicalize([(top(1), bottom(1), 0), (top(1), bottom(2), 0)], 2, 1)
    with pytest.raises(NotAMatching):
        canonicalize([(top(1), top(2), 0)], 2, 1)
    with pytest.raises(BadLabel):
        canonicalize([(top(1), bottom(1), 3)], 1, 3)
    with pytest.raises(BadModulus):
        canonicalize([], 0, 0)


@given(strategy_diagram())
def test_canonicalize_idempotent(d):
    again = canonicalize(list(d.edges), d.k, d.m)
    assert again == d
    assert canonicalize(list(again.edges), d.k, d.m) == again


# compose ------------------------------------------------------------------

def test_worked_example_product():
    x, y = parse_diagram(FIG_X, m=3), parse_diagram(FIG_Y, m=3)
    loops, d = compose(x, y)
    assert loops == (0,)
    assert format_diagram(d) == FIG_XY


def test_identity_is_unit():
    d = parse_diagram(FIG_X, m=3)
    assert compose(identity(6, 3), d) == ((), d)
    assert compose(d, identity(6, 3)) == ((), d)


def test_e_squared_gives_a_loop():
    e = parse_diagram("t1-t2,b1-b2", m=2)
    loops, d = compose(e, e)
    assert loops == (0,) and d == e


def test_loop_label_normalized():
    # a loop reading label 2 mod 3 is recorded as min(2, 1) = 1
    cap = parse_diagram("t1-t2,b1-b2:2", m=3)
    cup = parse_diagram("t1-t2,b1-b2", m=3)
    loops, _ = compose(cap, cup)
    assert loops == (1,)


def test_compose_size_mismatch():
    with pytest.raises(SizeMismatch):
        compose(identity(2, 2), identity(3, 2))
    with pytest.raises(SizeMismatch):
        compose(identity(2, 2), identity(2, 3))


@settings(max_examples=200)
@given(st.data())
def test_compose_associative_sampled(data):
    k = data.draw(st.integers(0, 4))
    m = data.draw(st.integers(1, 3))
    ds = enumerate_diagrams(k, m)
    a, b, c = (ds[data.draw(st.integers(0, len(ds) - 1))] for _ in range(3))
    l1, ab = compose(a, b)
    l2, ab_c = compose(ab, c)
    l3, bc = compose(b, c)
    l4, a_bc = compose(a, bc)
    assert ab_c == a_bc
    assert sorted(l1 + l2) == sorted(l3 + l4)


# enumeration and counts ---------------------------------------------------

def test_enumerate_k1_m3():
    ds = enumerate_diagrams(1, 3)
    assert [d.edges[0][2] for d in ds] == [0, 1, 2]


def test_enumerate_k0():
    for m in (1, 2, 5):
        ds = enumerate_diagrams(0, m)
        assert len(ds) == 1 and ds[0].edges == ()


@pytest.mark.parametrize("k,m,want", [(2, 2, 12), (3, 1, 15), (4, 2, 1680)])
def test_counts(k, m, want):
    assert count_diagrams(k, m) == want
    assert len(enumerate_diagrams(k, m)) == want


@pytest.mark.parametrize("k", range(5))
@pytest.mark.parametrize("m", [1, 2, 3])
def test_count_matches_enumeration(k, m):
    ds = enumerate_diagrams(k, m)
    assert len(ds) == count_diagrams(k, m)
    assert len(set(ds)) == len(ds)
    assert [d.edges for d in ds] == sorted(d.edges for d in ds)


def test_uneven_counts():
    assert len(enumerate_uneven(6, 4)) == 945
    assert len(enumerate_uneven(1, 1)) == 1
    assert enumerate_uneven(2, 1) == []


@pytest.mark.parametrize("s,t", [(0, 0), (2, 0), (3, 1), (2, 4), (5, 3)])
def test_uneven_matches_brauer_count(s, t):
    assert len(enumerate_uneven(s, t)) == count_diagrams((s + t) // 2, 1)


# walls ---------------------------------------------------------------------

def test_is_walled_examples():
    for s in range(4):
        assert is_walled(identity(3), s)
    assert is_walled(parse_diagram("t1-t2,b1-b2"), 1)
    assert not is_walled(parse_diagram("t1-b2,t2-b1"), 1)


def test_walled_count_is_factorial():
    for s, t in [(1, 1), (2, 1), (2, 2), (3, 2)]:
        n = sum(1 for d in enumerate_diagrams(s + t) if is_walled(d, s))
        assert n == math.factorial(s + t)


# marks ----------------------------------------------------------------------

def test_marked_factorization_example():
    d = parse_diagram(MARKED, m=2)
    f = factor_marked(d)
    assert f.top_marks == {1, 6}
    assert f.bottom_marks == {5}
    assert f.bare == d.forget_labels()


def test_unmarked_factorization():
    d = parse_diagram("t1-b2,t2-t3,b1-b3", m=2)
    f = factor_marked(d)
    assert f.top_marks == set() and f.bottom_marks == set()
    assert f.bare.edges == d.edges


def test_theta_factorization():
    f = factor_marked(theta_diagram({1}, 2))
    assert f.top_marks == {1} and f.bottom_marks == set()
    assert f.bare == identity(2)


def test_factor_needs_m2():
    with pytest.raises(BadModulus):
        factor_marked(identity(2, 3))


@pytest.mark.parametrize("k", range(5))
def test_factorization_round_trip(k):
    for d in enumerate_diagrams(k, 2):
        f = factor_marked(d)
        loops1, mid = compose(f.bare.with_modulus(2), theta_diagram(f.bottom_marks, k))
        loops2, whole = compose(theta_diagram(f.top_marks, k), mid)
        assert loops1 == () and loops2 == ()
        assert whole == d


@pytest.mark.parametrize("k", range(5))
def test_standard_factorization_round_trip(k):
    for d in enumerate_diagrams(k):
        p_top, r, p_bot = standard_factorization(d)
        l1, x = compose(permutation_diagram(p_top), arc_diagram(r, k))
        l2, y = compose(x, permutation_diagram(p_bot))
        assert l1 == () and l2 == () and y == d


# text ------------------------------------------------------------------------

@given(strategy_diagram(kmax=4, mmax=4))
def test_text_round_trip(d):
    assert parse_diagram(format_diagram(d), m=d.m, k=d.k) == d


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_diagram("t1-x2")
    with pytest.raises(NotAMatching):
        parse_diagram("t1-b1", k=2)


def test_ascii_art_mentions_every_vertex():
    art = ascii_art(parse_diagram(FIG_X, m=3))
    assert isinstance(art, str) and art


def test_permutation_diagram_convention():
    d = permutation_diagram([2, 3, 1])
    pm = d.partner_map()
    assert [pm[top(i)][0] for i in (1, 2, 3)] == [bottom(2), bottom(3), bottom(1)]
    # composing a permutation with its inverse
    inv = [0] * 3
    for i, p in enumerate([2, 3, 1]):
        inv[p - 1] = i + 1
    assert compose(d, permutation_diagram(inv)) == ((), identity(3))


def test_all_permutations_distinct():
    ds = {permutation_diagram(list(p)) for p in itertools.permutations(range(1, 5))}
    assert len(ds) == 24
