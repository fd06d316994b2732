import random
from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from wonderlag.doubles import (
    abelian_triple,
    diagonal_subspace,
    pairs,
    semidirect_triple,
    standard_triple,
)
from wonderlag.lagrangian import (
    adjoint_translate,
    cocharacter_limit,
    degeneration_cocharacter,
    graph_of_involution,
    random_sl_element,
)
from wonderlag.lie import make_sl, neg_transpose, normalizer
from wonderlag.linalg import DimensionError, Multivector, Subspace
from wonderlag.poisson import (
    R_SCALE,
    SCHOUTEN_FACTOR,
    CartanTrivector,
    bivector_at,
    bivector_rank,
    jacobiator_at,
    jacobiator_vanishes,
    r_matrix,
    reduced_bivector_rank,
    schouten_bracket,
    schouten_constant,
    schouten_identity_violation,
    schouten_square,
    tangent_action,
    verify_schouten_identity,
)
from wonderlag.wonderful import all_subsets, fiber_product_lagrangian

from oracles import (
    bracket_vec,
    dense_alternating,
    dense_pushforward,
    frac,
    schouten_of_decomposable,
    sharp_by_sympy,
    skew_rank,
    sym_rank,
    sym_tangent_matrix,
)

TRIPLES = {
    "standard-sl2": lambda: standard_triple(make_sl(2)),
    "standard-sl3": lambda: standard_triple(make_sl(3)),
    "semidirect-sl2": lambda: semidirect_triple(make_sl(2)),
    "semidirect-sl3": lambda: semidirect_triple(make_sl(3)),
}


def witness(g):
    """Half-dimensional, not a subalgebra of g + g: span{(E,F), (H,0), (0,H)}."""
    E, H, F = (g.basis_vector(i) for i in range(3))
    Z = (0,) * 3
    return Subspace([pairs(E, F), pairs(H, Z), pairs(Z, H)], 6)


def sl2_corpus(T):
    g = make_sl(2)
    D = T.double
    gd = diagonal_subspace(g)
    out = [gd, T.u, T.u_star, graph_of_involution(g, neg_transpose(g))]
    out += [fiber_product_lagrangian(g, J) for J in all_subsets(1)]
    out += [cocharacter_limit(D, degeneration_cocharacter(g, (), f), gd) for f in (1, 2)]
    rng = random.Random(3)
    out += [adjoint_translate(g, random_sl_element(2, rng), "left", gd) for _ in range(3)]
    return out


# -- r-matrix and Schouten bracket -----------------------------------------------

def test_r_matrix_abelian():
    T = abelian_triple()
    assert r_matrix(T) == Multivector(2, 2, {(0, 1): R_SCALE})
    assert r_matrix(T, 1) == Multivector(2, 2, {(0, 1): Fraction(1)})


def test_r_matrix_swap_negates():
    T = standard_triple(make_sl(2))
    assert r_matrix(T.swapped()) == -1 * r_matrix(T)


def test_r_matrix_basis_independent():
    # re-expressing u in another basis (with the matching dual basis) keeps R
    T = standard_triple(make_sl(2))
    from wonderlag.doubles import ManinTriple
    u2 = Subspace([tuple(2 * x + y for x, y in zip(T.e[0], T.e[1])), T.e[1], T.e[2]], 6)
    T2 = ManinTriple(T.double, u2, T.u_star)
    assert T2.u == T.u
    assert r_matrix(T2) == r_matrix(T)


def test_schouten_on_vectors_is_the_bracket():
    T = standard_triple(make_sl(2))
    d = T.double.algebra
    for i, j in combinations(range(6), 2):
        x = Multivector(1, 6, {(i,): 1})
        y = Multivector(1, 6, {(j,): 1})
        got = schouten_bracket(T.double, x, y)
        br = d.bracket(d.basis_vector(i), d.basis_vector(j))
        assert got == Multivector(1, 6, {(k,): c for k, c in enumerate(br) if c})


def test_schouten_dimension_check():
    T = standard_triple(make_sl(2))
    with pytest.raises(DimensionError):
        schouten_bracket(T.double, Multivector(2, 4), Multivector(2, 6))


@pytest.mark.parametrize("name", ["standard-sl2", "semidirect-sl2"])
def test_schouten_square_matches_four_term_formula(name):
    T = TRIPLES[name]()
    d = T.double.algebra
    RR = schouten_square(T.double, r_matrix(T))
    ours = dense_alternating(RR)
    want = schouten_of_decomposable(d, [(tuple(R_SCALE * x for x in e), eps)
                                        for e, eps in zip(T.e, T.eps)])
    assert {k: v for k, v in ours.items() if v} == want


@pytest.mark.parametrize("name", ["standard-sl2", "semidirect-sl2"])
def test_measured_constant_against_oracle(name):
    # [R,R](d_a, d_b, d_c) = -2 c^2 * (coordinate a of [#d_b, #d_c]), with # from sympy
    T = TRIPLES[name]()
    d = T.double.algebra
    S = sharp_by_sympy(T.double)
    sharp = [[frac(S[i, j]) for i in range(d.dim)] for j in range(d.dim)]
    for c in (R_SCALE, Fraction(1)):
        want = schouten_of_decomposable(d, [(tuple(c * x for x in e), eps)
                                            for e, eps in zip(T.e, T.eps)])
        for a, b, cc in permutations(range(d.dim), 3):
            phi = bracket_vec(d, sharp[b], sharp[cc])[a]
            assert want.get((a, b, cc), 0) == -2 * c * c * phi


@pytest.mark.parametrize("name", sorted(TRIPLES))
def test_schouten_constant(name):
    T = TRIPLES[name]()
    assert schouten_constant(T) == SCHOUTEN_FACTOR == Fraction(-1, 2)
    assert schouten_constant(T, 1) == -2
    assert verify_schouten_identity(T, R_SCALE, SCHOUTEN_FACTOR)
    assert verify_schouten_identity(T, 1, -2)


@pytest.mark.parametrize("name", ["standard-sl2", "semidirect-sl2"])
def test_factor_one_fails_off_the_abelian_double(name):
    T = TRIPLES[name]()
    for c in (R_SCALE, 1):
        bad = schouten_identity_violation(T, c)
        assert bad is not None
        phi = CartanTrivector(T.double)(*bad)
        assert phi != 0


def test_abelian_double_schouten():
    T = abelian_triple()
    assert schouten_square(T.double, r_matrix(T)).is_zero()
    assert schouten_constant(T) == 0
    assert verify_schouten_identity(T)


def test_cartan_trivector_alternating():
    T = standard_triple(make_sl(2))
    phi = CartanTrivector(T.double)
    for a, b, c in permutations(range(6), 3):
        assert phi(a, b, c) == -phi(a, c, b)
        assert phi(a, b, c) == -phi(b, a, c)


# -- the bivector on the variety of Lagrangian subalgebras --------------------------

def test_tangent_action_matches_oracle():
    T = standard_triple(make_sl(2))
    for l in sl2_corpus(T) + [witness(make_sl(2))]:
        rho = tangent_action(T.double, l)
        assert rho.dim == 9
        theirs = sym_tangent_matrix(T.double, l.basis)
        # the frames may differ, so compare invariants
        assert sym_rank([list(r) for r in rho.matrix]) == sym_rank(theirs)
        assert rho.kernel() == normalizer(T.double.algebra, l)


@pytest.mark.parametrize("n", [2, 3])
def test_tangent_kernel_is_stabilizer(n):
    g = make_sl(n)
    T = standard_triple(g)
    gd = diagonal_subspace(g)
    assert tangent_action(T.double, gd).kernel() == gd
    assert tangent_action(T.double, T.u).kernel() == T.u


def test_bivector_vanishes_on_u_and_u_star():
    T = standard_triple(make_sl(2))
    assert bivector_at(T, T.u).is_zero()
    assert bivector_at(T, T.u_star).is_zero()


def test_bivector_matches_oracle_sl2():
    T = standard_triple(make_sl(2))
    R = dense_alternating(r_matrix(T))
    RR = dense_alternating(schouten_square(T.double, r_matrix(T)))
    for l in sl2_corpus(T):
        rho = sym_tangent_matrix(T.double, l.basis)
        pi = dense_pushforward(rho, R, 2)
        assert bivector_rank(T, l) == skew_rank(pi, len(rho)) == reduced_bivector_rank(T, l)
        assert not dense_pushforward(rho, RR, 3)
        assert jacobiator_at(T, l).is_zero()


def test_rank_anchors_sl2():
    g = make_sl(2)
    T = standard_triple(g)
    assert bivector_rank(T, diagonal_subspace(g)) == 0
    for J in all_subsets(1):
        assert bivector_rank(T, fiber_product_lagrangian(g, J)) == 0
    rng = random.Random(11)
    for _ in range(4):
        l = adjoint_translate(g, random_sl_element(2, rng), "left", diagonal_subspace(g))
        if l != diagonal_subspace(g):
            assert bivector_rank(T, l) == 2


def test_sl3_corpus_reduced_route():
    g = make_sl(3)
    T = standard_triple(g)
    D = T.double
    gd = diagonal_subspace(g)
    pts = [gd, T.u, T.u_star, graph_of_involution(g, neg_transpose(g))]
    pts += [fiber_product_lagrangian(g, J) for J in all_subsets(2)]
    pts += [cocharacter_limit(D, degeneration_cocharacter(g, J), gd) for J in all_subsets(2)]
    rng = random.Random(5)
    pts += [adjoint_translate(g, random_sl_element(3, rng), "left", gd) for _ in range(2)]
    for l in pts:
        assert jacobiator_vanishes(T, l)
        r = reduced_bivector_rank(T, l)
        assert r % 2 == 0
    assert reduced_bivector_rank(T, gd) == 0
    assert reduced_bivector_rank(T, pts[-1]) == 6


@settings(max_examples=15, deadline=None)
@given(st.lists(st.lists(st.integers(-2, 2), min_size=6, max_size=6), min_size=3, max_size=3))
def test_reduced_route_matches_direct(rows):
    T = standard_triple(make_sl(2))
    l = Subspace(rows, 6)
    if l.dim != 3:
        with pytest.raises(DimensionError):
            bivector_rank(T, l)
        return
    assert bivector_rank(T, l) == reduced_bivector_rank(T, l)
    assert jacobiator_at(T, l).is_zero() == jacobiator_vanishes(T, l)


def test_jacobiator_nonzero_off_the_variety():
    g = make_sl(2)
    T = standard_triple(g)
    w = witness(g)
    assert w.dim == 3
    assert not jacobiator_at(T, w).is_zero()
    assert not jacobiator_vanishes(T, w)
    rho = sym_tangent_matrix(T.double, w.basis)
    RR = dense_alternating(schouten_square(T.double, r_matrix(T)))
    assert dense_pushforward(rho, RR, 3)
