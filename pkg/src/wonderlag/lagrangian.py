"""Points of the variety of Lagrangian subalgebras.

Cocharacter convention: a :class:`Cocharacter` with integer weights ``w``
acts by ``t**w_b`` on basis vector ``b`` and :func:`cocharacter_limit`
returns the ``t -> 0`` limit, i.e. the span of lowest-weight parts.  With
this convention ``degeneration_cocharacter(g, J)`` (a dominant coweight
acting on the *second* factor of ``g + g``) sends ``g_diag`` to the fiber
product ``p_J x_{l_J} p_J^-``; putting the same coweight on the first
factor yields the mirror image ``p_J^- x_{l_J} p_J``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .doubles import (
    ManinTriple,
    diagonal_subspace,
    is_lagrangian,
    require_lagrangian,
)
from .lie import InvolutionSpec, ad_eigenvalues, is_subalgebra, normalizer
from .linalg import (
    ONE,
    ZERO,
    DimensionError,
    Subspace,
    det,
    intersect,
    inverse,
    lincomb,
    matmul,
    matvec,
    nullspace,
    orth_complement,
    quotient_basis,
    rref,
    solve_rows,
    span_sum,
    transpose,
)


# -- constructors ----------------------------------------------------------------

def diagonal_lagrangian(g):
    return diagonal_subspace(g)


def graph_of_involution(g, sigma):
    """``{(x, sigma x)}``; ``sigma = id`` is allowed and gives ``g_diag``."""
    if not isinstance(sigma, InvolutionSpec) or sigma.algebra is not g:
        raise ValueError("sigma must be an InvolutionSpec on g")
    rows = [tuple(g.basis_vector(i)) + sigma(g.basis_vector(i)) for i in range(g.dim)]
    return Subspace(rows, 2 * g.dim)


def fixed_points_in_graph(g, sigma):
    """``l_sigma`` meet ``g_diag``, returned as a subspace of ``g``."""
    m = intersect(graph_of_involution(g, sigma), diagonal_subspace(g))
    return Subspace([v[:g.dim] for v in m.basis], g.dim)


def adjoint_matrix(g, a):
    """Matrix of ``Ad_a`` on ``g`` for an invertible matrix ``a``."""
    if g.model is None:
        raise ValueError(f"{g.name} has no matrix model")
    a = tuple(tuple(Fraction(x) for x in r) for r in a)
    if len(a) != g.model.size or det(a) == 0:
        raise ValueError("a must be an invertible matrix of the model's size")
    ainv = inverse(a)
    cols = []
    for m in g.model.mats:
        c = g.model.coordinates(matmul(matmul(a, m), ainv))
        if c is None:
            raise ValueError("conjugation by a does not preserve the algebra")
        cols.append(c)
    return transpose(cols)


def adjoint_translate(g, a, side, s):
    """Apply ``(Ad_a, 1)`` (side ``"left"``) or ``(1, Ad_a)`` (``"right"``) to ``s``."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if s.ambient_dim != 2 * g.dim:
        raise DimensionError("subspace is not in g + g")
    A = adjoint_matrix(g, a)
    n = g.dim
    rows = []
    for v in s.basis:
        x, y = v[:n], v[n:]
        rows.append(matvec(A, x) + tuple(y) if side == "left" else tuple(x) + matvec(A, y))
    return Subspace(rows, 2 * n)


def random_sl_element(n, rng=None, steps=6):
    """Random element of SL_n(Q): elementary matrices and a rational torus part."""
    rng = rng or random.Random(0)
    a = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    a = tuple(tuple(r) for r in a)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        e = [[ONE if r == c else ZERO for c in range(n)] for r in range(n)]
        e[i][j] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
        a = matmul(a, tuple(tuple(r) for r in e))
    q = Fraction(rng.choice([1, 2, 3]), rng.choice([1, 2, 5]))
    t = [[ZERO] * n for _ in range(n)]
    for k in range(n):
        t[k][k] = ONE
    t[0][0], t[n - 1][n - 1] = q, 1 / q
    return matmul(a, tuple(tuple(r) for r in t))


# -- cocharacters --------------------------------------------------------------

@dataclass(frozen=True)
class Cocharacter:
    weights: tuple

    def check(self, D):
        """Raise unless the induced grading respects bracket and form of ``D``."""
        w = self.weights
        d = D.algebra
        if len(w) != d.dim:
            raise DimensionError("one weight per basis vector of the double required")
        for i in range(d.dim):
            for j in range(d.dim):
                for k in d.table[i][j]:
                    if w[k] != w[i] + w[j]:
                        raise ValueError(f"grading incompatible with bracket at ({i},{j})->{k}")
                if D.form.gram[i][j] and w[i] + w[j] != 0:
                    raise ValueError(f"grading incompatible with the form at ({i},{j})")
        return True


def dominant_coweight(g, J):
    """Integral ``h`` in the Cartan with ``alpha_j(h) = 0`` iff ``j`` in ``J``.

    Returned as an integer combination of coroots; positive on the other
    simple roots.
    """
    rd = g.root_datum
    J = rd.check_subset(J)
    l = rd.rank
    target = [ZERO if j + 1 in J else ONE for j in range(l)]
    # alpha_j(sum_i c_i h_i) = sum_i c_i A_ij
    A = tuple(tuple(Fraction(x) for x in r) for r in rd.cartan_matrix)
    c = matvec(transpose(inverse(A)), target)
    m = lcm(*(x.denominator for x in c))
    c = [x * m for x in c]
    return lincomb(c, rd.coroots, g.dim)


def degeneration_cocharacter(g, J, factor=2):
    """Cocharacter on ``g + g`` from ``dominant_coweight(g, J)`` on one factor."""
    h = dominant_coweight(g, J)
    ev = [int(x) for x in ad_eigenvalues(g, h)]
    zero = [0] * g.dim
    return Cocharacter(tuple(zero + ev) if factor == 2 else tuple(ev + zero))


def cocharacter_limit(D, chi, s):
    """``lim_{t->0} chi(t) . s`` as the span of lowest-weight parts."""
    chi.check(D)
    if s.ambient_dim != D.dim:
        raise DimensionError("subspace is not in the double")
    w = chi.weights
    order = sorted(range(D.dim), key=lambda i: (w[i], i))
    perm = [[v[i] for i in order] for v in s.basis]
    red, piv = rref(perm, D.dim)
    rows = []
    for row, p in zip(red, piv):
        k = w[order[p]]
        out = [ZERO] * D.dim
        for pos, i in enumerate(order):
            if w[i] == k:
                out[i] = row[pos]
        rows.append(tuple(out))
    return Subspace(rows, D.dim)


# -- the Drinfeld map ------------------------------------------------------------

class InvalidDatum(ValueError):
    pass


class PoissonHomogeneousDatum:
    """Stabilizer ``stab`` inside ``u`` and a bivector on ``u/stab``.

    ``pi`` is a skew matrix in the frame ``quotient_basis(stab, u)``:
    ``pi = sum_{a<b} pi[a][b] q_a ^ q_b``.
    """

    def __init__(self, triple, stab, pi):
        d = triple.double.algebra
        if not stab <= triple.u:
            raise InvalidDatum("stabilizer is not inside u")
        if not is_subalgebra(d, stab):
            raise InvalidDatum("stabilizer is not a subalgebra")
        self.triple = triple
        self.stab = stab
        self.quotient = tuple(quotient_basis(stab, triple.u))
        r = len(self.quotient)
        pi = tuple(tuple(Fraction(x) for x in row) for row in pi)
        if len(pi) != r or any(len(row) != r for row in pi):
            raise InvalidDatum(f"pi must be {r} x {r}")
        if any(pi[a][b] != -pi[b][a] for a in range(r) for b in range(r)):
            raise InvalidDatum("pi is not skew")
        self.pi = pi

    def annihilator_frame(self):
        """Basis of ``stab°`` in ``u*`` dual to the quotient representatives."""
        T = self.triple
        f = T.double.form
        ann = intersect(T.u_star, orth_complement(self.stab, f)).basis
        M = tuple(tuple(f(w, q) for q in self.quotient) for w in ann)
        N = inverse(M) if M else ()
        return tuple(lincomb(N[a], ann, T.double.dim) for a in range(len(ann)))


def drinfeld_subalgebra(datum):
    """``{(x, xi) : xi|stab = 0, pi#(xi) = x mod stab}`` as one linear system."""
    T = datum.triple
    f = T.double.form
    n2 = T.double.dim
    q = datum.quotient
    eta = datum.annihilator_frame()
    P = datum.pi
    rows = [f.lower(s) for s in datum.stab.basis]
    for c in range(len(q)):
        coeffs = [ONE] + [-P[a][c] for a in range(len(q))]
        vecs = [eta[c]] + list(q)
        rows.append(f.lower(lincomb(coeffs, vecs, n2)))
    l = Subspace(nullspace(rows, n2), n2)
    if not is_lagrangian(T.double, l):
        raise InvalidDatum("datum does not define a Lagrangian subalgebra")
    return l


def poisson_datum_from_lagrangian(T, l):
    """Recover ``(stab, pi)`` with ``stab = l meet u`` from a Lagrangian ``l``."""
    require_lagrangian(T.double, l, "l")
    stab = intersect(l, T.u)
    f = T.double.form
    proto = PoissonHomogeneousDatum(T, stab, [[0] * (T.double.half_dim - stab.dim)
                                              for _ in range(T.double.half_dim - stab.dim)])
    eta = proto.annihilator_frame()
    r = len(eta)
    xs = []
    for c in range(r):
        # the unique-mod-stab z in l whose u*-part is eta_c
        target = [f(eta[c], e) for e in T.e]
        rows = [[f(z, e) for e in T.e] for z in l.basis]
        coeff = solve_rows(rows, target)
        if coeff is None:
            raise InvalidDatum("u*-projection of l is not the annihilator of l meet u")
        z = lincomb(coeff, l.basis, T.double.dim)
        xs.append(lincomb(T.u_coordinates(z), T.e, T.double.dim))
    pi = [[f(eta[b], xs[a]) for b in range(r)] for a in range(r)]
    return PoissonHomogeneousDatum(T, stab, pi)


def normalizer_in_u(T, l):
    return intersect(normalizer(T.double.algebra, l), T.u)


def drinfeld_image_of_point(T, l):
    """``u_[l] + (u + u_[l]°) meet l`` with ``u_[l]`` the normalizer of ``l`` in ``u``."""
    require_lagrangian(T.double, l, "l")
    ul = normalizer_in_u(T, l)
    ann = intersect(T.u_star, orth_complement(ul, T.double.form))
    return span_sum(ul, intersect(span_sum(T.u, ann), l))


def is_model_point(T, l):
    require_lagrangian(T.double, l, "l")
    return intersect(l, T.u) == normalizer_in_u(T, l)


__all__ = [
    "diagonal_lagrangian", "graph_of_involution", "fixed_points_in_graph",
    "adjoint_matrix", "adjoint_translate", "random_sl_element", "Cocharacter",
    "dominant_coweight", "degeneration_cocharacter", "cocharacter_limit",
    "PoissonHomogeneousDatum", "InvalidDatum", "drinfeld_subalgebra",
    "poisson_datum_from_lagrangian", "normalizer_in_u", "drinfeld_image_of_point",
    "is_model_point", "ManinTriple",
]
