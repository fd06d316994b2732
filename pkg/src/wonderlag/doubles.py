"""Quadratic Lie algebras, Lagrangian subalgebras and Manin triples."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .lie import LieAlgebra, is_subalgebra
from .linalg import (
    ONE,
    ZERO,
    BilinearForm,
    DimensionError,
    Multivector,
    Subspace,
    intersect,
    inverse,
    lincomb,
    matmul,
    orth_complement,
    transpose,
)


class NotLagrangianError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class QuadraticDouble:
    algebra: LieAlgebra
    form: BilinearForm
    half_dim: int
    provenance: str
    base: LieAlgebra | None = None

    def __post_init__(self):
        d = self.algebra
        if self.form.dim != d.dim or d.dim != 2 * self.half_dim:
            raise DimensionError("form, algebra and half_dim disagree")
        if not self.form.nondegenerate:
            raise ValueError("form is degenerate")
        bad = invariance_violation(d, self.form)
        if bad is not None:
            raise ValueError(f"form is not ad-invariant (basis triple {bad})")

    @property
    def dim(self):
        return self.algebra.dim

    def pair(self, x, y):
        return self.form(x, y)


def invariance_violation(g, form):
    """First ``(i, j, k)`` with ``<[e_i,e_j],e_k> + <e_j,[e_i,e_k]> != 0``."""
    G = form.gram
    for i, ad in enumerate(g._basis_ads):
        # ad^T G + G ad must vanish
        m = matmul(transpose(ad), G)
        m2 = matmul(G, ad)
        for j in range(g.dim):
            for k in range(g.dim):
                if m[j][k] + m2[j][k]:
                    return (i, j, k)
    return None


def direct_sum(g, h, name=None):
    n, m = g.dim, h.dim
    table = [[{} for _ in range(n + m)] for _ in range(n + m)]
    for i in range(n):
        for j in range(n):
            table[i][j] = dict(g.table[i][j])
    for i in range(m):
        for j in range(m):
            table[n + i][n + j] = {n + k: c for k, c in h.table[i][j].items()}
    labels = [f"({lab},0)" for lab in g.labels] + [f"(0,{lab})" for lab in h.labels]
    # Jacobi holds factorwise
    return LieAlgebra(table, labels, name=name or f"{g.name}+{h.name}", validate=False)


@lru_cache(maxsize=None)
def direct_sum_double(g):
    """``g + g`` with ``<(x1,x2),(y1,y2)> = kappa(x1,y1) - kappa(x2,y2)``."""
    if not g.is_semisimple():
        raise ValueError(f"{g.name} has a degenerate Killing form")
    n = g.dim
    K = g.killing_form().gram
    gram = [[ZERO] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            gram[i][j] = K[i][j]
            gram[n + i][n + j] = -K[i][j]
    d = direct_sum(g, g, name=f"{g.name}+{g.name}")
    return QuadraticDouble(d, BilinearForm(gram), n, "direct_sum", base=g)


@lru_cache(maxsize=None)
def semidirect_double(g):
    """``g x| g*`` with the coadjoint action and the evaluation pairing."""
    n = g.dim
    table = [[{} for _ in range(2 * n)] for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            table[i][j] = dict(g.table[i][j])
    # [e_i, eps^j] = ad*_{e_i} eps^j = -sum_k c_ik^j eps^k
    for i in range(n):
        for k in range(n):
            for j, c in g.table[i][k].items():
                table[i][n + j][n + k] = table[i][n + j].get(n + k, ZERO) - c
    for i in range(n):
        for j in range(n):
            table[n + j][i] = {k: -c for k, c in table[i][n + j].items()}
    labels = list(g.labels) + [f"{lab}*" for lab in g.labels]
    d = LieAlgebra(table, labels, name=f"{g.name}x|{g.name}*")
    gram = [[ONE if abs(i - j) == n else ZERO for j in range(2 * n)] for i in range(2 * n)]
    return QuadraticDouble(d, BilinearForm(gram), n, "semidirect", base=g)


def abelian_double():
    """Two-dimensional abelian algebra with the hyperbolic pairing."""
    d = LieAlgebra.abelian(2, name="abelian2")
    return QuadraticDouble(d, BilinearForm([[0, 1], [1, 0]]), 1, "custom")


# -- embeddings into g + g ------------------------------------------------------

def first(x):
    return tuple(x) + (ZERO,) * len(x)


def second(x):
    return (ZERO,) * len(x) + tuple(x)


def diag(x):
    return tuple(x) + tuple(x)


def pairs(xs, ys):
    return tuple(xs) + tuple(ys)


def product_subspace(a, b):
    """``a x b`` inside the direct sum."""
    n = a.ambient_dim
    return Subspace([first(v) for v in a.basis] + [second(v) for v in b.basis], 2 * n)


# -- Lagrangian predicates ---------------------------------------------------------

def is_isotropic(D, s):
    return all(D.form(x, y) == 0 for i, x in enumerate(s.basis) for y in s.basis[i:])


def is_lagrangian(D, s):
    if s.ambient_dim != D.dim:
        raise DimensionError("subspace is not in the double")
    if s.dim != D.half_dim:
        return False
    return is_subalgebra(D.algebra, s) and orth_complement(s, D.form) == s


def require_lagrangian(D, s, what="subspace"):
    if not is_lagrangian(D, s):
        raise NotLagrangianError(f"{what} is not a Lagrangian subalgebra")


# -- Manin triples ---------------------------------------------------------------

class ManinTriple:
    """``(d, u, u*)`` with dual bases ``<e_i, eps^j> = delta_ij``."""

    def __init__(self, double, u, u_star):
        require_lagrangian(double, u, "u")
        require_lagrangian(double, u_star, "u*")
        if not intersect(u, u_star).is_zero():
            raise ValueError("u and u* are not transversal")
        self.double = double
        self.u = u
        self.u_star = u_star
        n = double.half_dim
        e = u.basis
        w = u_star.basis
        P = tuple(tuple(double.form(a, b) for b in w) for a in e)
        M = transpose(inverse(P))
        eps = tuple(lincomb(M[i], w, double.dim) for i in range(n))
        self.e = e
        self.eps = eps

    @property
    def dual_bases(self):
        return self.e, self.eps

    def dual_gram(self):
        f = self.double.form
        return tuple(tuple(f(a, b) for b in self.eps) for a in self.e)

    def u_coordinates(self, x):
        """Coordinates of ``x`` in ``u`` w.r.t. the basis ``e``."""
        f = self.double.form
        return tuple(f(x, b) for b in self.eps)

    def u_star_coordinates(self, x):
        f = self.double.form
        return tuple(f(x, a) for a in self.e)

    def swapped(self):
        return ManinTriple(self.double, self.u_star, self.u)


def make_manin_triple(D, u, w):
    return ManinTriple(D, u, w)


def diagonal_subspace(g):
    return Subspace([diag(g.basis_vector(i)) for i in range(g.dim)], 2 * g.dim)


def borel_pair(g, twist):
    """``{(x, y) in b x b- : t(x) = twist * t(y)}`` inside ``g + g``."""
    rd = g.root_datum
    if rd is None:
        raise ValueError(f"{g.name} has no root datum")
    rows = [first(v) for v in rd.nilradical.basis]
    rows += [second(v) for v in rd.nilradical_minus.basis]
    rows += [pairs(h, [twist * x for x in h]) for h in rd.cartan_subalgebra.basis]
    return Subspace(rows, 2 * g.dim)


@lru_cache(maxsize=None)
def standard_triple(g):
    """``(g + g, g_diag, b x_t b-)`` with opposite Cartan parts in the second half.

    The Cartan components are taken as ``(h, -h)``: with equal components the
    two halves would share the diagonal Cartan.
    """
    D = direct_sum_double(g)
    return ManinTriple(D, diagonal_subspace(g), borel_pair(g, -1))


@lru_cache(maxsize=None)
def semidirect_triple(g):
    D = semidirect_double(g)
    n = g.dim
    u = Subspace([tuple(g.basis_vector(i)) + (ZERO,) * n for i in range(n)], 2 * n)
    us = Subspace([(ZERO,) * n + tuple(g.basis_vector(i)) for i in range(n)], 2 * n)
    return ManinTriple(D, u, us)


def abelian_triple():
    D = abelian_double()
    return ManinTriple(D, Subspace([(1, 0)], 2), Subspace([(0, 1)], 2))


# -- cobracket ----------------------------------------------------------------

class Cobracket:
    """``delta(e_k)`` as bivectors over ``u`` in the basis ``e``."""

    def __init__(self, images):
        self.images = tuple(images)

    def __getitem__(self, k):
        return self.images[k]

    def is_zero(self):
        return all(m.is_zero() for m in self.images)


def _u_bracket_coords(T):
    """``gamma[i][j]`` = coordinates of ``[e_i, e_j]`` in ``e``."""
    d = T.double.algebra
    n = len(T.e)
    return [[T.u_coordinates(d.bracket(T.e[i], T.e[j])) for j in range(n)] for i in range(n)]


def cobracket(T):
    d = T.double.algebra
    f = T.double.form
    n = len(T.e)
    images = []
    for k in range(n):
        terms = {}
        for i in range(n):
            for j in range(i + 1, n):
                c = f(T.e[k], d.bracket(T.eps[i], T.eps[j]))
                if c:
                    terms[(i, j)] = c
        images.append(Multivector(2, n, terms))
    return Cobracket(images)


def _ad_on_bivector(gamma, x, omega):
    """``ad_x`` (x in u-coordinates) acting on a bivector over u."""
    n = omega.dim
    out = Multivector(2, n)
    for (a, b), c in omega.terms.items():
        xa = lincomb(x, [gamma[i][a] for i in range(n)], n)
        xb = lincomb(x, [gamma[i][b] for i in range(n)], n)
        ea = tuple(ONE if i == a else ZERO for i in range(n))
        eb = tuple(ONE if i == b else ZERO for i in range(n))
        out = out + c * (Multivector.wedge_of(xa, eb) + Multivector.wedge_of(ea, xb))
    return out


def cocycle_violation(T, delta=None):
    """First basis pair where ``delta([x,y]) != ad_x delta(y) - ad_y delta(x)``."""
    delta = delta or cobracket(T)
    gamma = _u_bracket_coords(T)
    n = len(T.e)
    units = [tuple(ONE if i == k else ZERO for i in range(n)) for k in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = Multivector(2, n)
            for k, c in enumerate(gamma[i][j]):
                if c:
                    lhs = lhs + c * delta[k]
            rhs = (_ad_on_bivector(gamma, units[i], delta[j])
                   - _ad_on_bivector(gamma, units[j], delta[i]))
            if lhs != rhs:
                return (i, j)
    return None


def verify_cocycle(T):
    return cocycle_violation(T) is None


__all__ = [
    "QuadraticDouble", "ManinTriple", "Cobracket", "NotLagrangianError",
    "direct_sum_double", "semidirect_double", "abelian_double", "is_lagrangian",
    "is_isotropic", "make_manin_triple", "standard_triple", "semidirect_triple",
    "abelian_triple", "cobracket", "verify_cocycle", "first", "second", "diag",
    "product_subspace", "borel_pair", "diagonal_subspace",
]
