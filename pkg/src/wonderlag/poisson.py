"""The r-matrix of a Manin triple and the induced bivector on Grassmannians.

The r-matrix is ``R = R_SCALE * sum_i e_i ^ eps^i``, the skew part of the
canonical element of the splitting.  Trivectors are evaluated on covectors
by the determinant pairing and the Schouten bracket uses the sign
``(-1)^(i+j)`` (so that it restricts to the Lie bracket on vectors).  With
these conventions

    [R, R](d1, d2, d3) = -2 c**2 <#d1, [#d2, #d3]>

for ``R = c * sum_i e_i ^ eps^i``.  :func:`schouten_constant` measures the
factor; :func:`verify_schouten_identity` checks the identity with factor 1
unless told otherwise, which only the abelian double passes.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from .lie import normalizer
from .linalg import (
    ZERO,
    DimensionError,
    Multivector,
    inverse,
    lincomb,
    nullspace,
    quotient_basis,
    rank,
    Subspace,
    transpose,
    wedge_image,
)

R_SCALE = Fraction(1, 2)
SCHOUTEN_FACTOR = -2 * R_SCALE ** 2


def r_matrix(T, scale=R_SCALE):
    n2 = T.double.dim
    R = Multivector(2, n2)
    for e, eps in zip(T.e, T.eps):
        R = R + Multivector.wedge_of(e, eps)
    return scale * R


def _basis_bracket(d, i, j):
    return d.table[i][j]


def schouten_bracket(D, P, Q):
    """Schouten-Nijenhuis bracket of multivectors over the Lie algebra of ``D``.

    ``[X1^..^Xp, Y1^..^Yq] = sum (-1)^(i+j) [Xi,Yj] ^ X_(no i) ^ Y_(no j)``.
    """
    d = D.algebra
    n = d.dim
    if P.dim != n or Q.dim != n:
        raise DimensionError("multivectors must live on the double")
    deg = P.degree + Q.degree - 1
    out = {}
    for a, x in P.terms.items():
        for b, y in Q.terms.items():
            for i, ai in enumerate(a):
                for j, bj in enumerate(b):
                    br = _basis_bracket(d, ai, bj)
                    if not br:
                        continue
                    rest = a[:i] + a[i + 1:] + b[:j] + b[j + 1:]
                    s = -1 if (i + j) % 2 else 1
                    for k, c in br.items():
                        if k in rest:
                            continue
                        key = (k,) + rest
                        out[key] = out.get(key, ZERO) + s * x * y * c
    return Multivector(deg, n, out)


def schouten_square(D, R):
    return schouten_bracket(D, R, R)


def sharp_matrix(D):
    """Matrix of ``#: d* -> d`` (inverse Gram) in dual-basis coordinates."""
    return inverse(D.form.gram)


class CartanTrivector:
    """``phi(a, b, c) = <#d_a, [#d_b, #d_c]>`` on dual basis covectors.

    Since ``<#d_a, w> = d_a(w)``, the value is coordinate ``a`` of
    ``[#d_b, #d_c]``; the brackets are computed once.
    """

    def __init__(self, D):
        self.double = D
        cols = transpose(sharp_matrix(D))
        n = D.dim
        br = {}
        for b in range(n):
            for c in range(b + 1, n):
                v = D.algebra.bracket(cols[b], cols[c])
                br[(b, c)] = v
        self._br = br

    def __call__(self, a, b, c):
        if b == c:
            return ZERO
        if b < c:
            return self._br[(b, c)][a]
        return -self._br[(c, b)][a]


def cartan_trivector_value(D, a, b, c):
    return CartanTrivector(D)(a, b, c)


def schouten_identity_violation(T, scale=R_SCALE, factor=1):
    """First dual-basis triple where ``[R,R] = factor * <#., [#., #.]>`` fails."""
    D = T.double
    RR = _schouten_square_of(T, scale)
    phi = CartanTrivector(D)
    for a, b, c in product(range(D.dim), repeat=3):
        if RR[(a, b, c)] != factor * phi(a, b, c):
            return (a, b, c)
    return None


def verify_schouten_identity(T, scale=R_SCALE, factor=1):
    return schouten_identity_violation(T, scale, factor) is None


def schouten_constant(T, scale=R_SCALE):
    """``k`` with ``[R,R] = k <#., [#., #.]>``; ``None`` if not proportional.

    Returns ``0`` when both sides vanish identically.
    """
    D = T.double
    RR = _schouten_square_of(T, scale)
    phi = CartanTrivector(D)
    k = None
    for a, b, c in combinations(range(D.dim), 3):
        lhs, rhs = RR[(a, b, c)], phi(a, b, c)
        if rhs == 0:
            if lhs:
                return None
            continue
        if k is None:
            k = lhs / rhs
        elif lhs != k * rhs:
            return None
    if k is None:
        return ZERO if RR.is_zero() else None
    return k


@lru_cache(maxsize=None)
def _schouten_square_of(T, scale):
    return schouten_square(T.double, r_matrix(T, scale))


# -- infinitesimal action on the Grassmannian ------------------------------------

class TangentAction:
    """``x -> (v -> [x, v] mod l)`` in a fixed frame.

    Tangent coordinates at ``[l]`` are indexed by ``(j, k)`` ->
    ``j * m + k``: the ``k``-th quotient coordinate of the image of the
    ``j``-th basis vector of ``l``.
    """

    def __init__(self, D, l):
        if l.ambient_dim != D.dim:
            raise DimensionError("subspace is not in the double")
        self.double = D
        self.l = l
        self.reps = tuple(quotient_basis(l, Subspace.full(D.dim)))
        self.n = l.dim
        self.m = len(self.reps)
        frame = l.basis + self.reps
        self._coords = inverse(frame) if frame else ()
        d = D.algebra
        cols = [self._image(d.basis_vector(a)) for a in range(D.dim)]
        self.matrix = transpose(cols) if cols and cols[0] else ()

    def quotient_coordinates(self, w):
        c = lincomb(w, self._coords, len(w))
        return c[self.n:]

    def _image(self, x):
        d = self.double.algebra
        out = []
        for v in self.l.basis:
            out.extend(self.quotient_coordinates(d.bracket(x, v)))
        return tuple(out)

    def __call__(self, x):
        return self._image(x)

    @property
    def dim(self):
        return self.n * self.m

    def kernel(self):
        return Subspace(nullspace(self.matrix, self.double.dim), self.double.dim)


def tangent_action(D, l):
    return TangentAction(D, l)


def _check_half(T, l):
    if l.dim != T.double.half_dim:
        raise DimensionError(f"expected a {T.double.half_dim}-dimensional subspace")


def bivector_at(T, l, scale=R_SCALE):
    _check_half(T, l)
    rho = TangentAction(T.double, l)
    return wedge_image(rho.matrix, 2, r_matrix(T, scale))


def bivector_rank(T, l, scale=R_SCALE):
    pi = bivector_at(T, l, scale)
    return rank(pi.skew_matrix())


def jacobiator_at(T, l, scale=R_SCALE):
    _check_half(T, l)
    rho = TangentAction(T.double, l)
    return wedge_image(rho.matrix, 3, _schouten_square_of(T, scale))


# The action map factors as d -> d/n(l) -> Hom(l, d/l) with the second map
# injective (n(l) is the normalizer), so vanishing and ranks can be read off
# in the much smaller quotient d/n(l).

def normalizer_projection(D, l):
    """Matrix of ``d -> d/n(l)`` in the frame of :func:`quotient_basis`."""
    N = normalizer(D.algebra, l)
    reps = quotient_basis(N, Subspace.full(D.dim))
    frame = N.basis + tuple(reps)
    inv = inverse(frame)
    k = N.dim
    # coordinates of e_a in the frame are row a of the inverse
    return transpose([inv[a][k:] for a in range(D.dim)]) if reps else ()


def reduced_bivector_rank(T, l, scale=R_SCALE):
    _check_half(T, l)
    q = normalizer_projection(T.double, l)
    if not q:
        return 0
    return rank(wedge_image(q, 2, r_matrix(T, scale)).skew_matrix())


def jacobiator_vanishes(T, l, scale=R_SCALE):
    _check_half(T, l)
    q = normalizer_projection(T.double, l)
    if len(q) < 3:
        return True
    return wedge_image(q, 3, _schouten_square_of(T, scale)).is_zero()


__all__ = [
    "R_SCALE", "SCHOUTEN_FACTOR", "schouten_constant", "r_matrix", "schouten_bracket",
    "schouten_square", "sharp_matrix", "CartanTrivector", "verify_schouten_identity", "schouten_identity_violation", "TangentAction",
    "tangent_action", "bivector_at", "bivector_rank", "jacobiator_at",
    "normalizer_projection", "reduced_bivector_rank", "jacobiator_vanishes",
]
