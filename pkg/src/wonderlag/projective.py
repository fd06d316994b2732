"""Projective models of PGL_n: matrices up to scale and the determinant boundary."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import ONE, ZERO, det, rank


@dataclass(frozen=True)
class ProjectivePoint:
    """Homogeneous coordinates scaled so the first nonzero entry is 1."""

    coords: tuple

    def __post_init__(self):
        c = tuple(Fraction(x) for x in self.coords)
        lead = next((x for x in c if x), None)
        if lead is None:
            raise ValueError("all homogeneous coordinates are zero")
        object.__setattr__(self, "coords", tuple(x / lead for x in c))

    def __len__(self):
        return len(self.coords)

    def as_matrix(self, n):
        if len(self.coords) != n * n:
            raise ValueError(f"point does not have {n * n} coordinates")
        return tuple(self.coords[i * n:(i + 1) * n] for i in range(n))


def _square(a):
    a = tuple(tuple(Fraction(x) for x in row) for row in a)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    return a


def _flat(a):
    return tuple(x for row in a for x in row)


def psi_point(a):
    """Class of an invertible matrix in P(End V)."""
    a = _square(a)
    if det(a) == 0:
        raise ValueError("matrix is singular; use boundary_point")
    return ProjectivePoint(_flat(a))


def boundary_point(a):
    """Class of a nonzero singular matrix, a point of the determinant hypersurface."""
    a = _square(a)
    if det(a) != 0:
        raise ValueError("matrix is invertible; use psi_point")
    return ProjectivePoint(_flat(a))


def same_class(a, b):
    """Cross-multiplication test: ``a`` and ``b`` are proportional."""
    x, y = _flat(_square(a)), _flat(_square(b))
    if len(x) != len(y):
        return False
    return all(x[i] * y[j] == x[j] * y[i] for i in range(len(x)) for j in range(len(x)))


def segre(p, q):
    """Segre map P^1 x P^1 -> P^3, ``(p, q) -> p q^T``."""
    p = tuple(Fraction(x) for x in p)
    q = tuple(Fraction(x) for x in q)
    if len(p) != 2 or len(q) != 2:
        raise ValueError("segre takes two coordinate pairs")
    if not any(p) or not any(q):
        raise ValueError("zero vector is not a projective point")
    return ProjectivePoint(tuple(x * y for x in p for y in q))


def rank_one_factor(a):
    """``(p, q)`` with ``a = p q^T`` for a rank-one matrix ``a``."""
    a = tuple(tuple(Fraction(x) for x in row) for row in a)
    if rank(a) != 1:
        raise ValueError("matrix does not have rank one")
    j = next(j for j in range(len(a[0])) if any(row[j] for row in a))
    p = tuple(row[j] for row in a)
    i = next(i for i, x in enumerate(p) if x)
    q = tuple(x / p[i] for x in a[i])
    return p, q


def _minor(a, i, j):
    return tuple(tuple(x for c, x in enumerate(row) if c != j)
                 for r, row in enumerate(a) if r != i)


def det_gradient(a):
    """Partial derivatives of ``det`` at ``a``: the cofactor matrix (adjugate transposed)."""
    a = _square(a)
    n = len(a)
    if n == 1:
        return ((ONE,),)
    return tuple(tuple((-1) ** (i + j) * det(_minor(a, i, j)) for j in range(n))
                 for i in range(n))


def rank_representative(n, r):
    """``diag(1, ..., 1, 0, ..., 0)`` with ``r`` ones."""
    return tuple(tuple(ONE if i == j and i < r else ZERO for j in range(n)) for i in range(n))


def det_is_irreducible(n):
    """Factor the generic ``n x n`` determinant over Q."""
    import sympy

    xs = sympy.symbols(f"a0:{n * n}")
    poly = sympy.Matrix(n, n, xs).det()
    _, factors = sympy.factor_list(sympy.expand(poly))
    return len(factors) == 1 and factors[0][1] == 1


@dataclass(frozen=True)
class CompactificationVerdict:
    n: int
    boundary_smooth: bool
    singular_witness: tuple | None
    wonderful: bool
    det_irreducible: bool | None
    singular_ranks: tuple

    def as_dict(self):
        w = self.singular_witness
        return {
            "n": self.n,
            "boundary_smooth": self.boundary_smooth,
            "singular_witness": None if w is None else [[str(x) for x in row] for row in w],
            "wonderful": self.wonderful,
        }


def naive_compactification_report(n):
    """Is P(M_n) a wonderful compactification of PGL_n?

    The boundary is ``det = 0``; it is singular exactly where the gradient
    vanishes, i.e. at matrices of rank at most ``n - 2``.
    """
    if not 2 <= n <= 4:
        raise ValueError("n must be between 2 and 4")
    singular = []
    for r in range(1, n):
        if not any(_flat(det_gradient(rank_representative(n, r)))):
            singular.append(r)
    witness = rank_representative(n, min(singular)) if singular else None
    irreducible = det_is_irreducible(n) if n <= 3 else None
    smooth = not singular
    return CompactificationVerdict(
        n=n,
        boundary_smooth=smooth,
        singular_witness=witness,
        wonderful=smooth and irreducible is not False,
        det_irreducible=irreducible,
        singular_ranks=tuple(singular),
    )


__all__ = [
    "ProjectivePoint", "psi_point", "boundary_point", "same_class", "segre",
    "rank_one_factor", "det_gradient", "rank_representative", "det_is_irreducible",
    "CompactificationVerdict", "naive_compactification_report",
]
