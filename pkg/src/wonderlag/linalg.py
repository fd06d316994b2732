"""Exact rational linear algebra.

Vectors are tuples of :class:`fractions.Fraction`; matrices are tuples of
row tuples.  A :class:`Subspace` is always stored by its reduced row echelon
basis, so two subspaces are equal exactly when their stored bases are.
"""

from __future__ import annotations

from fractions import Fraction

Q = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionError(ValueError):
    pass


def vec(xs):
    return tuple(Fraction(x) for x in xs)


def mat(rows):
    return tuple(vec(r) for r in rows)


def zeros(n):
    return (ZERO,) * n


def unit(n, i):
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


def identity(n):
    return tuple(unit(n, i) for i in range(n))


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v):
    return tuple(c * a for a in v)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def is_zero(v):
    return not any(v)


def transpose(m, ncols=None):
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*m))


def matmul(a, b):
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def matvec(m, v):
    return tuple(dot(row, v) for row in m)


def lincomb(coeffs, rows, n):
    out = [ZERO] * n
    for c, row in zip(coeffs, rows):
        if c:
            for k, x in enumerate(row):
                if x:
                    out[k] += c * x
    return tuple(out)


def rref(rows, ncols):
    """Return ``(basis, pivots)`` for the row space of ``rows``.

    Pivots are leading ones in increasing columns; zero rows are dropped.
    """
    m = [list(map(Fraction, r)) for r in rows]
    for r in m:
        if len(r) != ncols:
            raise DimensionError(f"row of length {len(r)} in ambient {ncols}")
    pivots = []
    top = 0
    for col in range(ncols):
        pr = next((i for i in range(top, len(m)) if m[i][col]), None)
        if pr is None:
            continue
        m[top], m[pr] = m[pr], m[top]
        prow = m[top]
        inv = 1 / prow[col]
        if inv != 1:
            prow[:] = [x * inv for x in prow]
        for i in range(len(m)):
            if i != top and m[i][col]:
                f = m[i][col]
                row = m[i]
                for k in range(col, ncols):
                    if prow[k]:
                        row[k] -= f * prow[k]
        pivots.append(col)
        top += 1
        if top == len(m):
            break
    return tuple(tuple(r) for r in m[:top]), tuple(pivots)


def rank(m):
    if not m:
        return 0
    return len(rref(m, len(m[0]))[1])


def nullspace(m, ncols):
    """Basis of ``{v : m v = 0}`` (one basis vector per free column)."""
    basis, pivots = rref(m, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    out = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(basis, pivots):
            v[p] = -row[f]
        out.append(tuple(v))
    return out


def det(m):
    n = len(m)
    a = [list(map(Fraction, r)) for r in m]
    d = ONE
    for col in range(n):
        pr = next((i for i in range(col, n) if a[i][col]), None)
        if pr is None:
            return ZERO
        if pr != col:
            a[col], a[pr] = a[pr], a[col]
            d = -d
        p = a[col][col]
        d *= p
        for i in range(col + 1, n):
            if a[i][col]:
                f = a[i][col] / p
                for k in range(col, n):
                    a[i][k] -= f * a[col][k]
    return d


def inverse(m):
    n = len(m)
    aug = [tuple(m[i]) + unit(n, i) for i in range(n)]
    basis, pivots = rref(aug, 2 * n)
    if pivots[:n] != tuple(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return tuple(row[n:] for row in basis)


def solve_rows(basis, target):
    """Coefficients ``c`` with ``sum c_i basis[i] == target``, or ``None``."""
    n = len(target)
    cols = transpose(basis, n) if basis else tuple(() for _ in range(n))
    aug = [tuple(col) + (t,) for col, t in zip(cols, target)]
    k = len(basis)
    red, piv = rref(aug, k + 1)
    if piv and piv[-1] == k:
        return None
    c = [ZERO] * k
    for row, p in zip(red, piv):
        c[p] = row[k]
    return tuple(c)


class Subspace:
    """A linear subspace of Q^n in canonical (RREF) form.  Immutable."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, rows, ambient_dim):
        if ambient_dim < 0:
            raise DimensionError("negative ambient dimension")
        basis, pivots = rref(rows, ambient_dim)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "pivots", pivots)

    def __setattr__(self, *_):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def zero(cls, n):
        return cls((), n)

    @classmethod
    def full(cls, n):
        return cls(identity(n), n)

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        rows = ", ".join("(" + ", ".join(str(x) for x in r) + ")" for r in self.basis)
        return f"Subspace(dim={self.dim}/{self.ambient_dim}, [{rows}])"

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError(
                f"ambient mismatch: {self.ambient_dim} vs {other.ambient_dim}")

    def coordinates(self, v):
        """Coordinates of ``v`` in the stored basis; ``None`` if ``v`` is outside."""
        if len(v) != self.ambient_dim:
            raise DimensionError("vector length does not match ambient")
        c = tuple(Fraction(v[p]) for p in self.pivots)
        if lincomb(c, self.basis, self.ambient_dim) != tuple(v):
            return None
        return c

    def contains(self, v):
        return self.coordinates(v) is not None

    def __contains__(self, v):
        return self.contains(v)

    def __le__(self, other):
        self._check(other)
        return all(other.contains(r) for r in self.basis)

    def __add__(self, other):
        return span_sum(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def annihilator(self):
        """``{w : <w, s> = 0 for all s}`` under the standard dot product."""
        return Subspace(nullspace(self.basis, self.ambient_dim), self.ambient_dim)

    def is_zero(self):
        return not self.basis

    def map(self, m):
        """Image under the matrix ``m`` (acting on column vectors)."""
        return Subspace([matvec(m, r) for r in self.basis], len(m))


def canonicalize(rows, ambient_dim):
    return Subspace(rows, ambient_dim)


def span_sum(a, b):
    a._check(b)
    return Subspace(a.basis + b.basis, a.ambient_dim)


def intersect(a, b):
    a._check(b)
    n = a.ambient_dim
    ann = a.annihilator().basis + b.annihilator().basis
    return Subspace(nullspace(ann, n), n)


def quotient_basis(w, v):
    """Representatives completing a basis of ``w`` to one of ``v``."""
    w._check(v)
    if not w <= v:
        raise ValueError("quotient_basis requires W to be contained in V")
    n = v.ambient_dim
    current = w
    reps = []
    for row in v.basis:
        if not current.contains(row):
            reps.append(row)
            current = Subspace(current.basis + (row,), n)
    return reps


class BilinearForm:
    """Symmetric bilinear form given by its Gram matrix."""

    __slots__ = ("gram", "dim", "nondegenerate", "_rows")

    def __init__(self, gram):
        g = mat(gram)
        n = len(g)
        if any(len(r) != n for r in g):
            raise DimensionError("Gram matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if g[i][j] != g[j][i]:
                    raise ValueError("bilinear form is not symmetric")
        object.__setattr__(self, "gram", g)
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "nondegenerate", det(g) != 0)
        object.__setattr__(self, "_rows", tuple(tuple((j, c) for j, c in enumerate(r) if c)
                                                for r in g))

    def __setattr__(self, *_):
        raise AttributeError("BilinearForm is immutable")

    def __call__(self, x, y):
        total = ZERO
        for i, a in enumerate(x):
            if a:
                for j, c in self._rows[i]:
                    if y[j]:
                        total += a * c * y[j]
        return total

    def __eq__(self, other):
        return isinstance(other, BilinearForm) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def determinant(self):
        return det(self.gram)

    def lower(self, v):
        """The covector ``<v, .>`` in standard dual coordinates."""
        return tuple(sum((c * v[j] for j, c in row if v[j]), ZERO) for row in self._rows)


def orth_complement(s, form):
    if not form.nondegenerate:
        raise ValueError("orthogonal complement needs a nondegenerate form")
    if s.ambient_dim != form.dim:
        raise DimensionError("subspace and form live in different spaces")
    rows = [form.lower(r) for r in s.basis]
    return Subspace(nullspace(rows, form.dim), form.dim)


# -- multivectors -----------------------------------------------------------

def sort_with_sign(idx):
    """Sort an index tuple, returning ``(sign, sorted)``; sign 0 on repeats."""
    idx = list(idx)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idx, idx[1:]):
        if a == b:
            return 0, None
    return sign, tuple(idx)


class Multivector:
    """Sparse alternating k-tensor over Q^n.

    ``terms`` maps strictly increasing index tuples to nonzero coefficients;
    ``(i, j)`` stands for ``e_i ^ e_j = e_i (x) e_j - e_j (x) e_i``.
    """

    __slots__ = ("degree", "dim", "terms")

    def __init__(self, degree, dim, terms=None):
        clean = {}
        for idx, c in (terms or {}).items():
            if len(idx) != degree:
                raise DimensionError(f"index {idx} has wrong arity for degree {degree}")
            if any(not 0 <= i < dim for i in idx):
                raise DimensionError(f"index {idx} out of range for dim {dim}")
            sign, key = sort_with_sign(idx)
            if sign == 0 or not c:
                continue
            clean[key] = clean.get(key, ZERO) + sign * Fraction(c)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v})

    def __setattr__(self, *_):
        raise AttributeError("Multivector is immutable")

    @classmethod
    def wedge_of(cls, *vectors):
        """``v_1 ^ ... ^ v_k`` expanded in the standard basis."""
        n = len(vectors[0])
        out = {}
        supports = [[(i, x) for i, x in enumerate(v) if x] for v in vectors]
        _expand(supports, ONE, out)
        return cls(len(vectors), n, out)

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return (self.degree, self.dim, self.terms) == (other.degree, other.dim, other.terms)

    def __hash__(self):
        return hash((self.degree, self.dim, frozenset(self.terms.items())))

    def __repr__(self):
        body = " + ".join(f"{c}*e{list(k)}" for k, c in sorted(self.terms.items()))
        return f"Multivector(deg={self.degree}, dim={self.dim}, {body or '0'})"

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, ZERO) + c
        return Multivector(self.degree, self.dim, t)

    def __neg__(self):
        return Multivector(self.degree, self.dim, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        c = Fraction(c)
        return Multivector(self.degree, self.dim, {k: c * v for k, v in self.terms.items()})

    def _check(self, other):
        if (self.degree, self.dim) != (other.degree, other.dim):
            raise DimensionError("multivectors of different degree or dimension")

    def is_zero(self):
        return not self.terms

    def __getitem__(self, idx):
        sign, key = sort_with_sign(idx)
        if sign == 0:
            return ZERO
        return sign * self.terms.get(key, ZERO)

    def wedge(self, other):
        if self.dim != other.dim:
            raise DimensionError("wedge of multivectors over different spaces")
        t = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                sign, key = sort_with_sign(a + b)
                if sign:
                    t[key] = t.get(key, ZERO) + sign * x * y
        return Multivector(self.degree + other.degree, self.dim, t)

    def skew_matrix(self):
        if self.degree != 2:
            raise DimensionError("skew_matrix is only defined for bivectors")
        m = [[ZERO] * self.dim for _ in range(self.dim)]
        for (i, j), c in self.terms.items():
            m[i][j] = c
            m[j][i] = -c
        return tuple(tuple(r) for r in m)

    def evaluate(self, *covectors):
        """Value on covectors: sum over terms of ``c * det[f_a(e_{i_b})]``."""
        if len(covectors) != self.degree:
            raise DimensionError("wrong number of arguments")
        total = ZERO
        for idx, c in self.terms.items():
            total += c * det([[f[i] for i in idx] for f in covectors])
        return total


def _expand(supports, coeff, out, prefix=()):
    if not supports:
        sign, key = sort_with_sign(prefix)
        if sign:
            out[key] = out.get(key, ZERO) + sign * coeff
        return
    head, rest = supports[0], supports[1:]
    for i, x in head:
        if i in prefix:
            continue
        _expand(rest, coeff * x, out, prefix + (i,))


def wedge_image(phi, k, omega):
    """Push ``omega`` forward along the linear map ``phi``.

    ``phi`` is a matrix with ``len(phi)`` rows (target) and one column per
    source basis vector.
    """
    if omega.degree != k:
        raise DimensionError(f"expected a {k}-vector, got degree {omega.degree}")
    src = len(phi[0]) if phi else 0
    if omega.dim != src:
        raise DimensionError("multivector does not live on the source of phi")
    tgt = len(phi)
    cols = [[(r, phi[r][c]) for r in range(tgt) if phi[r][c]] for c in range(src)]
    out = {}
    for idx, c in omega.terms.items():
        _expand([cols[i] for i in idx], c, out)
    return Multivector(k, tgt, out)

