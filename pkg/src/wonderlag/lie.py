"""Finite-dimensional Lie algebras over Q given by structure constants."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .linalg import (
    ONE,
    ZERO,
    BilinearForm,
    DimensionError,
    Subspace,
    det,
    identity,
    intersect,
    inverse,
    lincomb,
    matmul,
    matvec,
    nullspace,
    rref,
    transpose,
    unit,
    vec,
    zeros,
)


class LieAlgebraError(ValueError):
    """Structure constants violate antisymmetry or the Jacobi identity."""


def _sparse_add(acc, c, terms):
    for k, x in terms.items():
        v = acc.get(k, ZERO) + c * x
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


class LieAlgebra:
    """Lie algebra with basis ``e_0..e_{n-1}`` and ``[e_i, e_j] = sum_k c_ijk e_k``.

    ``table[i][j]`` is a dict ``{k: c_ijk}`` holding only nonzero entries.
    Antisymmetry and Jacobi are checked on construction.
    """

    def __init__(self, table, labels, name=None, model=None, root_datum=None,
                 validate=True):
        n = len(table)
        if n == 0:
            raise DimensionError("Lie algebra must have positive dimension")
        if len(labels) != n:
            raise DimensionError("one label per basis vector required")
        self.dim = n
        self.labels = tuple(labels)
        self.name = name or f"lie{n}"
        self.table = tuple(
            tuple({k: Fraction(v) for k, v in table[i][j].items() if v} for j in range(n))
            for i in range(n))
        self.model = model
        self.root_datum = root_datum
        if validate:
            self._validate()

    def __repr__(self):
        return f"LieAlgebra({self.name}, dim={self.dim})"

    @classmethod
    def from_structure_constants(cls, c, labels=None, **kw):
        n = len(c)
        table = [[{k: c[i][j][k] for k in range(n) if c[i][j][k]} for j in range(n)]
                 for i in range(n)]
        return cls(table, labels or [f"e{i}" for i in range(n)], **kw)

    @classmethod
    def abelian(cls, n, name=None):
        return cls([[{} for _ in range(n)] for _ in range(n)],
                   [f"e{i}" for i in range(n)], name=name or f"abelian{n}")

    @classmethod
    def from_matrices(cls, mats, labels, name=None, validate=True):
        model = MatrixModel(mats)
        n = len(mats)
        table = [[{} for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                a, b = mats[i], mats[j]
                comm = _msub(matmul(a, b), matmul(b, a))
                coords = model.coordinates(comm)
                if coords is None:
                    raise LieAlgebraError("matrix span is not closed under commutator")
                table[i][j] = {k: x for k, x in enumerate(coords) if x}
                table[j][i] = {k: -x for k, x in enumerate(coords) if x}
        return cls(table, labels, name=name, model=model, validate=validate)

    # -- validation ---------------------------------------------------------

    def _validate(self):
        n = self.dim
        for i in range(n):
            if self.table[i][i]:
                raise LieAlgebraError(f"[e{i}, e{i}] != 0")
            for j in range(i + 1, n):
                a, b = self.table[i][j], self.table[j][i]
                if set(a) != set(b) or any(a[k] != -b[k] for k in a):
                    raise LieAlgebraError(f"antisymmetry fails for ({i}, {j})")
        bad = self.jacobi_violation()
        if bad is not None:
            raise LieAlgebraError(f"Jacobi identity fails on basis triple {bad}")

    def _bracket_sparse(self, x, y):
        out = {}
        for i, a in x.items():
            row = self.table[i]
            for j, b in y.items():
                if row[j]:
                    _sparse_add(out, a * b, row[j])
        return out

    def jacobi_violation(self):
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                ij = self.table[i][j]
                for k in range(j + 1, n):
                    acc = {}
                    _sparse_add(acc, ONE, self._bracket_sparse(ij, {k: ONE}))
                    _sparse_add(acc, ONE, self._bracket_sparse(self.table[j][k], {i: ONE}))
                    _sparse_add(acc, ONE, self._bracket_sparse(self.table[k][i], {j: ONE}))
                    if acc:
                        return (i, j, k)
        return None

    # -- basic operations ---------------------------------------------------

    def basis_vector(self, i):
        return unit(self.dim, i)

    def bracket(self, x, y):
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionError(f"vectors must have length {self.dim}")
        sx = {i: Fraction(a) for i, a in enumerate(x) if a}
        sy = {j: Fraction(b) for j, b in enumerate(y) if b}
        out = self._bracket_sparse(sx, sy)
        v = [ZERO] * self.dim
        for k, c in out.items():
            v[k] = c
        return tuple(v)

    def ad_matrix(self, x):
        """Matrix of ``ad_x`` acting on column coordinate vectors."""
        cols = [self.bracket(x, self.basis_vector(j)) for j in range(self.dim)]
        return transpose(cols)

    @cached_property
    def _basis_ads(self):
        return tuple(self.ad_matrix(self.basis_vector(i)) for i in range(self.dim))

    def killing_form(self):
        return self._killing

    @cached_property
    def _killing(self):
        ads = self._basis_ads
        n = self.dim
        gram = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                prod = matmul(ads[i], ads[j])
                t = sum((prod[k][k] for k in range(n)), ZERO)
                gram[i][j] = gram[j][i] = t
        return BilinearForm(gram)

    def is_semisimple(self):
        return self._killing.nondegenerate

    def span(self, vectors):
        return Subspace(list(vectors), self.dim)

    def full(self):
        return Subspace.full(self.dim)

    def label_vector(self, v):
        parts = []
        for c, lab in zip(v, self.labels):
            if c:
                parts.append(f"{c}*{lab}")
        return " + ".join(parts) or "0"


def _msub(a, b):
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


class MatrixModel:
    """A basis of N x N matrices with a cached coordinate solver."""

    def __init__(self, mats):
        self.mats = tuple(tuple(tuple(Fraction(x) for x in row) for row in m) for m in mats)
        self.size = len(self.mats[0])
        flat = [self.flatten(m) for m in self.mats]
        # pivot entries of the flattened basis give an invertible square minor
        _, positions = rref(flat, len(flat[0]))
        if len(positions) != len(flat):
            raise LieAlgebraError("basis matrices are linearly dependent")
        self._positions = positions
        sub = [[f[p] for p in positions] for f in flat]
        self._solver = inverse(sub)

    @staticmethod
    def flatten(m):
        return tuple(x for row in m for x in row)

    def coordinates(self, m):
        f = self.flatten(m)
        t = [f[p] for p in self._positions]
        c = tuple(dot_col(t, self._solver, j) for j in range(len(self.mats)))
        if lincomb(c, [self.flatten(b) for b in self.mats], len(f)) != tuple(f):
            return None
        return c

    def matrix(self, v):
        n = self.size
        out = [[ZERO] * n for _ in range(n)]
        for c, m in zip(v, self.mats):
            if c:
                for i in range(n):
                    for j in range(n):
                        if m[i][j]:
                            out[i][j] += c * m[i][j]
        return tuple(tuple(r) for r in out)


def dot_col(t, m, j):
    return sum((a * m[i][j] for i, a in enumerate(t) if a), ZERO)


def elementary(n, i, j):
    return tuple(tuple(ONE if (r, c) == (i, j) else ZERO for c in range(n)) for r in range(n))


# -- root data --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RootDatum:
    series: str
    rank: int
    cartan_matrix: tuple
    positive_simple: tuple     # root vectors e_i
    negative_simple: tuple     # root vectors f_i
    coroots: tuple             # h_i with [h_i, e_i] = 2 e_i
    cartan_subalgebra: Subspace
    borel: Subspace
    borel_minus: Subspace
    nilradical: Subspace
    nilradical_minus: Subspace

    @property
    def simple_root_spaces(self):
        n = self.cartan_subalgebra.ambient_dim
        return tuple((Subspace([e], n), Subspace([f], n))
                     for e, f in zip(self.positive_simple, self.negative_simple))

    def check_subset(self, J):
        J = tuple(sorted(set(J)))
        if any(not 1 <= j <= self.rank for j in J):
            raise IndexError(f"simple root index out of range 1..{self.rank}: {J}")
        return J


def eigenvalue(g, h, v):
    """``c`` with ``[h, v] = c v``; raises if ``v`` is not an eigenvector."""
    w = g.bracket(h, v)
    k = next(i for i, x in enumerate(v) if x)
    c = w[k] / v[k]
    if any(a != c * b for a, b in zip(w, v)):
        raise LieAlgebraError("vector is not an ad-eigenvector")
    return c


def ad_eigenvalues(g, h):
    """Eigenvalues of ``ad_h`` on each basis vector; raises unless diagonal."""
    return tuple(eigenvalue(g, h, g.basis_vector(i)) for i in range(g.dim))


def attach_root_datum(g, series, cartan_idx, simple_pos_idx, simple_neg_idx):
    """Build and validate the root datum for a root-vector basis of ``g``."""
    n = g.dim
    l = len(simple_pos_idx)
    t = Subspace([g.basis_vector(i) for i in cartan_idx], n)
    es = tuple(g.basis_vector(i) for i in simple_pos_idx)
    fs = tuple(g.basis_vector(i) for i in simple_neg_idx)
    coroots = []
    for e, f in zip(es, fs):
        h = g.bracket(e, f)
        if not t.contains(h) or not any(h):
            raise LieAlgebraError("[e_i, f_i] is not a nonzero Cartan element")
        c = eigenvalue(g, h, e)
        coroots.append(tuple(2 * x / c for x in h))
    A = tuple(tuple(int(eigenvalue(g, coroots[i], es[j])) for j in range(l)) for i in range(l))
    for i in range(l):
        if A[i][i] != 2 or any(A[i][j] > 0 for j in range(l) if j != i):
            raise LieAlgebraError(f"not a Cartan matrix: {A}")
        for j in range(l):
            if eigenvalue(g, coroots[i], fs[j]) != -A[i][j]:
                raise LieAlgebraError("negative root vectors do not match Cartan matrix")
            if i != j and any(g.bracket(es[i], fs[j])):
                raise LieAlgebraError("[e_i, f_j] != 0 for i != j")
    b = generated_subalgebra(g, list(t.basis) + list(es))
    bm = generated_subalgebra(g, list(t.basis) + list(fs))
    nplus = derived_subspace(g, b)
    nminus = derived_subspace(g, bm)
    rd = RootDatum(series, l, A, es, fs, tuple(coroots), t, b, bm, nplus, nminus)
    g.root_datum = rd
    return g


@lru_cache(maxsize=None)
def make_sl(n):
    """sl_n with basis ``E_ij`` (i < j), ``H_i``, ``E_ij`` (i > j)."""
    if n < 2:
        raise ValueError("sl_n needs n >= 2")
    mats, labels = [], []
    pos = [(i, j) for i in range(n) for j in range(i + 1, n)]
    neg = [(j, i) for (i, j) in pos]
    for i, j in pos:
        mats.append(elementary(n, i, j))
        labels.append(f"E{i + 1}{j + 1}")
    for i in range(n - 1):
        mats.append(_msub(elementary(n, i, i), elementary(n, i + 1, i + 1)))
        labels.append(f"H{i + 1}")
    for i, j in neg:
        mats.append(elementary(n, i, j))
        labels.append(f"E{i + 1}{j + 1}")
    g = LieAlgebra.from_matrices(mats, labels, name=f"sl{n}")
    npos = len(pos)
    cartan_idx = list(range(npos, npos + n - 1))
    sp = [pos.index((i, i + 1)) for i in range(n - 1)]
    sn = [npos + n - 1 + neg.index((i + 1, i)) for i in range(n - 1)]
    return attach_root_datum(g, "A", cartan_idx, sp, sn)


def _classical_form(series, l):
    if series == "B":
        N = 2 * l + 1
        return N, tuple(tuple(ONE if i + j == N - 1 else ZERO for j in range(N)) for i in range(N))
    if series == "D":
        N = 2 * l
        return N, tuple(tuple(ONE if i + j == N - 1 else ZERO for j in range(N)) for i in range(N))
    N = 2 * l
    return N, tuple(tuple((ONE if i < l else -ONE) if i + j == N - 1 else ZERO
                          for j in range(N)) for i in range(N))


def _epsilon(series, l, a):
    """Weight of the a-th standard basis vector in epsilon coordinates."""
    N = 2 * l + (1 if series == "B" else 0)
    w = [0] * l
    if a < l:
        w[a] = 1
    elif series == "B" and a == l:
        pass
    else:
        w[N - 1 - a] = -1
    return tuple(w)


def _simple_roots(series, l):
    roots = []
    for i in range(l - 1):
        r = [0] * l
        r[i], r[i + 1] = 1, -1
        roots.append(tuple(r))
    last = [0] * l
    if series == "B":
        last[l - 1] = 1
    elif series == "C":
        last[l - 1] = 2
    else:
        last[l - 2], last[l - 1] = 1, 1
    roots.append(tuple(last))
    return roots


_MIN_RANK = {"B": 1, "C": 1, "D": 2}


@lru_cache(maxsize=None)
def make_classical(series, rank):
    """Orthogonal or symplectic algebra of the given series, rank <= 4.

    Uses the antidiagonal form, so the diagonal matrices form a Cartan
    subalgebra and upper triangular ones a Borel.
    """
    series = series.upper()
    if series not in _MIN_RANK or not _MIN_RANK[series] <= rank <= 4:
        raise ValueError(f"unsupported classical type {series}{rank}")
    l = rank
    N, J = _classical_form(series, l)
    # group matrix entries by weight; the condition X^T J + J X = 0 is homogeneous
    groups = {}
    for a in range(N):
        for b in range(N):
            w = tuple(x - y for x, y in zip(_epsilon(series, l, a), _epsilon(series, l, b)))
            groups.setdefault(w, []).append((a, b))
    pos_mats, cartan_mats, neg_mats = [], [], []
    for w, entries in sorted(groups.items()):
        k = len(entries)
        eqs = []
        for i in range(N):
            for j in range(N):
                # (X^T J + J X)_{ij} = sum_k X_ki J_kj + J_ik X_kj
                row = [ZERO] * k
                for t, (a, b) in enumerate(entries):
                    if b == i:
                        row[t] += J[a][j]
                    if b == j:
                        row[t] += J[i][a]
                if any(row):
                    eqs.append(row)
        for sol in Subspace(nullspace(eqs, k), k).basis:
            m = [[ZERO] * N for _ in range(N)]
            for c, (a, b) in zip(sol, entries):
                m[a][b] = c
            m = tuple(tuple(r) for r in m)
            if not any(w):
                cartan_mats.append(m)
            else:
                a, b = next((a, b) for (a, b), c in zip(entries, sol) if c)
                (pos_mats if a < b else neg_mats).append((w, (a, b), m))
    pos_mats.sort(key=lambda t: t[1])
    neg_mats.sort(key=lambda t: (t[1][1], t[1][0]))
    mats = [m for _, _, m in pos_mats] + cartan_mats + [m for _, _, m in neg_mats]
    labels = ([f"X{a + 1}_{b + 1}" for _, (a, b), _ in pos_mats]
              + [f"H{i + 1}" for i in range(len(cartan_mats))]
              + [f"X{a + 1}_{b + 1}" for _, (a, b), _ in neg_mats])
    g = LieAlgebra.from_matrices(mats, labels, name=f"{series}{l}")
    expected = 2 * l * l + (l if series in "BC" else -l)
    if g.dim != expected or len(cartan_mats) != l:
        raise LieAlgebraError(f"{series}{l} built with dimension {g.dim}, expected {expected}")
    npos = len(pos_mats)
    weights_pos = [w for w, _, _ in pos_mats]
    weights_neg = [w for w, _, _ in neg_mats]
    simple = _simple_roots(series, l)
    sp = [weights_pos.index(r) for r in simple]
    sn = [npos + l + weights_neg.index(tuple(-x for x in r)) for r in simple]
    return attach_root_datum(g, series, list(range(npos, npos + l)), sp, sn)


# -- subalgebras ------------------------------------------------------------

def is_subalgebra(g, s):
    _check_ambient(g, s)
    b = s.basis
    for i in range(len(b)):
        for j in range(i + 1, len(b)):
            if not s.contains(g.bracket(b[i], b[j])):
                return False
    return True


def _check_ambient(g, s):
    if s.ambient_dim != g.dim:
        raise DimensionError(f"subspace of ambient {s.ambient_dim} in algebra of dim {g.dim}")


def generated_subalgebra(g, vectors):
    s = Subspace(list(vectors), g.dim)
    while True:
        b = s.basis
        new = [g.bracket(b[i], b[j]) for i in range(len(b)) for j in range(i + 1, len(b))]
        t = Subspace(list(b) + new, g.dim)
        if t.dim == s.dim:
            return s
        s = t


def derived_subspace(g, s):
    b = s.basis
    return Subspace([g.bracket(b[i], b[j]) for i in range(len(b))
                     for j in range(i + 1, len(b))], g.dim)


def normalizer(g, s):
    """``{x : [x, s] in s}``."""
    _check_ambient(g, s)
    ann = s.annihilator().basis
    rows = []
    for v in s.basis:
        # [x, v] = -ad_v x, so the condition is ann . ad_v . x = 0
        adv = g.ad_matrix(v)
        rows.extend(matvec(transpose(adv), w) for w in ann)
    return Subspace(nullspace(rows, g.dim), g.dim)


def centralizer(g, s, within=None):
    """``{x in within : [x, s] = 0}``; ``within`` defaults to all of ``g``."""
    _check_ambient(g, s)
    rows = []
    for v in s.basis:
        rows.extend(g.ad_matrix(v))
    c = Subspace(nullspace(rows, g.dim), g.dim)
    return c if within is None else intersect(c, within)


def center(g):
    return centralizer(g, g.full())


def is_semisimple(g):
    return g.is_semisimple()


def killing_form(g):
    return g.killing_form()


# -- involutions --------------------------------------------------------------

class InvolutionSpec:
    """An involutive automorphism, as a matrix on column coordinates."""

    def __init__(self, g, matrix):
        m = tuple(vec(r) for r in matrix)
        if len(m) != g.dim or any(len(r) != g.dim for r in m):
            raise DimensionError("involution matrix has wrong shape")
        if matmul(m, m) != identity(g.dim):
            raise ValueError("sigma o sigma != identity")
        for i in range(g.dim):
            for j in range(i + 1, g.dim):
                ei, ej = g.basis_vector(i), g.basis_vector(j)
                lhs = matvec(m, g.bracket(ei, ej))
                rhs = g.bracket(matvec(m, ei), matvec(m, ej))
                if lhs != rhs:
                    raise ValueError(f"sigma is not an automorphism on ({i}, {j})")
        self.algebra = g
        self.matrix = m

    @property
    def is_identity(self):
        return self.matrix == identity(self.algebra.dim)

    def __call__(self, x):
        return matvec(self.matrix, x)

    def fixed_subalgebra(self):
        n = self.algebra.dim
        rows = [tuple(self.matrix[i][j] - (ONE if i == j else ZERO) for j in range(n))
                for i in range(n)]
        return Subspace(nullspace(rows, n), n)


def matrix_involution(g, f):
    """InvolutionSpec from a map on the matrix model, e.g. ``X -> -X^T``."""
    if g.model is None:
        raise ValueError("algebra has no matrix model")
    cols = []
    for m in g.model.mats:
        c = g.model.coordinates(f(m))
        if c is None:
            raise ValueError("map does not preserve the algebra")
        cols.append(c)
    return InvolutionSpec(g, transpose(cols))


def neg_transpose(g):
    return matrix_involution(g, lambda m: tuple(tuple(-x for x in r) for r in zip(*m)))


INVOLUTIONS = {"neg-transpose": neg_transpose}


# -- registry -----------------------------------------------------------------

_SPEC = re.compile(r"^(?:(sl)(\d+)|([ABCD])(\d+))$", re.IGNORECASE)


def parse_algebra(spec):
    """Resolve strings like ``"A3"``, ``"sl4"``, ``"B2"``, ``"D3"``."""
    m = _SPEC.match(spec.strip())
    if not m:
        raise ValueError(f"unknown algebra specifier {spec!r}")
    if m.group(1):
        return make_sl(int(m.group(2)))
    series, r = m.group(3).upper(), int(m.group(4))
    if series == "A":
        if r < 1:
            raise ValueError("A_l needs l >= 1")
        return make_sl(r + 1)
    return make_classical(series, r)


def algebra_metadata(g):
    rd = g.root_datum
    return {
        "name": g.name,
        "dim": g.dim,
        "type": f"{rd.series}{rd.rank}" if rd else None,
        "rank": rd.rank if rd else None,
    }


__all__ = [
    "LieAlgebra", "LieAlgebraError", "MatrixModel", "RootDatum", "InvolutionSpec",
    "make_sl", "make_classical", "parse_algebra", "is_subalgebra", "normalizer",
    "centralizer", "center", "is_semisimple", "killing_form", "generated_subalgebra",
    "ad_eigenvalues", "neg_transpose", "matrix_involution", "zeros", "det",
]
