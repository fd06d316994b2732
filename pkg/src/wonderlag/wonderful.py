"""Parabolic subalgebras and the G x G-orbits of the wonderful compactification.

Subsets ``J`` of simple roots are 1-based, following the Dynkin labels of
the constructors in :mod:`wonderlag.lie`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .doubles import first, pairs, second
from .lie import centralizer, generated_subalgebra, is_subalgebra
from .linalg import Subspace, intersect, span_sum


@dataclass(frozen=True, eq=False)
class ParabolicData:
    J: tuple
    p: Subspace
    p_minus: Subspace
    u: Subspace
    u_minus: Subspace
    levi: Subspace
    levi_center: Subspace

    def check(self, g):
        n = g.dim
        assert span_sum(self.u, self.levi) == self.p
        assert self.u.dim + self.levi.dim == self.p.dim
        assert span_sum(self.u_minus, self.levi) == self.p_minus
        assert self.u_minus.dim + self.levi.dim == self.p_minus.dim
        assert intersect(self.u, self.u_minus).dim == 0
        assert intersect(self.p, self.p_minus) == self.levi
        for s in (self.p, self.p_minus, self.u, self.u_minus, self.levi, self.levi_center):
            assert s.ambient_dim == n and is_subalgebra(g, s)
        return True


def _root_datum(g):
    if g.root_datum is None:
        raise ValueError(f"{g.name} has no root datum")
    return g.root_datum


@lru_cache(maxsize=None)
def _parabolic(g, J):
    rd = _root_datum(g)
    J = rd.check_subset(J)
    p = generated_subalgebra(g, list(rd.borel.basis) + [rd.negative_simple[j - 1] for j in J])
    pm = generated_subalgebra(g, list(rd.borel_minus.basis)
                              + [rd.positive_simple[j - 1] for j in J])
    levi = intersect(p, pm)
    basis = [g.basis_vector(i) for i in range(g.dim)]
    # root spaces are basis lines, so "remaining" root spaces are basis vectors
    u = Subspace([v for v in basis if p.contains(v) and not pm.contains(v)], g.dim)
    um = Subspace([v for v in basis if pm.contains(v) and not p.contains(v)], g.dim)
    z = centralizer(g, levi, within=levi)
    return ParabolicData(J, p, pm, u, um, levi, z)


def parabolic_data(g, J):
    """Parabolic ``p_J`` generated by ``b`` and the negative simple roots in ``J``."""
    return _parabolic(g, tuple(sorted(set(J))))


def all_subsets(l):
    for k in range(l + 1):
        yield from combinations(range(1, l + 1), k)


def fiber_product_lagrangian(g, J):
    """``{(x, y) in p x p- : levi parts of x and y agree}`` inside ``g + g``."""
    pd = parabolic_data(g, J)
    rows = [first(v) for v in pd.u.basis] + [second(v) for v in pd.u_minus.basis]
    rows += [pairs(v, v) for v in pd.levi.basis]
    return Subspace(rows, 2 * g.dim)


def stabilizer_algebra(g, J):
    """Lie algebra of the stabilizer of ``z_J``: levi parts may differ by the center."""
    pd = parabolic_data(g, J)
    fp = fiber_product_lagrangian(g, J)
    return span_sum(fp, Subspace([first(v) for v in pd.levi_center.basis], 2 * g.dim))


@dataclass(frozen=True)
class OrbitRecord:
    J: tuple
    dim_orbit: int
    dim_closure: int
    codim: int
    divisors: tuple
    dim_flag_base: int
    dim_fiber_group: int

    def as_dict(self):
        return {
            "J": list(self.J),
            "dim_orbit": self.dim_orbit,
            "dim_closure": self.dim_closure,
            "codim": self.codim,
            "divisors": list(self.divisors),
            "dim_flag_base": self.dim_flag_base,
            "dim_fiber_group": self.dim_fiber_group,
        }


def orbit_record(g, J):
    rd = _root_datum(g)
    pd = parabolic_data(g, J)
    base = 2 * (g.dim - pd.p.dim)
    fiber = pd.levi.dim - pd.levi_center.dim
    dim = base + fiber
    l = rd.rank
    return OrbitRecord(
        J=pd.J,
        dim_orbit=dim,
        dim_closure=dim,
        codim=l - len(pd.J),
        divisors=tuple(j for j in range(1, l + 1) if j not in pd.J),
        dim_flag_base=base,
        dim_fiber_group=fiber,
    )


def orbit_table(g):
    """One record per subset ``J``, the open orbit (``J`` = everything) included."""
    if not g.is_semisimple():
        raise ValueError("orbit table needs a semisimple algebra")
    rd = _root_datum(g)
    return [orbit_record(g, J) for J in all_subsets(rd.rank)]


def closure_relation(r1, r2):
    """True iff the orbit of ``r1`` lies in the closure of the orbit of ``r2``."""
    return set(r1.J) <= set(r2.J)


# -- Belavin-Drinfeld triples ---------------------------------------------------

@dataclass(frozen=True)
class BDTriple:
    I: tuple
    Jset: tuple
    eta: tuple  # pairs (i, eta(i))

    @classmethod
    def from_map(cls, mapping):
        items = tuple(sorted(mapping.items()))
        return cls(tuple(i for i, _ in items), tuple(sorted(j for _, j in items)), items)

    def __call__(self, i):
        return dict(self.eta)[i]


def bd_validate(rd, t):
    """Check ``eta`` is a bijection ``I -> Jset`` preserving the Cartan matrix."""
    I, Js = tuple(sorted(t.I)), tuple(sorted(t.Jset))
    rd.check_subset(I)
    rd.check_subset(Js)
    m = dict(t.eta)
    if sorted(m) != list(I) or sorted(m.values()) != list(Js) or len(set(m.values())) != len(m):
        raise ValueError("eta is not a bijection I -> J")
    A = rd.cartan_matrix
    return all(A[m[i] - 1][m[j] - 1] == A[i - 1][j - 1] for i in I for j in I)


def bd_orbit_dimension(g, t):
    rd = _root_datum(g)
    if not bd_validate(rd, t):
        raise ValueError("eta does not preserve the Cartan matrix")
    pi = parabolic_data(g, t.I)
    pj = parabolic_data(g, t.Jset)
    return ((g.dim - pi.p.dim) + (g.dim - pj.p.dim)
            + (pi.levi.dim - pi.levi_center.dim))
