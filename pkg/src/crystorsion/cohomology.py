"""First cohomology H^1(G, FM/M) of a ZG-lattice M with explicit cocycles.

A cocycle is stored by its values on the standard generators.  Values are
cosets ``x + M`` of rational coordinate vectors, kept reduced to ``[0, 1)``.
The group law ``(g, x)(g', x') = (gg', g'x + x')`` gives
``T(gg') = g'T(g) + T(g')``; for the abelian groups here this agrees with
``T(ab) = aT(b) + T(a)`` once ``(a-1)T(b) = (b-1)T(a)`` holds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from . import exactlin as el
from .exactlin import FiniteAbelianGroup, Matrix
from .groupcore import GroupAutomorphism, GroupElement
from .zglattice import GLattice, restriction


class CocycleError(ValueError):
    pass


def frac_vector(v: Sequence) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


def reduce_mod1(v: Sequence) -> tuple[Fraction, ...]:
    return tuple(x - (x.numerator // x.denominator) for x in frac_vector(v))


def is_integral(v: Sequence) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


@dataclass(frozen=True, eq=False)
class CosetVector:
    lattice: GLattice
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", reduce_mod1(self.coords))

    def __eq__(self, other):
        return (isinstance(other, CosetVector) and self.lattice is other.lattice
                and self.coords == other.coords)

    def __hash__(self):
        return hash(self.coords)

    def __add__(self, other: "CosetVector") -> "CosetVector":
        return CosetVector(self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return CosetVector(self.lattice, tuple(-a for a in self.coords))

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ") + M"


def act(L: GLattice, g: GroupElement, v: Sequence) -> list:
    return el.matvec(L.action_of(g), v)


@dataclass(frozen=True, eq=False)
class Cocycle:
    lattice: GLattice
    values: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        G = self.lattice.group
        vals = tuple(reduce_mod1(v) for v in self.values)
        if len(vals) != G.ngens or any(len(v) != self.lattice.rank for v in vals):
            raise CocycleError("need one value of length rank per generator")
        object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls, L: GLattice) -> "Cocycle":
        return cls(L, tuple((Fraction(0),) * L.rank for _ in range(L.group.ngens)))

    def value(self, k: int = 0) -> CosetVector:
        return CosetVector(self.lattice, self.values[k])

    def __add__(self, other: "Cocycle") -> "Cocycle":
        _same_lattice(self, other)
        return Cocycle(self.lattice, tuple(tuple(a + b for a, b in zip(u, v))
                                           for u, v in zip(self.values, other.values)))

    def __neg__(self):
        return Cocycle(self.lattice, tuple(tuple(-a for a in u) for u in self.values))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int) -> "Cocycle":
        return Cocycle(self.lattice, tuple(tuple(k * a for a in u) for u in self.values))

    def plus_coboundary(self, x: Sequence) -> "Cocycle":
        """``T + d(x)`` where ``d(x)(g) = (g-1)x``."""
        L = self.lattice
        x = frac_vector(x)
        vals = []
        for g, u in zip(L.group.generators, self.values):
            gx = act(L, g, x)
            vals.append(tuple(a + b - c for a, b, c in zip(u, gx, x)))
        return Cocycle(L, tuple(vals))

    def to_dict(self) -> dict:
        return {"lattice": self.lattice.name,
                "values": [[str(c) for c in v] for v in self.values]}

    def __str__(self):
        names = "ab"
        return "; ".join(f"T({n}) = {CosetVector(self.lattice, v)}"
                         for n, v in zip(names, self.values))


def cocycle_from_strings(L: GLattice, values: Sequence[Sequence[str]]) -> Cocycle:
    return Cocycle(L, tuple(tuple(Fraction(s) for s in v) for v in values))


def _same_lattice(T1: Cocycle, T2: Cocycle) -> None:
    if T1.lattice is not T2.lattice:
        raise CocycleError("cocycles live on different lattices")


def validate_cocycle(T: Cocycle) -> bool:
    L = T.lattice
    G = L.group
    for g, t in zip(G.generators, T.values):
        if not is_integral(el.matvec(L.norm_matrix(g), t)):
            return False
    if G.kind == "klein":
        a, b = G.generators
        ta, tb = T.values
        lhs = [x - y for x, y in zip(act(L, a, tb), tb)]
        rhs = [x - y for x, y in zip(act(L, b, ta), ta)]
        if not is_integral([x - y for x, y in zip(lhs, rhs)]):
            return False
    return True


def evaluate_rep(T: Cocycle, g: GroupElement) -> list[Fraction]:
    """A representative vector of ``T(g)`` (not reduced)."""
    L = T.lattice
    G = L.group
    if G.kind == "cyclic":
        (k,) = g.exps
        return el.matvec(L.partial_norm(G.generators[0], k), T.values[0])
    a, b = G.generators
    i, j = g.exps
    tbj = el.matvec(L.partial_norm(b, j), T.values[1])
    tai = el.matvec(L.partial_norm(a, i), T.values[0])
    return [x + y for x, y in zip(act(L, a ** i, tbj), tai)]


def evaluate(T: Cocycle, g: GroupElement) -> CosetVector:
    if not validate_cocycle(T):
        raise CocycleError("cannot evaluate an invalid cocycle")
    return CosetVector(T.lattice, evaluate_rep(T, g))


# ---------------------------------------------------------------------------
# coboundaries


@lru_cache(maxsize=256)
def _stacked_tester(L: GLattice, gens: tuple) -> el.SubspacePlusIntegers:
    m = L.rank
    S = []
    for g in gens:
        A = L.action_of(g)
        for i in range(m):
            S.append([A[i][j] - int(i == j) for j in range(m)])
    return el.SubspacePlusIntegers(S)


def coboundary_tester(L: GLattice, gens: Optional[Sequence[GroupElement]] = None):
    if gens is None:
        gens = L.group.generators
    return _stacked_tester(L, tuple(gens))


def is_coboundary(T: Cocycle) -> tuple[bool, Optional[list[Fraction]]]:
    """Return ``(True, x)`` with ``T(g) = (g-1)x + M`` for all g, else ``(False, None)``."""
    L = T.lattice
    t = [c for v in T.values for c in v]
    ok, x = coboundary_tester(L).decide(t)
    return ok, x


def cohomologous(T1: Cocycle, T2: Cocycle) -> bool:
    _same_lattice(T1, T2)
    return is_coboundary(T1 - T2)[0]


def restrict_cocycle(T: Cocycle, h: GroupElement) -> Cocycle:
    """Restriction to <h>, as a cocycle on ``restriction(T.lattice, h)``."""
    R = restricted_lattice(T.lattice, h)
    return Cocycle(R, (tuple(evaluate_rep(T, h)),))


@lru_cache(maxsize=256)
def restricted_lattice(L: GLattice, h: GroupElement) -> GLattice:
    return restriction(L, h)


def push_cocycle(T: Cocycle, eps: GroupAutomorphism, tau: Matrix,
                 target: Optional[GLattice] = None) -> Cocycle:
    """``g -> tau T(eps^-1 g)`` on ``target`` (default: the same lattice)."""
    L1 = T.lattice
    L2 = target if target is not None else L1
    G = L1.group
    for g in G.generators:
        lhs = el.matmul(L2.action_of(eps(g)), tau)
        rhs = el.matmul(tau, L1.action_of(g))
        if lhs != rhs:
            raise CocycleError("tau does not intertwine the twisted actions")
    inv = eps.inverse()
    vals = []
    for g in G.generators:
        vals.append(tuple(el.matvec(tau, evaluate_rep(T, inv(g)))))
    return Cocycle(L2, tuple(vals))


# ---------------------------------------------------------------------------
# H^1


@dataclass(frozen=True, eq=False)
class CohomologyResult:
    lattice: GLattice
    group_structure: FiniteAbelianGroup
    representatives: tuple[Cocycle, ...]
    denominator: int
    _quotient: el.Quotient

    @property
    def order(self) -> int:
        return self.group_structure.order

    def class_of(self, T: Cocycle) -> tuple[int, ...]:
        """Coordinates of ``[T]`` w.r.t. ``representatives``."""
        L = self.lattice
        d = self.denominator
        t = [c for v in T.values for c in v]
        ok, x = coboundary_tester(L).decide([d * c for c in t])
        if not ok:  # pragma: no cover - |G| kills H^1
            raise CocycleError("d * T is not a coboundary; is T a cocycle?")
        # d*T - d(x) is integral, so T - d(x/d) has denominator d
        shifted = T.plus_coboundary([-c / d for c in x])
        u = [int(d * c) for v in shifted.values for c in v]
        return self._quotient.coordinates(u)

    def classes(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(n) for n in self.group_structure.invariant_factors))

    def cocycle(self, coords: Sequence[int]) -> Cocycle:
        out = Cocycle.zero(self.lattice)
        for c, R in zip(coords, self.representatives):
            if c:
                out = out + R.scale(c)
        return out


def h1(L: GLattice) -> CohomologyResult:
    """H^1(G, FM/M) as a finite abelian group with representative cocycles."""
    G = L.group
    m = L.rank
    k = G.ngens
    d = G.order
    n = k * m
    gens = G.generators
    # congruences on u in Z^(km), values t = u / d
    C = []
    for idx, g in enumerate(gens):
        N = L.norm_matrix(g)
        for row in N:
            full = [0] * n
            full[idx * m:(idx + 1) * m] = row
            C.append(full)
    if G.kind == "klein":
        A = L.matrix(0)
        B = L.matrix(1)
        for i in range(m):
            full = [0] * n
            for j in range(m):
                full[j] = -(B[i][j] - int(i == j))        # -(b-1) t_a
                full[m + j] = A[i][j] - int(i == j)       # (a-1) t_b
            C.append(full)
    C = [r for r in C if any(r)]
    Z = _congruence_lattice(C, d, n)
    tester = coboundary_tester(L)
    B1 = tester.saturated_image() + [[d * int(i == j) for j in range(n)] for i in range(n)]
    Q = el.finite_quotient_with_generators(Z, B1)
    reps = []
    for g in Q.generators:
        vals = tuple(tuple(Fraction(g[i * m + j], d) for j in range(m)) for i in range(k))
        reps.append(Cocycle(L, vals))
    return CohomologyResult(L, Q.group, tuple(reps), d, Q)


def _congruence_lattice(C: Matrix, d: int, n: int) -> Matrix:
    """Basis of ``{u in Z^n : C u ≡ 0 mod d}``."""
    if not C:
        return el.identity(n)
    r = len(C)
    aug = [list(row) + [-d * int(i == j) for j in range(r)] for i, row in enumerate(C)]
    K = el.integer_kernel(aug, n + r)
    return el.hnf_basis([row[:n] for row in K] + [[d * int(i == j) for j in range(n)]
                                                  for i in range(n)], n)
