"""The extension group Crys(G; M; T): arithmetic, torsion certificates, isomorphism."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from . import exactlin as el
from .cohomology import (Cocycle, CohomologyResult, CocycleError, act, evaluate_rep, h1, is_integral,
                         is_coboundary, push_cocycle, restrict_cocycle, validate_cocycle)
from .exactlin import Matrix
from .groupcore import GroupAutomorphism, GroupElement, automorphisms
from .zglattice import GLattice, intertwiner_lattice, combine


class CrysError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class CrysGroup:
    lattice: GLattice
    cocycle: Cocycle

    def __post_init__(self):
        if self.cocycle.lattice is not self.lattice:
            raise CrysError("cocycle belongs to another lattice")
        if not validate_cocycle(self.cocycle):
            raise CocycleError("cocycle fails the cocycle conditions")

    @classmethod
    def of(cls, T: Cocycle) -> "CrysGroup":
        return cls(T.lattice, T)

    def element(self, g: GroupElement, x: Optional[Sequence] = None) -> "CrysElement":
        """``(g, x)``; ``x`` defaults to the stored representative of ``T(g)``."""
        if x is None:
            x = evaluate_rep(self.cocycle, g)
        return CrysElement(self, g, tuple(Fraction(c) for c in x))

    def translation(self, m: Sequence[int]) -> "CrysElement":
        return CrysElement(self, self.lattice.group.identity, tuple(Fraction(c) for c in m))

    @property
    def identity(self) -> "CrysElement":
        return self.translation([0] * self.lattice.rank)


@dataclass(frozen=True)
class CrysElement:
    group: CrysGroup = field(compare=False)
    g: GroupElement
    x: tuple[Fraction, ...]

    def __post_init__(self):
        t = evaluate_rep(self.group.cocycle, self.g)
        if not is_integral([a - b for a, b in zip(self.x, t)]) \
                or len(self.x) != self.group.lattice.rank:
            raise CrysError(f"{list(map(str, self.x))} is not in T({self.g})")

    def __mul__(self, other: "CrysElement") -> "CrysElement":
        return multiply(self, other)

    def __pow__(self, k: int) -> "CrysElement":
        return power(self, k)

    @property
    def is_identity(self) -> bool:
        return self.g.is_identity and not any(self.x)


def multiply(e1: CrysElement, e2: CrysElement) -> CrysElement:
    """``(g, x)(g', x') = (gg', g'x + x')``."""
    if e1.group is not e2.group:
        raise CrysError("elements of different groups")
    L = e1.group.lattice
    gx = act(L, e2.g, e1.x)
    return CrysElement(e1.group, e1.g * e2.g, tuple(a + b for a, b in zip(gx, e2.x)))


def power(e: CrysElement, k: int) -> CrysElement:
    """``(g, x)^k = (g^k, (1 + g + ... + g^(k-1)) x)`` for ``k >= 0``."""
    if k < 0:
        raise CrysError("negative powers are not needed here")
    L = e.group.lattice
    y = el.matvec(L.partial_norm(e.g, k), e.x)
    return CrysElement(e.group, e.g ** k, tuple(y))


def order_of(e: CrysElement) -> Optional[int]:
    """Order of ``e``, or ``None`` when it is infinite."""
    n = e.g.order
    return n if power(e, n).is_identity else None


# ---------------------------------------------------------------------------
# torsion


@dataclass
class SubgroupEvidence:
    generator: GroupElement
    vanishes: bool
    restricted_class: Optional[tuple[int, ...]] = None
    witness: Optional[CrysElement] = None
    witness_order: Optional[int] = None

    def to_dict(self) -> dict:
        d = {"generator": str(self.generator), "restricted_class_vanishes": self.vanishes}
        if self.restricted_class is not None:
            d["restricted_class"] = list(self.restricted_class)
        if self.witness is not None:
            d["witness"] = {"g": str(self.witness.g),
                            "x": [_q(c) for c in self.witness.x],
                            "order": self.witness_order}
        return d


@dataclass
class TorsionCertificate:
    verdict: str
    subgroups: list[SubgroupEvidence]

    @property
    def torsion_free(self) -> bool:
        return self.verdict == "torsion_free"

    def witnesses(self) -> list[CrysElement]:
        return [s.witness for s in self.subgroups if s.witness is not None]

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "subgroups": [s.to_dict() for s in self.subgroups]}


def _q(c: Fraction) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def is_torsion_free(C: CrysGroup, with_classes: bool = True) -> TorsionCertificate:
    """Check the restriction of the class to every subgroup of prime order."""
    T = C.cocycle
    G = C.lattice.group
    out = []
    for h in G.prime_order_subgroups():
        R = restrict_cocycle(T, h)
        ok, x = is_coboundary(R)
        if ok:
            hx = [a - b for a, b in zip(act(C.lattice, h, x), x)]
            w = C.element(h, hx)
            out.append(SubgroupEvidence(h, True, witness=w, witness_order=order_of(w)))
        else:
            cls = h1_cached(R.lattice).class_of(R) if with_classes else None
            out.append(SubgroupEvidence(h, False, restricted_class=cls))
    verdict = "has_torsion" if any(s.vanishes for s in out) else "torsion_free"
    return TorsionCertificate(verdict, out)


_H1_CACHE: dict[int, tuple[GLattice, CohomologyResult]] = {}


def h1_cached(L: GLattice) -> CohomologyResult:
    hit = _H1_CACHE.get(id(L))
    if hit is None or hit[0] is not L:
        hit = (L, h1(L))
        _H1_CACHE[id(L)] = hit
    return hit[1]


# ---------------------------------------------------------------------------
# isomorphism


@dataclass
class InducedMap:
    """A pair (eps, tau) of a group automorphism and a unit intertwiner."""
    eps: GroupAutomorphism
    tau: Matrix
    det: int
    matrix: tuple[tuple[int, ...], ...]   # images of the H^1 generators (source -> target)

    @property
    def integral_unit(self) -> bool:
        return abs(self.det) == 1


@dataclass
class IsoWitness:
    eps: GroupAutomorphism
    tau: Matrix
    det: int

    @property
    def level(self) -> str:
        return "Z" if abs(self.det) == 1 else "Z_(p)"


def unit_maps(L1: GLattice, L2: GLattice, samples: int = 48, seed: int = 0,
              budget: int = 2 ** 12) -> Iterator[InducedMap]:
    """Unit intertwiners ``L1 -> L2`` (twisted by each automorphism) and their maps on H^1.

    Coefficients over the intertwiner basis are taken modulo the group order:
    exhaustively when that is at most ``budget`` combinations, else ``samples``
    seeded random draws.  Only combinations with determinant prime to p are kept.
    Maps are produced lazily, automorphism by automorphism.
    """
    G = L1.group
    p, n = G.p, G.order
    H1, H2 = h1_cached(L1), h1_cached(L2)
    rng = random.Random(seed)
    for eps in automorphisms(G):
        basis = intertwiner_lattice(L1, L2, eps)
        r = len(basis)
        if r == 0 or L1.rank != L2.rank:
            continue
        if n ** r <= budget:
            coeffs = itertools.product(range(n), repeat=r)
        else:
            coeffs = ([int(i == k) for i in range(r)] for k in range(r))
            coeffs = itertools.chain(coeffs, ([rng.randrange(n) for _ in range(r)]
                                              for _ in range(samples)))
        seen = set()
        for c in coeffs:
            tau = combine(basis, c)
            if el.det_mod(tau, p) == 0:
                continue
            images = tuple(H2.class_of(push_cocycle(R, eps, tau, L2)) for R in H1.representatives)
            if images in seen:
                continue
            seen.add(images)
            yield InducedMap(eps, tau, el.det(tau), images)


def _apply(m: InducedMap, coords: Sequence[int], target: CohomologyResult) -> tuple[int, ...]:
    mods = target.group_structure.invariant_factors
    acc = [0] * len(mods)
    for c, img in zip(coords, m.matrix):
        for k, v in enumerate(img):
            acc[k] += c * v
    return tuple(a % q for a, q in zip(acc, mods))


def isomorphic(C1: CrysGroup, C2: CrysGroup, samples: int = 48,
               seed: int = 0) -> Optional[IsoWitness]:
    """A pair (eps, tau) carrying the class of C1 to the class of C2, or ``None``."""
    L1, L2 = C1.lattice, C2.lattice
    if L1.group != L2.group:
        raise CrysError("only groups with the same holonomy are compared")
    if L1.rank != L2.rank:
        return None
    H1, H2 = h1_cached(L1), h1_cached(L2)
    src = H1.class_of(C1.cocycle)
    dst = H2.class_of(C2.cocycle)
    for m in unit_maps(L1, L2, samples, seed):
        if _apply(m, src, H2) == dst:
            return IsoWitness(m.eps, m.tau, m.det)
    return None


@dataclass
class ClassReport:
    lattice: str
    h1_structure: tuple[int, ...]
    h1_order: int
    torsion_free_classes: list[tuple[int, ...]]
    orbits: list[list[tuple[int, ...]]]
    certificate_level: str

    @property
    def torsion_free_count(self) -> int:
        return len(self.torsion_free_classes)

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)

    def to_dict(self) -> dict:
        return {"lattice": self.lattice, "h1": list(self.h1_structure), "h1_order": self.h1_order,
                "torsion_free_class_count": self.torsion_free_count,
                "iso_class_count": self.orbit_count,
                "representatives": [list(o[0]) for o in self.orbits],
                "iso_orbits": [[list(c) for c in o] for o in self.orbits],
                "certificate_level": self.certificate_level}


def torsion_free_classes(L: GLattice, budget: int = 2 ** 12) -> list[tuple[int, ...]]:
    H = h1_cached(L)
    if H.order > budget:
        raise BudgetExceeded(f"|H^1| = {H.order} exceeds budget {budget}")
    out = []
    for c in H.classes():
        if is_torsion_free(CrysGroup(L, H.cocycle(c)), with_classes=False).torsion_free:
            out.append(tuple(c))
    return out


def classify(L: GLattice, budget: int = 2 ** 12, samples: int = 48,
             seed: int = 0) -> ClassReport:
    """Torsion-free classes of H^1(G, FL/L) and their isomorphism orbits."""
    H = h1_cached(L)
    free = torsion_free_classes(L, budget)
    parent = {c: c for c in free}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    level = "Z"
    if len(free) > 1:
        used_local = False
        components = len(free)
        for m in unit_maps(L, L, samples, seed):
            for c in free:
                img = _apply(m, c, H)
                if img not in parent:  # pragma: no cover - units preserve torsion-freeness
                    raise CrysError("unit map left the torsion-free set")
                a, b = find(c), find(img)
                if a != b:
                    parent[max(a, b)] = min(a, b)
                    components -= 1
                    used_local = used_local or not m.integral_unit
            if components == 1:
                break
        if used_local:
            level = "Z_(p)"
    orbits: dict = {}
    for c in free:
        orbits.setdefault(find(c), []).append(c)
    return ClassReport(L.name, H.group_structure.invariant_factors, H.order, free,
                       [sorted(v) for _, v in sorted(orbits.items())], level)
