"""The finite p-groups C_{p^s} and C_p x C_p, their automorphisms and group rings."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class PGroup:
    """``kind='cyclic'``: <a | a^(p^s)>;  ``kind='klein'``: <a, b | a^p, b^p, [a,b]>."""

    kind: str
    p: int
    s: int = 1

    def __post_init__(self):
        if self.kind not in ("cyclic", "klein"):
            raise GroupError(f"unknown group kind {self.kind!r}")
        if not is_prime(self.p):
            raise GroupError(f"{self.p} is not prime")
        if self.kind == "cyclic" and self.s < 1:
            raise GroupError("cyclic groups need s >= 1")
        if self.kind == "klein" and self.s != 1:
            raise GroupError("klein groups have s = 1")

    @classmethod
    def cyclic(cls, p: int, s: int = 1) -> "PGroup":
        return cls("cyclic", p, s)

    @classmethod
    def klein(cls, p: int) -> "PGroup":
        return cls("klein", p, 1)

    @property
    def order(self) -> int:
        return self.p ** self.s if self.kind == "cyclic" else self.p ** 2

    @property
    def exponent(self) -> int:
        return self.p ** self.s if self.kind == "cyclic" else self.p

    @property
    def moduli(self) -> tuple[int, ...]:
        return (self.p ** self.s,) if self.kind == "cyclic" else (self.p, self.p)

    @property
    def ngens(self) -> int:
        return len(self.moduli)

    def descriptor(self) -> str:
        if self.kind == "cyclic":
            return f"Cyclic(p={self.p},s={self.s})"
        return f"Klein(p={self.p})"

    def __str__(self):
        return self.descriptor()

    # elements --------------------------------------------------------------

    def element(self, *exps: int) -> "GroupElement":
        if len(exps) != self.ngens:
            raise GroupError(f"{self} elements need {self.ngens} exponents")
        return GroupElement(self, tuple(e % m for e, m in zip(exps, self.moduli)))

    @property
    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.ngens)

    @property
    def generators(self) -> tuple["GroupElement", ...]:
        return tuple(GroupElement(self, tuple(int(i == k) for i in range(self.ngens)))
                     for k in range(self.ngens))

    def elements(self) -> Iterator["GroupElement"]:
        """All elements in lexicographic exponent order."""
        for exps in itertools.product(*(range(m) for m in self.moduli)):
            yield GroupElement(self, exps)

    def index(self, g: "GroupElement") -> int:
        idx = 0
        for e, m in zip(g.exps, self.moduli):
            idx = idx * m + e
        return idx

    def prime_order_subgroups(self) -> list["GroupElement"]:
        """One generator for each subgroup of order p."""
        if self.kind == "cyclic":
            return [self.element(self.p ** (self.s - 1))]
        p = self.p
        return [self.element(1, 0)] + [self.element(i, 1) for i in range(p)]

    @cached_property
    def _automorphisms(self) -> tuple["GroupAutomorphism", ...]:
        out = []
        if self.kind == "cyclic":
            n = self.order
            for t in range(1, n):
                if t % self.p:
                    out.append(GroupAutomorphism(self, (self.element(t),)))
        else:
            p = self.p
            for a0, a1, b0, b1 in itertools.product(range(p), repeat=4):
                if (a0 * b1 - a1 * b0) % p:
                    out.append(GroupAutomorphism(self, (self.element(a0, a1),
                                                        self.element(b0, b1))))
            out.sort(key=lambda eps: not eps.is_identity)
        return tuple(out)


def parse_group(text: str) -> PGroup:
    m = re.fullmatch(r"\s*Cyclic\(\s*p\s*=\s*(\d+)\s*,\s*s\s*=\s*(\d+)\s*\)\s*", text)
    if m:
        return PGroup.cyclic(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"\s*Klein\(\s*p\s*=\s*(\d+)\s*\)\s*", text)
    if m:
        return PGroup.klein(int(m.group(1)))
    raise GroupError(f"cannot parse group descriptor {text!r}")


@dataclass(frozen=True)
class GroupElement:
    group: PGroup
    exps: tuple[int, ...]

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply_elements(self, other)

    def __pow__(self, k: int) -> "GroupElement":
        return self.group.element(*(e * k for e in self.exps))

    def inverse(self) -> "GroupElement":
        return self ** -1

    @property
    def is_identity(self) -> bool:
        return not any(self.exps)

    @property
    def order(self) -> int:
        n = 1
        g = self
        while not g.is_identity:
            g = g * self
            n += 1
        return n

    def __str__(self):
        if self.is_identity:
            return "1"
        names = "ab"
        parts = []
        for name, e in zip(names, self.exps):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "".join(parts)


def multiply_elements(g: GroupElement, h: GroupElement) -> GroupElement:
    if g.group != h.group:
        raise GroupError("elements belong to different groups")
    return g.group.element(*(x + y for x, y in zip(g.exps, h.exps)))


@dataclass(frozen=True)
class GroupAutomorphism:
    """Determined by the images of the standard generators."""

    group: PGroup
    images: tuple[GroupElement, ...]

    def __post_init__(self):
        G = self.group
        if len(self.images) != G.ngens or any(im.group != G for im in self.images):
            raise GroupError("images must be elements of the group, one per generator")
        if G.kind == "cyclic":
            if self.images[0].exps[0] % G.p == 0:
                raise GroupError("cyclic automorphism must send a to a generator")
        else:
            (a0, a1), (b0, b1) = self.images[0].exps, self.images[1].exps
            if (a0 * b1 - a1 * b0) % G.p == 0:
                raise GroupError("images do not generate the group")

    def __call__(self, g: GroupElement) -> GroupElement:
        out = self.group.identity
        for e, im in zip(g.exps, self.images):
            out = out * im ** e
        return out

    def compose(self, other: "GroupAutomorphism") -> "GroupAutomorphism":
        """``self ∘ other``."""
        return GroupAutomorphism(self.group, tuple(self(im) for im in other.images))

    def inverse(self) -> "GroupAutomorphism":
        for cand in automorphisms(self.group):
            if self.compose(cand).is_identity:
                return cand
        raise GroupError("no inverse found")  # pragma: no cover

    @property
    def is_identity(self) -> bool:
        return self.images == self.group.generators

    def __str__(self):
        names = "ab"
        return ", ".join(f"{n}->{im}" for n, im in zip(names, self.images))


def automorphisms(G: PGroup) -> list[GroupAutomorphism]:
    """All automorphisms, identity first."""
    return list(G._automorphisms)


def identity_automorphism(G: PGroup) -> GroupAutomorphism:
    return GroupAutomorphism(G, G.generators)


# ---------------------------------------------------------------------------
# integral group ring


@dataclass(frozen=True)
class GroupRingElement:
    group: PGroup
    coeffs: tuple[int, ...]

    @classmethod
    def zero(cls, G: PGroup) -> "GroupRingElement":
        return cls(G, (0,) * G.order)

    @classmethod
    def of(cls, g: GroupElement, c: int = 1) -> "GroupRingElement":
        G = g.group
        co = [0] * G.order
        co[G.index(g)] = c
        return cls(G, tuple(co))

    @classmethod
    def scalar(cls, G: PGroup, c: int) -> "GroupRingElement":
        return cls.of(G.identity, c)

    def _check(self, other):
        if isinstance(other, int):
            return GroupRingElement.scalar(self.group, other)
        if other.group != self.group:
            raise GroupError("group ring elements over different groups")
        return other

    def __add__(self, other):
        other = self._check(other)
        return GroupRingElement(self.group, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement(self.group, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(self.group, tuple(other * x for x in self.coeffs))
        other = self._check(other)
        G = self.group
        elems = list(G.elements())
        out = [0] * G.order
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        out[G.index(elems[i] * elems[j])] += x * y
        return GroupRingElement(G, tuple(out))

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        out = GroupRingElement.scalar(self.group, 1)
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self):
        return any(self.coeffs)

    def support(self) -> dict[GroupElement, int]:
        return {g: c for g, c in zip(self.group.elements(), self.coeffs) if c}

    def map(self, eps: GroupAutomorphism) -> "GroupRingElement":
        """Apply a group automorphism linearly."""
        G = self.group
        out = [0] * G.order
        for g, c in zip(G.elements(), self.coeffs):
            if c:
                out[G.index(eps(g))] += c
        return GroupRingElement(G, tuple(out))

    def __str__(self):
        terms = []
        for g, c in self.support().items():
            name = str(g)
            if name == "1":
                terms.append(str(c))
            elif c == 1:
                terms.append(name)
            elif c == -1:
                terms.append("-" + name)
            else:
                terms.append(f"{c}{name}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def phi_element(G: PGroup, base: GroupElement) -> GroupRingElement:
    """``1 + base + ... + base^(p-1)``."""
    if base.is_identity:
        raise GroupError("Phi needs a nontrivial base element")
    out = GroupRingElement.zero(G)
    for k in range(G.p):
        out = out + GroupRingElement.of(base ** k)
    return out


def norm_element(G: PGroup, g: GroupElement) -> GroupRingElement:
    out = GroupRingElement.zero(G)
    for k in range(g.order):
        out = out + GroupRingElement.of(g ** k)
    return out


def regular_action(G: PGroup, g: GroupElement) -> list[list[int]]:
    """Permutation matrix of left multiplication by ``g`` on ``ZG`` (columns = images)."""
    n = G.order
    M = [[0] * n for _ in range(n)]
    for j, h in enumerate(G.elements()):
        M[G.index(g * h)][j] = 1
    return M
