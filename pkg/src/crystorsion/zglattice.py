"""ZG-lattices: integral representations of the groups in :mod:`groupcore`.

Action matrices act on column coordinate vectors: column ``j`` of ``action[g]``
holds the coordinates of ``g`` applied to basis vector ``j``.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from . import exactlin as el
from .exactlin import Matrix
from .groupcore import (GroupAutomorphism, GroupElement, PGroup, identity_automorphism,
                        parse_group, regular_action)


class LatticeConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class Ambient:
    """Embedding of a sublattice: rows of ``basis`` are ambient vectors."""

    rank: int
    basis: tuple[tuple[int, ...], ...]
    actions: tuple[tuple[tuple[int, ...], ...], ...]


def _freeze(M: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in M)


@dataclass(frozen=True, eq=False)
class GLattice:
    group: PGroup
    actions: tuple[tuple[tuple[int, ...], ...], ...]
    ambient: Optional[Ambient] = None
    name: str = ""
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "actions", tuple(_freeze(A) for A in self.actions))
        if len(self.actions) != self.group.ngens:
            raise LatticeConstructionError("one action matrix per group generator is required")
        m = self.rank
        for A in self.actions:
            if len(A) != m or any(len(r) != m for r in A):
                raise LatticeConstructionError("action matrices must be square of equal size")
        if self.check:
            self.validate()

    @property
    def rank(self) -> int:
        return len(self.actions[0])

    def matrix(self, k: int) -> Matrix:
        return [list(r) for r in self.actions[k]]

    def validate(self) -> None:
        G = self.group
        m = self.rank
        I = el.identity(m)
        mats = [self.matrix(k) for k in range(G.ngens)]
        for A, order in zip(mats, G.moduli):
            if abs(el.det(A)) != 1:
                raise LatticeConstructionError("action matrix is not unimodular")
            if el.matpow(A, order) != I:
                raise LatticeConstructionError(f"generator relation A^{order} = I fails")
        if G.kind == "klein" and el.matmul(mats[0], mats[1]) != el.matmul(mats[1], mats[0]):
            raise LatticeConstructionError("generators do not commute")

    @cached_property
    def _element_mats(self) -> dict:
        G = self.group
        mats = [self.matrix(k) for k in range(G.ngens)]
        powers = []
        for A, q in zip(mats, G.moduli):
            seq = [el.identity(self.rank)]
            for _ in range(q - 1):
                seq.append(el.matmul(seq[-1], A))
            powers.append(seq)
        out = {}
        for g in G.elements():
            M = powers[0][g.exps[0]]
            for seq, e in zip(powers[1:], g.exps[1:]):
                if e:
                    M = el.matmul(M, seq[e])
            out[g.exps] = M
        return out

    def action_of(self, g: GroupElement) -> Matrix:
        if g.group != self.group:
            raise LatticeConstructionError("element of a different group")
        return [list(r) for r in self._element_mats[g.exps]]

    def norm_matrix(self, g: GroupElement) -> Matrix:
        return self.partial_norm(g, g.order)

    def partial_norm(self, g: GroupElement, k: int) -> Matrix:
        """``1 + g + ... + g^(k-1)`` as a matrix."""
        m = self.rank
        N = np.zeros((m, m), dtype=object)
        for t in range(k):
            N += np.array(self._element_mats[(g ** t).exps], dtype=object)
        return [[int(x) for x in row] for row in N.tolist()]

    def to_dict(self) -> dict:
        return {"group": self.group.descriptor(), "name": self.name, "rank": self.rank,
                "action": [[list(r) for r in A] for A in self.actions]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "GLattice":
        return cls(parse_group(d["group"]), tuple(_freeze(A) for A in d["action"]),
                   name=d.get("name", ""))

    def with_name(self, name: str) -> "GLattice":
        return GLattice(self.group, self.actions, self.ambient, name, check=False)

    def __repr__(self):
        return f"GLattice({self.name or '?'}, {self.group}, rank={self.rank})"


# ---------------------------------------------------------------------------
# constructors


def free_module(G: PGroup, copies: int = 1) -> GLattice:
    """``(ZG)^copies`` with basis ordered by (copy, element)."""
    n = G.order
    mats = []
    for g in G.generators:
        R = regular_action(G, g)
        M = el.zeros(n * copies, n * copies)
        for c in range(copies):
            for i in range(n):
                M[c * n + i][c * n:(c + 1) * n] = R[i]
        mats.append(M)
    name = "ZG" if copies == 1 else f"(ZG)^{copies}"
    return GLattice(G, tuple(_freeze(M) for M in mats), name=name, check=False)


def trivial_lattice(G: PGroup, rank: int = 1) -> GLattice:
    I = el.identity(rank)
    return GLattice(G, tuple(_freeze(I) for _ in range(G.ngens)), name=f"Z^{rank}")


def direct_sum(*lattices: GLattice) -> GLattice:
    G = lattices[0].group
    sizes = [L.rank for L in lattices]
    mats = []
    for k in range(G.ngens):
        blocks = [[L.matrix(k) if i == j else None for j, L in enumerate(lattices)]
                  for i in range(len(lattices))]
        mats.append(el.block_matrix(blocks, sizes, sizes))
    return GLattice(G, tuple(_freeze(M) for M in mats),
                    name=" + ".join(L.name or "?" for L in lattices), check=False)


def conjugate(L: GLattice, P: Matrix) -> GLattice:
    """Same module in the basis given by the columns of the unimodular ``P``."""
    Pinv = el._inverse_unimodular(P)
    mats = [el.matmul(el.matmul(Pinv, L.matrix(k)), P) for k in range(L.group.ngens)]
    return GLattice(L.group, tuple(_freeze(M) for M in mats), name=L.name)


def sublattice_span(ambient: GLattice, generators: Sequence[Sequence[int]],
                    name: str = "") -> GLattice:
    """The ZG-submodule generated by ``generators`` (ambient coordinate vectors)."""
    G = ambient.group
    N = ambient.rank
    orbit = []
    for g in G.elements():
        A = ambient.action_of(g)
        for v in generators:
            if len(v) != N:
                raise LatticeConstructionError("generator has the wrong ambient length")
            orbit.append(el.matvec(A, v))
    basis = el.hnf_basis(orbit, N)
    return lattice_from_basis(ambient, basis, name)


def lattice_from_basis(ambient: GLattice, basis: Sequence[Sequence[int]],
                       name: str = "") -> GLattice:
    """Induced action on the lattice with the given Z-basis (must be G-stable)."""
    G = ambient.group
    m = len(basis)
    if el.rank([list(b) for b in basis]) != m:
        raise LatticeConstructionError("basis vectors are dependent")
    H, U = el.hermite_normal_form([list(b) for b in basis])
    Hrows = H[:m]
    mats = []
    for k in range(G.ngens):
        A = ambient.matrix(k)
        M = el.zeros(m, m)
        for j, b in enumerate(basis):
            img = el.matvec(A, b)
            y = el.lattice_coordinates(Hrows, img)
            if y is None or any(not isinstance(c, int) for c in y):
                raise LatticeConstructionError("span is not stable under the group action")
            coords = el.vecmat(y, U[:m])
            for i in range(m):
                M[i][j] = coords[i]
        mats.append(M)
    amb = Ambient(ambient.rank, _freeze(basis), ambient.actions)
    return GLattice(G, tuple(_freeze(M) for M in mats), amb, name)


def ambient_coordinates(L: GLattice, v: Sequence) -> Optional[list]:
    """Coordinates of an ambient vector in ``L``'s basis (rational), or ``None``."""
    if L.ambient is None:
        raise LatticeConstructionError("lattice has no ambient embedding")
    B = [list(r) for r in L.ambient.basis]
    H, U = el.hermite_normal_form(B)
    y = el.lattice_coordinates(H[:len(B)], v)
    if y is None:
        return None
    return el.vecmat(y, U[:len(B)])


def to_ambient(L: GLattice, coords: Sequence) -> list:
    return el.vecmat(list(coords), [list(r) for r in L.ambient.basis])


# ---------------------------------------------------------------------------
# derived lattices


def restriction(L: GLattice, h: GroupElement) -> GLattice:
    """Restrict to the cyclic subgroup <h>, viewed as C_{ord h} with generator h."""
    if h.is_identity:
        raise LatticeConstructionError("cannot restrict to the trivial subgroup")
    order = h.order
    p = L.group.p
    s = 0
    while p ** s < order:
        s += 1
    H = PGroup.cyclic(p, s)
    return GLattice(H, (_freeze(L.action_of(h)),), name=f"{L.name}|<{h}>", check=False)


def contragredient(L: GLattice) -> GLattice:
    mats = []
    for g in L.group.generators:
        mats.append(el.transpose(L.action_of(g.inverse())))
    return GLattice(L.group, tuple(_freeze(M) for M in mats), name=f"{L.name}*", check=False)


def twist(L: GLattice, eps: GroupAutomorphism) -> GLattice:
    if eps.group != L.group:
        raise LatticeConstructionError("automorphism of a different group")
    mats = [L.action_of(eps(g)) for g in L.group.generators]
    return GLattice(L.group, tuple(_freeze(M) for M in mats), name=f"{L.name}^eps", check=False)


# ---------------------------------------------------------------------------
# homomorphisms


def intertwiner_lattice(L1: GLattice, L2: GLattice,
                        eps: Optional[GroupAutomorphism] = None) -> list[Matrix]:
    """Saturated Z-basis of ``{tau : L2(eps(g)) tau = tau L1(g)}`` (``tau`` is rank2 x rank1)."""
    if L1.group != L2.group:
        raise LatticeConstructionError("lattices over different groups")
    if eps is None:
        eps = identity_automorphism(L1.group)
    m1, m2 = L1.rank, L2.rank
    rows = []
    for g in L1.group.generators:
        A = L1.action_of(g)
        B = L2.action_of(eps(g))
        # (B tau - tau A)[i][j] = sum_k B[i][k] tau[k][j] - tau[i][k] A[k][j]
        for i in range(m2):
            for j in range(m1):
                r = {}
                for k in range(m2):
                    if B[i][k]:
                        idx = k * m1 + j
                        r[idx] = r.get(idx, 0) + B[i][k]
                for k in range(m1):
                    if A[k][j]:
                        idx = i * m1 + k
                        r[idx] = r.get(idx, 0) - A[k][j]
                if any(r.values()):
                    row = [0] * (m1 * m2)
                    for idx, v in r.items():
                        row[idx] = v
                    rows.append(row)
    K = el.kernel_lattice(rows, m1 * m2)
    return [[list(v[i * m1:(i + 1) * m1]) for i in range(m2)] for v in K]


def endomorphism_ring(L: GLattice) -> list[Matrix]:
    return intertwiner_lattice(L, L)


@dataclass
class Indecomposability:
    verdict: str                      # "yes" | "no" | "unknown"
    algebra_dim: int
    idempotent: Optional[Matrix] = None      # mod p, entries in [0, p)
    lifted: Optional[Matrix] = None          # idempotent modulo ``lift_modulus``
    lift_modulus: Optional[int] = None

    def __str__(self):
        if self.verdict == "yes":
            return "indecomposable over Z_(p) (hence over Z)"
        if self.verdict == "no":
            return "decomposable over Z_p (idempotent found)"
        return "unknown (search budget exceeded)"


def _stack_mod(basis: Sequence[Matrix], p: int) -> np.ndarray:
    return np.array([[[x % p for x in row] for row in E] for E in basis], dtype=np.int64)


def is_indecomposable(L: GLattice, budget: int = 2 ** 20, chunk: int = 4096) -> Indecomposability:
    """Search ``End(L) ⊗ F_p`` exhaustively for a nontrivial idempotent."""
    p = L.group.p
    basis = endomorphism_ring(L)
    d = len(basis)
    m = L.rank
    if p ** d > budget:
        return Indecomposability("unknown", d)
    E = _stack_mod(basis, p)
    I = np.eye(m, dtype=np.int64)
    combos = itertools.product(range(p), repeat=d)
    while True:
        block = np.array(list(itertools.islice(combos, chunk)), dtype=np.int64)
        if block.size == 0:
            break
        e = np.tensordot(block, E, axes=(1, 0)) % p
        e2 = np.matmul(e, e) % p
        idem = np.all(e2 == e, axis=(1, 2))
        nonzero = np.any(e != 0, axis=(1, 2))
        notone = np.any(e != I, axis=(1, 2))
        hits = np.nonzero(idem & nonzero & notone)[0]
        if hits.size:
            c = block[hits[0]]
            e_int = [[0] * m for _ in range(m)]
            for ci, B in zip(c.tolist(), basis):
                if ci:
                    for i in range(m):
                        for j in range(m):
                            e_int[i][j] += ci * B[i][j]
            lifted, mod = _lift_idempotent(e_int, p)
            emod = [[x % p for x in row] for row in e_int]
            return Indecomposability("no", d, emod, lifted, mod)
    return Indecomposability("yes", d)


def _lift_idempotent(e: Matrix, p: int, steps: int = 3) -> tuple[Matrix, int]:
    """Newton lifting ``e <- 3e^2 - 2e^3``; doubles the p-adic precision per step."""
    mod = p
    for _ in range(steps):
        mod = mod * mod
        e2 = el.matmul(e, e)
        e3 = el.matmul(e2, e)
        e = [[(3 * a - 2 * b) % mod for a, b in zip(r2, r3)] for r2, r3 in zip(e2, e3)]
    return e, mod


def cp_decomposition_multiplicities(L: GLattice) -> tuple[int, int, int]:
    """Multiplicities (trivial, cyclotomic, regular) of a C_p-lattice over Z_(p)."""
    G = L.group
    if G.kind != "cyclic" or G.s != 1:
        raise LatticeConstructionError("decomposition multiplicities need a C_p-lattice")
    p = G.p
    m = L.rank
    A = L.matrix(0)
    Am1 = [[A[i][j] - int(i == j) for j in range(m)] for i in range(m)]
    N = L.norm_matrix(G.generators[0])
    fixed = el.integer_kernel(Am1, m)
    norms = el.hnf_basis(el.transpose(N), m)
    h0 = el.finite_quotient(fixed, norms)
    kerN = el.integer_kernel(N, m)
    im = el.hnf_basis(el.transpose(Am1), m)
    h1 = el.finite_quotient(kerN, im)
    for grp in (h0, h1):
        if any(d != p for d in grp.invariant_factors):
            raise ArithmeticError("Tate cohomology of a C_p-lattice must be elementary abelian")
    a = len(h0.invariant_factors)
    b = len(h1.invariant_factors)
    rest = m - a - (p - 1) * b
    if rest < 0 or rest % p:
        raise ArithmeticError(f"non-integral regular multiplicity for rank {m}, a={a}, b={b}")
    return a, b, rest // p


@dataclass
class UnitSearch:
    tau: Optional[Matrix]
    det: Optional[int] = None
    z_unimodular: Optional[Matrix] = None
    exhaustive: bool = False


def combine(basis: Sequence[Matrix], coeffs: Sequence[int]) -> Matrix:
    rows = len(basis[0])
    cols = len(basis[0][0]) if rows else 0
    out = el.zeros(rows, cols)
    for c, B in zip(coeffs, basis):
        if c:
            for i in range(rows):
                Bi, Oi = B[i], out[i]
                for j in range(cols):
                    if Bi[j]:
                        Oi[j] += c * Bi[j]
    return out


def _det_mod_batch(mats: np.ndarray, p: int) -> np.ndarray:
    """Determinants mod p of a stack of square integer matrices (entries < p)."""
    M = mats.copy() % p
    n = M.shape[-1]
    count = M.shape[0]
    d = np.ones(count, dtype=np.int64)
    inv = np.array([0] + [pow(x, -1, p) for x in range(1, p)], dtype=np.int64)
    rows = np.arange(count)
    for k in range(n):
        col = M[:, k:, k]
        has = col != 0
        piv_rel = np.argmax(has, axis=1)
        ok = has[rows, piv_rel]
        d = np.where(ok, d, 0)
        piv = piv_rel + k
        # swap rows k and piv
        swap = piv != k
        if np.any(swap):
            rk = M[rows, k, :].copy()
            rp = M[rows, piv, :].copy()
            M[rows, k, :] = rp
            M[rows, piv, :] = rk
            d = np.where(swap, (-d) % p, d)
        pv = M[:, k, k]
        d = (d * pv) % p
        f = (M[:, k + 1:, k] * inv[pv][:, None]) % p
        M[:, k + 1:, :] = (M[:, k + 1:, :] - f[:, :, None] * M[:, k:k + 1, :]) % p
    return d % p


def find_unit_intertwiner(basis: Sequence[Matrix], p: int, budget: int = 2 ** 16,
                          trials: int = 256, seed: int = 0) -> UnitSearch:
    """F_p-combination of ``basis`` with determinant prime to ``p``.

    Single basis elements are tried first; then all combinations when
    ``p^len(basis) <= budget``, otherwise ``trials`` seeded random combinations.
    A Z-unimodular combination with coefficients in {-1, 0, 1} is reported
    separately when one is met along the way.
    """
    r = len(basis)
    if r == 0 or not basis[0] or len(basis[0]) != len(basis[0][0]):
        return UnitSearch(None)
    for k, B in enumerate(basis):
        dm = el.det_mod(B, p)
        if dm:
            dz = el.det(B)
            return UnitSearch([row[:] for row in B], dz, B if abs(dz) == 1 else None)
    exhaustive = p ** r <= budget
    if exhaustive:
        candidates = itertools.product(range(p), repeat=r)
    else:
        rng = random.Random(seed)
        candidates = ([rng.randrange(p) for _ in range(r)] for _ in range(trials))
    for c in candidates:
        tau = combine(basis, c)
        if el.det_mod(tau, p):
            dz = el.det(tau)
            return UnitSearch(tau, dz, tau if abs(dz) == 1 else None, exhaustive)
    return UnitSearch(None, exhaustive=exhaustive)


def rebase(L: GLattice, vectors: Sequence[Sequence[int]], name: Optional[str] = None) -> GLattice:
    """``L`` re-expressed in another Z-basis of the same ambient sublattice."""
    B = [list(v) for v in vectors]
    own = el.hnf_basis([list(r) for r in L.ambient.basis])
    if len(B) != L.rank or el.hnf_basis(B) != own:
        raise LatticeConstructionError("vectors are not a basis of the lattice")
    amb = GLattice(L.group, L.ambient.actions, check=False)
    return lattice_from_basis(amb, B, L.name if name is None else name)


def basis_matrix_in(L: GLattice, vectors: Sequence[Sequence[int]]) -> Optional[list[Matrix]]:
    """Action matrices of ``L`` in the basis ``vectors`` (ambient coordinates).

    Returns ``None`` unless ``vectors`` is a Z-basis of ``L``.
    """
    B = [list(v) for v in vectors]
    if len(B) != L.rank:
        return None
    own = el.hnf_basis([list(r) for r in L.ambient.basis])
    if el.hnf_basis(B) != own:
        return None
    amb = GLattice(L.group, L.ambient.actions, check=False)
    return [sub.matrix(k) for sub in [lattice_from_basis(amb, B)] for k in range(L.group.ngens)]
