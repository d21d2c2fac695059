"""Constructors for the lattice and cocycle families, plus a descriptor parser.

Cyclic-group modules that have a description by generating words are built as
spans inside free group-ring modules; the Klein-group families are assembled
from block matrices.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from . import exactlin as el
from .cohomology import Cocycle, validate_cocycle
from .exactlin import Matrix
from .groupcore import GroupRingElement, PGroup, is_prime, phi_element
from .zglattice import (GLattice, LatticeConstructionError, _freeze, ambient_coordinates,
                        basis_matrix_in, contragredient, free_module, rebase,
                        sublattice_span)


class CatalogError(ValueError):
    pass


class DescriptorError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    descriptor: str
    lattice: GLattice
    cocycles: dict = field(default_factory=dict)
    provenance: str = ""

    def validate(self) -> None:
        self.lattice.validate()
        for name, T in self.cocycles.items():
            if not validate_cocycle(T):
                raise CatalogError(f"cocycle {name} of {self.descriptor} is invalid")

    def to_dict(self) -> dict:
        return {"descriptor": self.descriptor, "provenance": self.provenance,
                "lattice": self.lattice.to_dict(),
                "cocycles": {k: [[str(c) for c in v] for v in T.values]
                             for k, T in self.cocycles.items()}}


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise CatalogError(f"{p} is not prime")


# ---------------------------------------------------------------------------
# irreducible pieces delta_t and small block helpers


def delta_basis_exponents(p: int, t: int) -> list[int]:
    """Exponents e of the ordered basis xi_t^e built by the recursion B_j = U_i xi_j^i B_{j-1}."""
    if t == 0:
        return [0]
    order = list(range(p - 1))
    for _ in range(2, t + 1):
        order = [i + p * e for i in range(p) for e in order]
    return order


def delta_matrix(p: int, t: int) -> Matrix:
    """Multiplication by a primitive p^t-th root of unity in the ordered basis."""
    if t == 0:
        return [[1]]
    exps = delta_basis_exponents(p, t)
    pos = {e: k for k, e in enumerate(exps)}
    deg = len(exps)
    step = p ** (t - 1)
    M = el.zeros(deg, deg)
    for j, e in enumerate(exps):
        nxt = e + 1
        if nxt < deg:
            M[pos[nxt]][j] = 1
        else:
            # xi^((p-1) p^(t-1)) = -(1 + xi^step + ... + xi^((p-2) step))
            for k in range(p - 1):
                M[pos[k * step]][j] -= 1
    return M


def delta_t(p: int, s: int, t: int) -> GLattice:
    _check_prime(p)
    if not 0 <= t <= s:
        raise CatalogError(f"need 0 <= t <= s, got t={t}, s={s}")
    A = delta_matrix(p, t)
    return GLattice(PGroup.cyclic(p, s), (_freeze(A),), name=f"delta_{t}")


def column_block(coords: Sequence[int], ncols: int) -> Matrix:
    """Zero matrix except the last column, which is ``coords``."""
    return [[0] * (ncols - 1) + [c] for c in coords]


def alpha_coords(p: int, i: int) -> list[int]:
    """Coordinates of (xi_1 - 1)^i in the basis 1, xi_1, ..., xi_1^(p-2)."""
    poly = [1]
    for _ in range(i):
        poly = [(poly[k - 1] if k else 0) - (poly[k] if k < len(poly) else 0)
                for k in range(len(poly) + 1)]
    # reduce modulo 1 + x + ... + x^(p-1)
    while len(poly) > p - 1:
        top = poly.pop()
        for k in range(p - 1):
            poly[k] -= top
    return poly + [0] * (p - 1 - len(poly))


def jordan_block(n: int) -> Matrix:
    return [[int(j == i or j == i + 1) for j in range(n)] for i in range(n)]


def printed_cyclic_form(p: int, blocks: Sequence[int], couplings: dict) -> Matrix:
    """Upper block-triangular matrix with delta_t diagonal blocks.

    ``couplings[(r, c)]`` is the coordinate column placed last in block (r, c).
    """
    sizes = [len(delta_basis_exponents(p, t)) for t in blocks]
    grid = [[None] * len(blocks) for _ in blocks]
    for k, t in enumerate(blocks):
        grid[k][k] = delta_matrix(p, t)
    for (r, c), coords in couplings.items():
        grid[r][c] = column_block(coords, sizes[c])
    return el.block_matrix(grid, sizes, sizes)


# ---------------------------------------------------------------------------
# Delta construction over C_{p^s}


def theorem1_module(p: int, s: int, n: int) -> CatalogEntry:
    _check_prime(p)
    if s < 3:
        raise CatalogError("the Delta construction needs s >= 3")
    if n < 1:
        raise CatalogError("n must be >= 1")
    d0, d1, d2, ds = (delta_matrix(p, t) for t in (0, 1, 2, s))
    g0, g1, g2, gs = (len(M) for M in (d0, d1, d2, ds))
    En = el.identity(n)
    Jn = jordan_block(n)
    one0 = [1]                      # 1 in B_0
    one1 = [1] + [0] * (g1 - 1)     # 1 in B_1
    U = el.block_matrix([
        [el.kron(En, column_block(one0, g2)), el.kron(Jn, column_block(one0, gs))],
        [el.kron(En, column_block(one1, g2)), el.kron(Jn, column_block(one1, gs))],
    ], [n * g0, n * g1], [n * g2, n * gs])
    D1 = el.block_matrix([[el.kron(En, d0), None], [None, el.kron(En, d1)]],
                         [n * g0, n * g1], [n * g0, n * g1])
    D2 = el.block_matrix([[el.kron(En, d2), None], [None, el.kron(En, ds)]],
                         [n * g2, n * gs], [n * g2, n * gs])
    top, bottom = n * (g0 + g1), n * (g2 + gs)
    A = el.block_matrix([[D1, U], [None, D2]], [top, bottom], [top, bottom])
    desc = f"Thm1(p={p},s={s},n={n})"
    L = GLattice(PGroup.cyclic(p, s), (_freeze(A),), name=desc)
    v = [Fraction(0)] * L.rank
    v[0] = Fraction(1, p ** s)
    T = Cocycle(L, (tuple(v),))
    return _entry(desc, L, {"T_Delta": T}, "Delta construction, cocycle T_Delta")


# ---------------------------------------------------------------------------
# C_{p^2} modules


def _ring(p: int):
    G = PGroup.cyclic(p, 2)
    a = G.generators[0]
    one = GroupRingElement.scalar(G, 1)
    A = GroupRingElement.of(a)
    Phi = phi_element(G, a)
    PhiP = phi_element(G, a ** p)
    return G, one, A, Phi, PhiP


def _vec(*parts: GroupRingElement) -> list[int]:
    out = []
    for x in parts:
        out.extend(x.coeffs)
    return out


def _coords(L: GLattice, v: Sequence, scale: Fraction = Fraction(1)) -> tuple:
    y = ambient_coordinates(L, v)
    if y is None:
        raise CatalogError("vector is not in the rational span of the lattice")
    return tuple(Fraction(c) * scale for c in y)


def xi_module(p: int, i: int) -> CatalogEntry:
    _check_prime(p)
    if not 0 <= i <= p - 2:
        raise CatalogError(f"X_i needs 0 <= i <= p-2, got {i}")
    G, one, a, Phi, PhiP = _ring(p)
    u = Phi * PhiP
    w = (a - 1) * PhiP
    v = Phi + (a - 1) ** (i + 1)
    desc = f"Xi(p={p},i={i})"
    L = sublattice_span(free_module(G), [u.coeffs, w.coeffs, v.coeffs], name=desc)
    L = rebase(L, printed_basis("X", p, i))
    T = Cocycle(L, (_coords(L, u.coeffs, Fraction(1, p * p)),))
    return _entry(desc, L, {"T_i": T}, "module X_i with cocycle T_i(a) = p^-2 u")


def yi_module(p: int, i: int) -> CatalogEntry:
    _check_prime(p)
    if not 0 <= i <= p - 1:
        raise CatalogError(f"Y_i needs 0 <= i <= p-1, got {i}")
    G, one, a, Phi, PhiP = _ring(p)
    desc = f"Yi(p={p},i={i})"
    L = sublattice_span(free_module(G), [Phi.coeffs, ((a - 1) ** i).coeffs], name=desc)
    u = Phi * PhiP
    T = Cocycle(L, (_coords(L, u.coeffs, Fraction(1, p * p)),))
    return _entry(desc, L, {"lambda=1": T}, "module Y_i, test cocycle p^-2 Phi(a)Phi(a^p)")


def uj_module(p: int, j: int) -> CatalogEntry:
    _check_prime(p)
    if p == 2:
        raise CatalogError("U_j needs an odd prime")
    if not 1 <= j <= p - 2:
        raise CatalogError(f"U_j needs 1 <= j <= p-2, got {j}")
    G, one, a, Phi, PhiP = _ring(p)
    zero = GroupRingElement.zero(G)
    g1 = _vec((a - 1) ** (j + 1) + Phi, (a - 1) ** j)
    g2 = _vec(PhiP * (a - 1), PhiP)
    desc = f"Uj(p={p},j={j})"
    L = sublattice_span(free_module(G, 2), [g1, g2], name=desc)
    L = rebase(L, printed_basis("U", p, j))
    u1 = _vec(Phi * PhiP, zero)
    u2 = _vec(zero, Phi * PhiP)
    _check_projection(L, 0, u2, xi_module(p, j).lattice)
    _check_projection(L, 1, u1, yi_module(p, j).lattice)
    T = Cocycle(L, (_coords(L, u1, Fraction(1, p * p)),))
    return _entry(desc, L, {"f_j": T}, "module U_j with cocycle f_j(a) = p^-2 u_1")


def _check_projection(L: GLattice, half: int, kernel_vec: Sequence[int], image: GLattice) -> None:
    """Check ``0 -> Z kernel_vec -> L -> image -> 0`` for a coordinate projection of (ZG)^2."""
    n = L.ambient.rank // 2
    B = [list(r) for r in L.ambient.basis]
    part = [r[half * n:(half + 1) * n] for r in B]
    if el.hnf_basis(part, n) != el.hnf_basis([list(r) for r in image.ambient.basis], n):
        raise CatalogError("projection image differs from the expected lattice")
    K = el.integer_kernel(el.transpose(part), len(B))
    if len(K) != 1:
        raise CatalogError("projection kernel does not have rank 1")
    v = el.vecmat(K[0], B)
    if v != list(kernel_vec) and [-x for x in v] != list(kernel_vec):
        raise CatalogError("projection kernel is not spanned by the expected vector")


def u0_module(p: int) -> CatalogEntry:
    _check_prime(p)
    G, one, a, Phi, PhiP = _ring(p)
    desc = f"U0(p={p})"
    L = sublattice_span(free_module(G), [Phi.coeffs], name=desc)
    u = Phi * PhiP
    T = Cocycle(L, (_coords(L, u.coeffs, Fraction(1, p * p)),))
    return _entry(desc, L, {"lambda=1": T}, "module U_0 = ZG Phi(a), test cocycle")


def printed_basis(kind: str, p: int, i: int = 0) -> list[list[int]]:
    """Ambient vectors of the basis in which the printed block matrices hold.

    The delta_2 block is ``a^(l + pk) y`` for l outer, k inner; the delta_1
    block is ``a^k z``.
    """
    G, one, a, Phi, PhiP = _ring(p)
    zero = GroupRingElement.zero(G)
    e2 = delta_basis_exponents(p, 2)
    powers = [GroupRingElement.of(a.group.element(e)) for e in range(p * p)]
    u = Phi * PhiP
    if kind == "X":
        w = (a - 1) * PhiP
        v = Phi + (a - 1) ** (i + 1)
        return ([u.coeffs] + [(powers[k] * w).coeffs for k in range(p - 1)]
                + [(powers[e] * v).coeffs for e in e2])
    if kind == "Y":
        y = (a - 1) ** i if i <= p - 2 else (a - 1) ** i - Phi
        return ([u.coeffs] + [(powers[k] * PhiP).coeffs for k in range(p - 1)]
                + [(powers[e] * y).coeffs for e in e2])
    if kind == "U0":
        return [u.coeffs] + [(powers[e] * Phi).coeffs for e in e2]
    if kind == "U":
        y = ((a - 1) ** (i + 1) + Phi, (a - 1) ** i)
        z = (PhiP * (a - 1), PhiP)
        return ([_vec(u, zero), _vec(zero, u)]
                + [_vec(powers[k] * z[0], powers[k] * z[1]) for k in range(p - 1)]
                + [_vec(powers[e] * y[0], powers[e] * y[1]) for e in e2])
    raise CatalogError(f"no printed basis for {kind!r}")


def printed_form(kind: str, p: int, i: int = 0) -> Matrix:
    """The block matrix of the generator a as printed for X_i, Y_i, U_0, U_j."""
    one0 = [1]
    if kind == "X":
        return printed_cyclic_form(p, [0, 1, 2], {(0, 2): one0, (1, 2): alpha_coords(p, i)})
    if kind == "Y":
        return printed_cyclic_form(p, [0, 1, 2], {(0, 1): one0, (1, 2): alpha_coords(p, i)})
    if kind == "U0":
        return printed_cyclic_form(p, [0, 2], {(0, 1): one0})
    if kind == "U":
        return printed_cyclic_form(p, [0, 0, 1, 2], {(0, 3): one0, (1, 2): one0,
                                                     (2, 3): alpha_coords(p, i)})
    raise CatalogError(f"no printed form for {kind!r}")


def matches_printed_form(entry: CatalogEntry, kind: str, p: int, i: int = 0) -> bool:
    mats = basis_matrix_in(entry.lattice, printed_basis(kind, p, i))
    return mats is not None and mats[0] == printed_form(kind, p, i)


# ---------------------------------------------------------------------------
# C_p x C_p


def lemma12_module(p: int) -> CatalogEntry:
    _check_prime(p)
    G = PGroup.klein(p)
    a, b = G.generators
    one = GroupRingElement.scalar(G, 1)
    zero = GroupRingElement.zero(G)
    A, B = GroupRingElement.of(a), GroupRingElement.of(b)
    Pa, Pb = phi_element(G, a), phi_element(G, b)
    gens = [_vec(Pa, zero), _vec(one * p, zero), _vec(zero, Pb), _vec(zero, one * p),
            _vec(B - 1, 1 - A)]
    desc = f"Lemma12(p={p})"
    L = sublattice_span(free_module(G, 2), gens, name=desc)
    Ta = _coords(L, _vec(one, zero))
    Tb = _coords(L, _vec(zero, one))
    T = Cocycle(L, (Ta, Tb))
    return _entry(desc, L, {"T": T}, "module M in (Z[C_p x C_p])^2 with T(a)=(1,0), T(b)=(0,1)")


def _E(n):
    return el.identity(n)


def _neg(M):
    return [[-x for x in r] for r in M]


def delta_n_matrices(n: int) -> tuple[Matrix, Matrix]:
    En, mE = _E(n), _neg(_E(n))
    one = [[1]]
    sa = [n, 1, n, n, n]
    A = el.block_matrix([
        [En, None, None, En, None],
        [None, one, None, None, None],
        [None, None, mE, None, En],
        [None, None, None, mE, None],
        [None, None, None, None, En],
    ], sa, sa)
    sb = [1, n, n, n, n]
    B = el.block_matrix([
        [one, None, None, None, None],
        [None, En, None, None, En],
        [None, None, mE, En, None],
        [None, None, None, En, None],
        [None, None, None, None, mE],
    ], sb, sb)
    return A, B


def w_n_matrices(n: int) -> tuple[Matrix, Matrix]:
    if n == 0:
        A = [[1, 1, 0, 1], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]
        B = [[1, 1, 1, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]]
        return A, B
    D = [[1, 1], [0, -1]]
    S = [[0] * (n - 1) + [1, 1], [0] * (n + 1)]
    Vn = [[0] + [int(i == j) for j in range(n)] for i in range(n)]
    Vn2 = [[int(i == j) for j in range(n)] + [0] for i in range(n)]
    En, mE = _E(n), _neg(_E(n))
    E1, mE1 = _E(n + 1), _neg(_E(n + 1))
    sz = [2, n, n, n + 1, n + 1]
    A = el.block_matrix([
        [D, None, None, None, None],
        [None, En, None, None, Vn],
        [None, None, mE, Vn, None],
        [None, None, None, E1, None],
        [None, None, None, None, mE1],
    ], sz, sz)
    B = el.block_matrix([
        [D, None, None, S, None],
        [None, En, None, Vn2, None],
        [None, None, mE, None, Vn2],
        [None, None, None, mE1, None],
        [None, None, None, None, E1],
    ], sz, sz)
    return A, B


KLEIN_KINDS = ("DeltaN", "DeltaNStar", "WN", "WNStar")


def klein_lattice(kind: str, n: int) -> GLattice:
    if kind in ("DeltaN", "DeltaNStar"):
        if n < 1:
            raise CatalogError("Delta_n needs n >= 1")
        A, B = delta_n_matrices(n)
    elif kind in ("WN", "WNStar"):
        if n < 0:
            raise CatalogError("W_n needs n >= 0")
        A, B = w_n_matrices(n)
    else:
        raise CatalogError(f"unknown Klein family {kind!r}")
    desc = f"{kind}(n={n})"
    L = GLattice(PGroup.klein(2), (_freeze(A), _freeze(B)), name=desc)
    if kind.endswith("Star"):
        L = contragredient(L).with_name(desc)
        L.validate()
    return L


def klein_rep(kind: str, n: int) -> CatalogEntry:
    L = klein_lattice(kind, n)
    cocycles = {}
    try:
        cocycles["table"] = theorem3_cocycle(kind, n, None, L)
    except CatalogError:
        pass
    return _entry(L.name, L, cocycles, f"Klein-four family {kind}, n={n}")


def excluded_series(which: str, n: int = 1, frob: Optional[Matrix] = None) -> GLattice:
    """The two Klein series that violate the trivial-summand condition.

    ``"4n"`` is the pair with the block ``frob`` (default identity);
    ``"4n+2"`` is the pair of degree 4n + 2.
    """
    En, mE = _E(n), _neg(_E(n))
    if which == "4n":
        F = frob if frob is not None else En
        sz = [n, n, n, n]
        A = el.block_matrix([[En, None, None, En], [None, mE, En, None],
                             [None, None, En, None], [None, None, None, mE]], sz, sz)
        B = el.block_matrix([[En, None, F, None], [None, mE, None, En],
                             [None, None, mE, None], [None, None, None, En]], sz, sz)
    elif which == "4n+2":
        sa = [1, n, n, n, 1, n]
        one = [[1]]
        A = el.block_matrix([
            [one, None, None, None, None, None],
            [None, En, None, None, None, En],
            [None, None, mE, En, None, None],
            [None, None, None, En, None, None],
            [None, None, None, None, one, None],
            [None, None, None, None, None, mE],
        ], sa, sa)
        E1, mE1 = _E(n + 1), _neg(_E(n + 1))
        sb = [n + 1, n, n + 1, n]
        B = el.block_matrix([[E1, None, E1, None], [None, mE, None, En],
                             [None, None, mE1, None], [None, None, None, En]], sb, sb)
    else:
        raise CatalogError(f"unknown excluded series {which!r}")
    return GLattice(PGroup.klein(2), (_freeze(A), _freeze(B)), name=f"excluded-{which}(n={n})")


def theorem3_cocycle(kind: str, n: int, params: Optional[Sequence] = None,
                     lattice: Optional[GLattice] = None) -> Cocycle:
    """Cocycle from the Klein-four table.

    ``params`` are the free components in {0, 1/2}: y_2..y_{n+1} for Delta_n
    (sum must be 1/2), y_{3n+4}..y_{4n+3} for W_n^*.  Defaults: for Delta_n
    the vector (1/2, 0, ..., 0); for W_n^* all zeros.
    """
    L = lattice if lattice is not None else klein_lattice(kind, n)
    m = L.rank
    half, quarter = Fraction(1, 2), Fraction(1, 4)
    fa = [Fraction(0)] * m
    fb = [Fraction(0)] * m
    if kind == "DeltaN":
        free = n
        params = [half] + [Fraction(0)] * (n - 1) if params is None else list(params)
        _check_params(params, free)
        if sum(params) % 1 != half:
            raise CatalogError("Delta_n parameters must sum to 1/2 modulo 1")
        fa[n] = half
        fb[0] = half
        fb[1:n + 1] = params
    elif kind == "WNStar":
        params = [Fraction(0)] * n if params is None else list(params)
        _check_params(params, n)
        fa[2 * n + 2] = half
        fb[1] = half
        fb[3 * n + 3:4 * n + 3] = params
        fb[4 * n + 3] = half
    elif kind == "DeltaNStar" and n == 1:
        fa = [0, half, 0, 0, 0]
        fb = [half, 0, half, quarter, 0]
    elif kind == "WN" and n == 1:
        fa = [0, 0, 0, 0, half, 0, 0, 0]
        fb = [0, half, 0, quarter, 0, half, 0, half]
    else:
        raise CatalogError(f"no torsion-free table cocycle for {kind}(n={n})")
    T = Cocycle(L, (tuple(Fraction(x) for x in fa), tuple(Fraction(x) for x in fb)))
    if not validate_cocycle(T):
        raise CatalogError(f"table cocycle for {kind}(n={n}) fails the cocycle conditions")
    return T


def _check_params(params: Sequence, count: int) -> None:
    if len(params) != count:
        raise CatalogError(f"expected {count} free parameters, got {len(params)}")
    for x in params:
        if Fraction(x) % 1 not in (0, Fraction(1, 2)):
            raise CatalogError("free parameters must be 0 or 1/2")


def table_param_count(kind: str, n: int) -> int:
    """Number of admissible parameter vectors in the Klein-four table (0 if no row)."""
    if kind == "DeltaN":
        return 2 ** (n - 1)
    if kind == "WNStar":
        return 2 ** n
    if (kind, n) in (("DeltaNStar", 1), ("WN", 1)):
        return 1
    return 0


@dataclass
class Theorem3Row:
    kind: str
    n: int
    degree: int
    h1_structure: tuple[int, ...]
    param_count: int
    raw_torsion_free: int
    torsion_free_count: int
    orbit_count: Optional[int]
    table_cocycle_verdict: Optional[str]

    def to_dict(self) -> dict:
        return {"kind": self.kind, "n": self.n, "m": self.degree,
                "h1": list(self.h1_structure), "param_count": self.param_count,
                "raw_torsion_free_classes": self.raw_torsion_free,
                "torsion_free_count": self.torsion_free_count,
                "iso_orbit_count": self.orbit_count,
                "table_cocycle": self.table_cocycle_verdict}


def enumerate_theorem3(kind: str, n: int, orbits: bool = True, budget: int = 2 ** 12,
                       seed: int = 0) -> Theorem3Row:
    """Torsion-free classes for one Klein-four family member.

    ``torsion_free_count`` counts torsion-free classes up to sign (``T`` and
    ``-T`` differ by the automorphism ``-1`` of the lattice), which is the
    normalization under which the table lists one cocycle per parameter vector.
    The raw class count and the count of isomorphism orbits are reported too.
    """
    from .crysgroup import CrysGroup, classify, h1_cached, is_torsion_free, torsion_free_classes

    L = klein_lattice(kind, n)
    H = h1_cached(L)
    free = torsion_free_classes(L, budget)
    mods = H.group_structure.invariant_factors
    signed = {min(c, tuple((-x) % q for x, q in zip(c, mods))) for c in free}
    orbit_count = classify(L, budget, seed=seed).orbit_count if orbits else None
    verdict = None
    if table_param_count(kind, n):
        verdict = is_torsion_free(CrysGroup.of(theorem3_cocycle(kind, n, None, L))).verdict
    return Theorem3Row(kind, n, L.rank, mods, table_param_count(kind, n), len(free),
                       len(signed), orbit_count, verdict)


# ---------------------------------------------------------------------------


def _entry(desc, L, cocycles, provenance) -> CatalogEntry:
    e = CatalogEntry(desc, L, cocycles, provenance)
    e.validate()
    return e


_PATTERN = re.compile(r"^\s*(\w+)\s*\(([^)]*)\)\s*$")
_SIGNATURES = {
    "Xi": ("p", "i"), "Yi": ("p", "i"), "Uj": ("p", "j"), "U0": ("p",),
    "Lemma12": ("p",), "Thm1": ("p", "s", "n"), "DeltaT": ("p", "s", "t"),
    "DeltaN": ("n",), "DeltaNStar": ("n",), "WN": ("n",), "WNStar": ("n",),
    "Y0": ("p",),
}


def parse_descriptor(text: str) -> tuple[str, dict]:
    m = _PATTERN.match(text)
    if not m:
        raise DescriptorError(f"cannot parse descriptor {text!r}")
    name, body = m.group(1), m.group(2)
    if name not in _SIGNATURES:
        raise DescriptorError(f"unknown family {name!r}")
    args = {}
    for part in filter(None, (s.strip() for s in body.split(","))):
        km = re.fullmatch(r"(\w+)\s*=\s*(-?\d+)", part)
        if not km:
            raise DescriptorError(f"bad argument {part!r} in {text!r}")
        args[km.group(1)] = int(km.group(2))
    if set(args) != set(_SIGNATURES[name]):
        raise DescriptorError(f"{name} takes arguments {', '.join(_SIGNATURES[name])}")
    if "p" in args and not is_prime(args["p"]):
        raise DescriptorError(f"{args['p']} is not prime")
    return name, args


@lru_cache(maxsize=None)
def build(text: str) -> CatalogEntry:
    """Build the catalog entry named by a descriptor such as ``"Xi(p=3,i=1)"``."""
    name, args = parse_descriptor(text)
    try:
        if name == "Xi":
            return xi_module(args["p"], args["i"])
        if name == "Yi":
            return yi_module(args["p"], args["i"])
        if name == "Y0":
            return yi_module(args["p"], 0)
        if name == "Uj":
            return uj_module(args["p"], args["j"])
        if name == "U0":
            return u0_module(args["p"])
        if name == "Lemma12":
            return lemma12_module(args["p"])
        if name == "Thm1":
            return theorem1_module(args["p"], args["s"], args["n"])
        if name == "DeltaT":
            L = delta_t(args["p"], args["s"], args["t"])
            return _entry(text.strip(), L.with_name(text.strip()), {}, "irreducible delta_t")
        return klein_rep(name, args["n"])
    except LatticeConstructionError as exc:
        raise CatalogError(str(exc)) from exc
