"""Exact integer and rational linear algebra.

Matrices are plain ``list[list[int]]`` in row-major order; rational vectors are
tuples of :class:`fractions.Fraction`.  Python integers are arbitrary precision,
so nothing here can overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Optional, Sequence

import numpy as np

Matrix = list[list[int]]


class DimensionError(ValueError):
    pass


class LatticeError(ValueError):
    """Raised when a lattice containment or finiteness precondition fails."""


# ---------------------------------------------------------------------------
# small helpers


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def copy_matrix(A: Sequence[Sequence[int]]) -> Matrix:
    return [list(map(int, row)) for row in A]


def transpose(A: Sequence[Sequence], cols: Optional[int] = None) -> list[list]:
    if not A:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    if not A:
        return []
    inner = len(A[0])
    if inner != len(B):
        raise DimensionError(f"cannot multiply {len(A)}x{inner} by {len(B)}x?")
    if not B:
        return [[] for _ in A]
    if inner >= 8 and _int64_safe(A, B, inner):
        return (np.array(A, dtype=np.int64) @ np.array(B, dtype=np.int64)).tolist()
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col) if a) for col in Bt] for row in A]


_INT64_LIMIT = 2 ** 62


def _int64_safe(A, B, inner: int) -> bool:
    """True when both are integer matrices whose product cannot overflow int64."""
    try:
        ma = max(abs(x) for row in A for x in row)
        mb = max(abs(x) for row in B for x in row)
    except TypeError:  # pragma: no cover - non-comparable entries
        return False
    if not (isinstance(ma, int) and isinstance(mb, int)):
        return False
    if not all(type(x) is int for row in A for x in row) or \
            not all(type(x) is int for row in B for x in row):
        return False
    return ma * mb * inner < _INT64_LIMIT


def matvec(A: Sequence[Sequence], x: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, x) if a) for row in A]


def vecmat(x: Sequence, A: Sequence[Sequence]) -> list:
    """Row vector times matrix."""
    if not A:
        return []
    out = [0] * len(A[0])
    for xi, row in zip(x, A):
        if xi:
            for j, a in enumerate(row):
                if a:
                    out[j] += xi * a
    return out


def matpow(A: Matrix, k: int) -> Matrix:
    n = len(A)
    result = identity(n)
    base = A
    while k > 0:
        if k & 1:
            result = matmul(result, base)
        k >>= 1
        if k:
            base = matmul(base, base)
    return result


def block_matrix(blocks: Sequence[Sequence[Optional[Matrix]]],
                 row_sizes: Sequence[int], col_sizes: Sequence[int]) -> Matrix:
    """Assemble a matrix from blocks; ``None`` stands for a zero block."""
    out = zeros(sum(row_sizes), sum(col_sizes))
    r0 = 0
    for bi, rs in enumerate(row_sizes):
        c0 = 0
        for bj, cs in enumerate(col_sizes):
            blk = blocks[bi][bj]
            if blk is not None:
                if len(blk) != rs or any(len(row) != cs for row in blk):
                    raise DimensionError(f"block ({bi},{bj}) is not {rs}x{cs}")
                for i in range(rs):
                    out[r0 + i][c0:c0 + cs] = blk[i]
            c0 += cs
        r0 += rs
    return out


def kron(A: Matrix, B: Matrix) -> Matrix:
    return [[a * b for a in ra for b in rb] for ra in A for rb in B]


def det(A: Sequence[Sequence[int]]) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = copy_matrix(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * piv - M[i][k] * M[k][j]) // prev
        prev = piv
    return sign * M[n - 1][n - 1]


def det_mod(A: Sequence[Sequence[int]], p: int) -> int:
    """Determinant modulo a prime ``p``, as an integer in ``[0, p)``."""
    n = len(A)
    M = [[x % p for x in row] for row in A]
    d = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            d = -d
        d = d * M[k][k] % p
        inv = pow(M[k][k], -1, p)
        for i in range(k + 1, n):
            f = M[i][k] * inv % p
            if f:
                Mi, Mk = M[i], M[k]
                for j in range(k, n):
                    Mi[j] = (Mi[j] - f * Mk[j]) % p
    return d % p


def is_unimodular(U: Matrix) -> bool:
    return len(U) == (len(U[0]) if U else 0) and abs(det(U)) == 1


# ---------------------------------------------------------------------------
# Hermite normal form


def _hnf_inplace(H: Matrix, U: Optional[Matrix], ncols: int) -> list[int]:
    """Row-reduce ``H`` (and ``U`` alongside) to row HNF; return pivot columns."""
    nrows = len(H)
    width = len(H[0]) if H else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        while True:
            best = None
            for i in range(r, nrows):
                v = H[i][c]
                if v and (best is None or abs(v) < abs(H[best][c])):
                    best = i
            if best is None:
                break
            if best != r:
                H[r], H[best] = H[best], H[r]
                if U is not None:
                    U[r], U[best] = U[best], U[r]
            piv_row = H[r]
            pv = piv_row[c]
            done = True
            for i in range(r + 1, nrows):
                v = H[i][c]
                if v:
                    q = v // pv
                    row = H[i]
                    for j in range(c, width):
                        if piv_row[j]:
                            row[j] -= q * piv_row[j]
                    if U is not None:
                        urow, upiv = U[i], U[r]
                        for j, x in enumerate(upiv):
                            if x:
                                urow[j] -= q * x
                    if row[c]:
                        done = False
            if done:
                break
        if r < nrows and H[r][c]:
            if H[r][c] < 0:
                H[r] = [-x for x in H[r]]
                if U is not None:
                    U[r] = [-x for x in U[r]]
            pv = H[r][c]
            for i in range(r):
                v = H[i][c]
                q = v // pv
                if q:
                    row, piv_row = H[i], H[r]
                    for j in range(c, width):
                        if piv_row[j]:
                            row[j] -= q * piv_row[j]
                    if U is not None:
                        urow, upiv = U[i], U[r]
                        for j, x in enumerate(upiv):
                            if x:
                                urow[j] -= q * x
            pivots.append(c)
            r += 1
    return pivots


def hermite_normal_form(A: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``H == U @ A``.  ``H`` is in
    row echelon form with positive pivots, entries above each pivot reduced
    into ``[0, pivot)``, and zero rows at the bottom.
    """
    H = copy_matrix(A)
    n = len(H)
    U = identity(n)
    ncols = len(H[0]) if H else 0
    _hnf_inplace(H, U, ncols)
    return H, U


def hnf_basis(rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    """Canonical basis (nonzero HNF rows) of the lattice spanned by ``rows``."""
    H = [list(map(int, r)) for r in rows if any(r)]
    if not H:
        return []
    ncols = len(H[0]) if ncols is None else ncols
    # cheap modular trick is unnecessary at this scale; plain HNF
    pivots = _hnf_inplace(H, None, ncols)
    return H[:len(pivots)]


def pivot_columns(H: Matrix) -> list[int]:
    out = []
    for row in H:
        for j, x in enumerate(row):
            if x:
                out.append(j)
                break
    return out


def lattice_coordinates(B: Matrix, v: Sequence) -> Optional[list]:
    """Solve ``v = y @ B`` for a basis ``B`` in HNF.

    Returns the (rational or integer) coefficient list, or ``None`` when ``v`` is
    not in the rational row span.  Integer ``y`` certifies lattice membership.
    """
    rest = list(v)
    y = []
    for row in B:
        c = next(j for j, x in enumerate(row) if x)
        coef = Fraction(rest[c], row[c])
        if coef.denominator == 1:
            coef = coef.numerator
        y.append(coef)
        if coef:
            for j in range(c, len(row)):
                if row[j]:
                    rest[j] -= coef * row[j]
    if any(rest):
        return None
    return y


def in_lattice(B: Matrix, v: Sequence) -> bool:
    y = lattice_coordinates(B, v)
    return y is not None and all(Fraction(c).denominator == 1 for c in y)


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``D = U @ A @ V`` with ``U``, ``V`` unimodular.

    ``D`` is diagonal with nonnegative entries ``d1 | d2 | ...``.  Pivots are
    chosen by minimal absolute value.
    """
    D = copy_matrix(A)
    m = len(D)
    n = len(D[0]) if D else 0
    U = identity(m)
    V = identity(n)

    def row_op(i, k, q):  # row_i -= q * row_k
        D[i] = [a - q * b for a, b in zip(D[i], D[k])]
        U[i] = [a - q * b for a, b in zip(U[i], U[k])]

    def col_op(j, k, q):  # col_j -= q * col_k
        for row in D:
            row[j] -= q * row[k]
        for row in V:
            row[j] -= q * row[k]

    def swap_rows(i, k):
        D[i], D[k] = D[k], D[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in D:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                Di = D[i]
                for j in range(t, n):
                    x = Di[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    row_op(i, t, D[i][t] // p)
                    if D[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if D[t][j]:
                    col_op(j, t, D[t][j] // p)
                    if D[t][j]:
                        clean = False
            if not clean:
                continue
            # divisibility: pivot must divide the remaining block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            D[t] = [a + b for a, b in zip(D[t], D[bad])]
            U[t] = [a + b for a, b in zip(U[t], U[bad])]
        if t < m and t < n and D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return D, U, V


def invariant_factors(A: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith form (including ones)."""
    D, _, _ = smith_normal_form(A)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


# ---------------------------------------------------------------------------
# kernels, spans, membership


def integer_kernel(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    """Rows freely generating ``{x in Z^cols : A x = 0}`` (a saturated lattice)."""
    cols = len(A[0]) if A else (ncols or 0)
    rows = [list(r) for r in A if any(r)]
    if not rows:
        return identity(cols)
    At = transpose(rows)
    # [A^T | I] row-reduced on the A^T part; zero rows carry the kernel
    aug = [list(At[j]) + [int(j == k) for k in range(cols)] for j in range(cols)]
    r = len(rows)
    pivots = _hnf_inplace(aug, None, r)
    kernel = [row[r:] for row in aug[len(pivots):]]
    return hnf_basis(kernel, cols)


_MOD = 2147483647  # 2^31 - 1, so products of residues fit in int64


def _rref_mod(M: np.ndarray, P: int) -> list[int]:
    """In-place reduced row echelon form modulo ``P``; returns the pivot columns."""
    nrows, ncols = M.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        inv = pow(int(M[r, c]), -1, P)
        M[r] = (M[r] * inv) % P
        others = np.nonzero(M[:, c])[0]
        others = others[others != r]
        if others.size:
            f = M[others, c][:, None]
            M[others] = (M[others] - f * M[r][None, :]) % P
        pivots.append(c)
        r += 1
    return pivots


def _reconstruct(x: int, P: int) -> Optional[Fraction]:
    """Rational ``n/d`` with ``|n|, d <= sqrt(P/2)`` and ``n ≡ d x (mod P)``."""
    bound = int((P // 2) ** 0.5)
    r0, r1, t0, t1 = P, x % P, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound or gcd(r1, abs(t1)) != 1:
        return None
    return Fraction(r1, t1)


def rational_kernel(A: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Primitive integer vectors forming a Q-basis of ``{x : A x = 0}``.

    Computed modulo a word-sized prime, lifted by rational reconstruction and
    verified exactly.  A verified lift of the modular kernel is a Q-basis: its
    size bounds the true nullity from above and the vectors are independent.
    Falls back to exact elimination when a lift does not verify.
    """
    rows = [list(r) for r in A if any(r)]
    if not rows:
        return identity(ncols)
    P = _MOD
    M = np.array([[x % P for x in r] for r in rows], dtype=np.int64)
    pivots = _rref_mod(M, P)
    piv_set = set(pivots)
    out = []
    ok = True
    for f in (c for c in range(ncols) if c not in piv_set):
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            if M[i, f]:
                q = _reconstruct(-int(M[i, f]), P)
                if q is None:
                    ok = False
                    break
                v[c] = q
        if not ok:
            break
        w, _ = clear_denominators(v)
        g = gcd_list(w)
        w = [x // g for x in w]
        if any(sum(a * b for a, b in zip(r, w) if a) for r in rows):
            ok = False
            break
        out.append(w)
    if ok:
        return out
    return integer_kernel(rows, ncols)  # pragma: no cover - reconstruction failure


def saturate_rows(rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis of ``(Q-span of rows) ∩ Z^ncols`` for linearly independent rows.

    With ``U K V = D`` in Smith form the rows ``(U K)_i / d_i`` form the basis.
    """
    K = [list(r) for r in rows]
    if not K:
        return []
    D, U, _ = smith_normal_form(K)
    UK = matmul(U, K)
    out = []
    for i in range(len(K)):
        d = D[i][i]
        if d == 0:
            raise LatticeError("rows are linearly dependent")
        out.append([x // d for x in UK[i]])
    return hnf_basis(out, ncols)


def kernel_lattice(A: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Saturated Z-basis of ``{x in Z^ncols : A x = 0}`` via the modular kernel."""
    return saturate_rows(rational_kernel(A, ncols), ncols)


def rational_rref(A: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    M = [[Fraction(x) for x in row] for row in A]
    pivots = []
    r = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(A: Sequence[Sequence]) -> int:
    if not A:
        return 0
    return len(hnf_basis([[int(x) for x in r] for r in A])) if all(
        isinstance(x, int) for r in A for x in r) else len(rational_rref(A)[1])


def solve_rational(A: Sequence[Sequence], b: Sequence) -> Optional[list[Fraction]]:
    """One rational solution of ``A x = b`` (free variables zero), or ``None``."""
    n = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rational_rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(R, pivots):
        x[c] = row[n]
    return x


def clear_denominators(v: Sequence) -> tuple[list[int], int]:
    d = reduce(lcm, (Fraction(x).denominator for x in v), 1)
    return [int(Fraction(x) * d) for x in v], d


def saturate(rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis of ``(rational span of rows) ∩ Z^ncols``."""
    rows = [r for r in rows if any(r)]
    if not rows:
        return []
    perp = integer_kernel(rows, ncols)
    if not perp:
        return identity(ncols)
    return integer_kernel(perp, ncols)


def member_subspace_plus_lattice(t: Sequence, S: Sequence[Sequence[int]],
                                 L: Sequence[Sequence[int]]):
    """Decide ``t ∈ V + Λ`` with ``V`` the column span of ``S`` and ``Λ`` the row lattice of ``L``.

    Returns ``(True, (x, c))`` with ``t = S x + c @ L`` (``x`` rational, ``c``
    integer) or ``(False, None)``.
    """
    dim = len(t)
    if S and len(S) != dim:
        raise DimensionError("subspace generators have the wrong length")
    if any(len(row) != dim for row in L):
        raise DimensionError("lattice generators have the wrong length")
    t = [Fraction(x) for x in t]
    k = len(S[0]) if S else 0
    # rows of P span the annihilator of V; P t ∈ P Λ  <=>  t ∈ V + Λ
    if k:
        P = integer_kernel(transpose(S), dim)
    else:
        P = identity(dim)
    L_rows = [list(r) for r in L]
    if P:
        Pt = matvec(P, t)
        PL = [matvec(P, row) for row in L_rows]
        # combination of lattice rows: kernel trick on [PL ; -Pt] with scaled denominators
        coeffs = _lattice_combination(PL, Pt)
        if coeffs is None:
            return False, None
    else:
        coeffs = [0] * len(L_rows)
    lam = vecmat(coeffs, L_rows) if L_rows else [0] * dim
    rest = [a - b for a, b in zip(t, lam)]
    if k:
        x = solve_rational(S, rest)
        if x is None:  # pragma: no cover - guaranteed by the projection
            return False, None
    else:
        if any(rest):
            return False, None
        x = []
    return True, (x, coeffs)


def _lattice_combination(G: Sequence[Sequence[int]], w: Sequence) -> Optional[list[int]]:
    """Integer ``c`` with ``c @ G == w`` or ``None``."""
    ncols = len(w)
    if not G:
        return None if any(w) else []
    n = len(G)
    H = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(G)]
    pivots = _hnf_inplace(H, None, ncols)
    rest = [Fraction(x) for x in w]
    c = [0] * n
    for row in H[:len(pivots)]:
        col = next(j for j in range(ncols) if row[j])
        q = rest[col] / row[col]
        if q.denominator != 1:
            return None
        q = int(q)
        if q:
            for j in range(col, ncols):
                rest[j] -= q * row[j]
            for j in range(n):
                c[j] += q * row[ncols + j]
    if any(rest):
        return None
    return c


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """``Z/d1 x ... x Z/dk`` with ``d1 | d2 | ... | dk`` and each ``di >= 2``."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        fs = tuple(int(d) for d in self.invariant_factors)
        if any(d < 2 for d in fs):
            raise ValueError(f"invariant factors must be >= 2: {fs}")
        if any(b % a for a, b in zip(fs, fs[1:])):
            raise ValueError(f"invariant factors must form a divisibility chain: {fs}")
        object.__setattr__(self, "invariant_factors", fs)

    @property
    def order(self) -> int:
        return reduce(lambda x, y: x * y, self.invariant_factors, 1)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def __str__(self):
        if self.is_trivial:
            return "0"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


@dataclass(frozen=True)
class Quotient:
    """``big / small`` with explicit generators.

    ``generators[i]`` is an element of the big lattice of order
    ``group.invariant_factors[i]`` in the quotient; ``coordinates`` maps a big
    lattice vector to its residue vector.
    """

    group: FiniteAbelianGroup
    generators: tuple[tuple[int, ...], ...]
    _basis: tuple[tuple[int, ...], ...]      # adapted basis of the big lattice
    _moduli: tuple[int, ...]                 # modulus per adapted basis vector (1 = killed)

    def coordinates(self, v: Sequence[int]) -> tuple[int, ...]:
        y = _solve_basis([list(r) for r in self._basis], v)
        if y is None:
            raise LatticeError("vector is not in the big lattice")
        return tuple(int(c) % d for c, d in zip(y, self._moduli) if d != 1)

    def element(self, coords: Sequence[int]) -> list[int]:
        out = [0] * (len(self._basis[0]) if self._basis else 0)
        for c, g in zip(coords, self.generators):
            for j, x in enumerate(g):
                out[j] += c * x
        return out


def _solve_basis(B: Matrix, v: Sequence) -> Optional[list]:
    H, U = hermite_normal_form(B)
    y = lattice_coordinates([r for r in H if any(r)], v)
    if y is None:
        return None
    k = len(y)
    return vecmat(y, U[:k]) if k else [0] * len(B)


def finite_quotient_with_generators(L_big: Sequence[Sequence[int]],
                                    L_small: Sequence[Sequence[int]]) -> Quotient:
    big = hnf_basis(L_big)
    small = hnf_basis(L_small, len(big[0]) if big else None) if L_small else []
    if len(small) != len(big):
        raise LatticeError("quotient is infinite (ranks differ)")
    if not big:
        return Quotient(FiniteAbelianGroup(()), (), (), ())
    # express small in terms of big
    C = []
    for row in small:
        y = lattice_coordinates(big, row)
        if y is None or any(Fraction(c).denominator != 1 for c in y):
            raise LatticeError("small lattice is not contained in the big lattice")
        C.append([int(c) for c in y])
    D, U, V = smith_normal_form(C)
    # small' = U C V-rows; adapted big basis = V^{-1} big
    Vinv = _inverse_unimodular(V)
    adapted = matmul(Vinv, big)
    diag = [D[i][i] for i in range(len(D))]
    gens, factors = [], []
    for d, b in zip(diag, adapted):
        if d != 1:
            gens.append(tuple(b))
            factors.append(d)
    if any(d == 0 for d in diag):  # pragma: no cover - excluded by rank check
        raise LatticeError("quotient is infinite")
    return Quotient(FiniteAbelianGroup(tuple(factors)), tuple(gens),
                    tuple(tuple(b) for b in adapted), tuple(diag))


def finite_quotient(L_big: Sequence[Sequence[int]],
                    L_small: Sequence[Sequence[int]]) -> FiniteAbelianGroup:
    """Invariant factors of ``lattice(L_big) / lattice(L_small)``."""
    return finite_quotient_with_generators(L_big, L_small).group


def _inverse_unimodular(V: Matrix) -> Matrix:
    n = len(V)
    aug = [list(V[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    R, _ = rational_rref(aug)
    inv = [[int(x) for x in row[n:]] for row in R]
    return inv


def gcd_list(xs) -> int:
    return reduce(gcd, (abs(int(x)) for x in xs), 0)


class SubspacePlusIntegers:
    """Membership in ``S Q^k + Z^n`` for a fixed integer matrix ``S`` (n x k).

    With ``U S V = D`` in Smith form, ``t`` lies in the set iff the coordinates
    of ``U t`` beyond the rank of ``S`` are integers.
    """

    def __init__(self, S: Sequence[Sequence[int]]):
        self.n = len(S)
        self.k = len(S[0]) if S else 0
        D, U, V = smith_normal_form(S)
        self.U = U
        self.V = V
        self.diag = [D[i][i] for i in range(min(self.n, self.k)) if D[i][i]]
        self.rank = len(self.diag)

    def decide(self, t: Sequence) -> tuple[bool, Optional[list[Fraction]]]:
        if len(t) != self.n:
            raise DimensionError("vector has the wrong length")
        w = matvec(self.U, [Fraction(x) for x in t])
        if any(Fraction(x).denominator != 1 for x in w[self.rank:]):
            return False, None
        y = [Fraction(w[i]) / self.diag[i] for i in range(self.rank)] + [Fraction(0)] * (self.k - self.rank)
        return True, matvec(self.V, y)

    def saturated_image(self) -> Matrix:
        """Basis rows of ``(S Q^k) ∩ Z^n``."""
        Uinv = _inverse_unimodular(self.U)
        return [[Uinv[j][i] for j in range(self.n)] for i in range(self.rank)]
