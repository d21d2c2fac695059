"""Independent reference implementations used only by the tests.

They are deliberately naive: elementary Euclid steps, determinantal divisors
via sympy, and brute-force enumeration of cocycles and coboundaries.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

import numpy as np
import sympy


def hnf_oracle(A):
    """Row-style Hermite form by plain Euclid steps: positive pivots, entries
    above a pivot reduced into [0, pivot), zero rows dropped."""
    M = [list(r) for r in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    r = 0
    for c in range(cols):
        while True:
            nz = [i for i in range(r, rows) if M[i][c]]
            if not nz:
                break
            k = min(nz, key=lambda i: abs(M[i][c]))
            M[r], M[k] = M[k], M[r]
            done = True
            for i in range(r + 1, rows):
                if M[i][c]:
                    q = M[i][c] // M[r][c]
                    M[i] = [a - q * b for a, b in zip(M[i], M[r])]
                    if M[i][c]:
                        done = False
            if done:
                break
        if r < rows and M[r][c]:
            if M[r][c] < 0:
                M[r] = [-x for x in M[r]]
            for i in range(r):
                q = M[i][c] // M[r][c]
                M[i] = [a - q * b for a, b in zip(M[i], M[r])]
            r += 1
            if r == rows:
                break
    return [row for row in M if any(row)]


def snf_oracle(A):
    """Invariant factors from determinantal divisors d_k = gcd of the k x k minors."""
    m, n = len(A), len(A[0])
    S = sympy.Matrix(A)
    divs = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = gcd(g, int(S.extract(list(rows), list(cols)).det()))
        if g == 0:
            break
        divs.append(g)
    return [divs[k] // divs[k - 1] for k in range(1, len(divs))]


def sympy_invariant_factors(A):
    from sympy.matrices.normalforms import smith_normal_form
    D = smith_normal_form(sympy.Matrix(A), domain=sympy.ZZ)
    out = [abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0]
    return out


def brute_h1(L):
    """Order and k-torsion counts of H^1(G, FL/L) by exhaustive enumeration.

    Cocycle values are enumerated in (1/d)L/L with d = |G|; coboundaries (g-1)x
    with x in (1/N)L/L, N = d * c and c the largest invariant factor of the
    stacked matrices (g-1), which is enough to reach every coboundary whose
    values have denominator d.
    Returns ``(order, {k: #classes killed by k})``.
    """
    G = L.group
    d = G.order
    m = L.rank
    gens = G.generators
    k = len(gens)
    mats = [np.array(L.action_of(g), dtype=np.int64) for g in gens]
    I = np.eye(m, dtype=np.int64)
    # all candidate value tuples u in (Z/d)^(km), T(gen_i) = u_i / d
    U = np.array(list(itertools.product(range(d), repeat=k * m)), dtype=np.int64)
    ok = np.ones(len(U), dtype=bool)
    for i, (g, A) in enumerate(zip(gens, mats)):
        N = sum(np.linalg.matrix_power(A, e) for e in range(g.order))
        ui = U[:, i * m:(i + 1) * m]
        ok &= np.all((ui @ N.T) % d == 0, axis=1)
    if k == 2:
        A, B = mats
        ua, ub = U[:, :m], U[:, m:]
        diff = ub @ (A - I).T - ua @ (B - I).T
        ok &= np.all(diff % d == 0, axis=1)
    Z = {tuple(r) for r in U[ok]}
    S = np.vstack([A - I for A in mats])
    c = max(sympy_invariant_factors(S.tolist()) or [1])
    Nn = d * c
    X = np.array(list(itertools.product(range(Nn), repeat=m)), dtype=np.int64)
    SX = X @ S.T
    step = Nn // d
    keep = np.all(SX % step == 0, axis=1)
    Bset = {tuple(r) for r in ((SX[keep] // step) % d)}
    assert Bset <= Z
    order = Fraction(len(Z), len(Bset))
    assert order.denominator == 1
    killed = {}
    for kk in range(1, d + 1):
        if d % kk == 0:
            cnt = sum(1 for z in Z if tuple((kk * x) % d for x in z) in Bset)
            killed[kk] = Fraction(cnt, len(Bset))
    return int(order), killed


def killed_counts(invariant_factors, d):
    """#elements killed by k in the group with the given invariant factors."""
    out = {}
    for k in range(1, d + 1):
        if d % k == 0:
            n = 1
            for q in invariant_factors:
                n *= gcd(q, k)
            out[k] = n
    return out
