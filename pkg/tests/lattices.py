"""Small lattice families shared by several test modules."""

from __future__ import annotations

import itertools
import random

from crystorsion import exactlin as el
from crystorsion.catalog import delta_t, excluded_series, klein_lattice, u0_module, xi_module, yi_module
from crystorsion.groupcore import GroupRingElement, PGroup
from crystorsion.zglattice import (GLattice, _freeze, conjugate, contragredient, direct_sum,
                                   free_module, sublattice_span)


def character(G: PGroup, signs) -> GLattice:
    return GLattice(G, tuple(((s,),) for s in signs), name=f"chi{signs}")


def inflated_regular(G: PGroup, kernel_gen_signs) -> GLattice:
    """Z[C_2] pulled back along the Klein quotient with the given generator images (+-1 -> swap)."""
    swap = ((0, 1), (1, 0))
    ident = ((1, 0), (0, 1))
    return GLattice(G, tuple(swap if s < 0 else ident for s in kernel_gen_signs), name="inflated")


def augmentation_ideal(G: PGroup) -> GLattice:
    gens = [(GroupRingElement.of(g) - 1).coeffs for g in G.generators]
    return sublattice_span(free_module(G), gens, name="augmentation")


def cyclic_pieces(p: int, s: int):
    G = PGroup.cyclic(p, s)
    pieces = [delta_t(p, s, t) for t in range(s + 1)]
    pieces.append(free_module(G))
    pieces.append(augmentation_ideal(G))
    pieces.append(contragredient(augmentation_ideal(G)))
    if s == 2:
        # Z[C_p] pulled back along C_{p^2} -> C_p
        perm = [[int(i == (j + 1) % p) for j in range(p)] for i in range(p)]
        pieces.append(GLattice(G, (_freeze(perm),), name="inflated"))
        if p == 2:
            pieces += [xi_module(2, 0).lattice, yi_module(2, 1).lattice, u0_module(2).lattice]
    return [L for L in pieces if L.rank <= 4]


def klein_pieces():
    G = PGroup.klein(2)
    pieces = [character(G, s) for s in itertools.product((1, -1), repeat=2)]
    pieces += [inflated_regular(G, s) for s in [(-1, 1), (1, -1), (-1, -1)]]
    pieces += [free_module(G), augmentation_ideal(G), contragredient(augmentation_ideal(G))]
    pieces += [klein_lattice("WN", 0), klein_lattice("WNStar", 0), excluded_series("4n", 1)]
    return pieces


def sums_up_to(pieces, max_rank=4, max_terms=3):
    out = []
    for k in range(1, max_terms + 1):
        for combo in itertools.combinations_with_replacement(range(len(pieces)), k):
            parts = [pieces[i] for i in combo]
            if sum(L.rank for L in parts) <= max_rank:
                out.append(parts[0] if k == 1 else direct_sum(*parts))
    return out


def small_lattice_family():
    """Lattices of rank <= 4 over the groups of order <= 4."""
    fam = []
    for p, s in [(2, 1), (3, 1), (2, 2)]:
        fam += sums_up_to(cyclic_pieces(p, s))
    fam += sums_up_to(klein_pieces(), max_terms=2)
    return fam


def random_unimodular(n: int, rng: random.Random, steps: int = 6):
    P = el.identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        c = rng.choice([-2, -1, 1, 2])
        for row in P:
            row[j] += c * row[i]
    return P


def scrambled(L: GLattice, seed: int) -> GLattice:
    return conjugate(L, random_unimodular(L.rank, random.Random(seed)))
