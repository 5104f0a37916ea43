"""Brute-force reference implementations, written directly from the definitions
and independent of the library's shortcuts (element codes, divisor arithmetic)."""

from __future__ import annotations

from functools import lru_cache
from itertools import product as cartesian
from math import gcd


def elements(factors):
    return list(cartesian(*(range(d) for d in factors)))


def add(factors, x, y):
    return tuple((a + b) % d for a, b, d in zip(x, y, factors))


def scale(factors, r, x):
    return tuple((r * a) % d for a, d in zip(x, factors))


def exponent(factors):
    e = 1
    for d in factors:
        e = e * d // gcd(e, d)
    return e


def closure(factors, gens):
    """Smallest subset containing 0 and ``gens`` closed under addition."""
    zero = tuple(0 for _ in factors)
    found = {zero, *gens}
    frontier = list(found)
    while frontier:
        new = []
        for x in frontier:
            for g in list(found):
                s = add(factors, x, g)
                if s not in found:
                    found.add(s)
                    new.append(s)
        frontier = new
    return frozenset(found)


def adjoin(factors, S, g):
    """Subgroup generated by a subgroup ``S`` and one element ``g``."""
    out = set(S)
    x = g
    while x not in S:
        out.update(add(factors, s, x) for s in S)
        x = add(factors, x, g)
    return frozenset(out)


@lru_cache(maxsize=None)
def subgroups(factors):
    """All subgroups, grown from 0 by adjoining one element at a time."""
    factors = tuple(factors)
    elems = elements(factors)
    zero = frozenset({tuple(0 for _ in factors)})
    seen = {zero}
    frontier = [zero]
    while frontier:
        new = []
        for S in frontier:
            covered = set(S)
            for g in elems:
                if g in covered:
                    continue
                covered.update(add(factors, s, g) for s in S)
                T = adjoin(factors, S, g)
                if T not in seen:
                    seen.add(T)
                    new.append(T)
        frontier = new
    return seen


def contains_multiple(factors, r, N):
    return all(scale(factors, r, m) in N for m in elements(factors))


def colon_residues(factors, N):
    """The residues r in 0..exp-1 with rM ⊆ N."""
    return frozenset(r for r in range(exponent(factors)) if contains_multiple(factors, r, N))


def colon_divisor(factors, N):
    """Generator of {r : rM ⊆ N} computed over the residues 0..exp-1."""
    g = exponent(factors)
    for r in colon_residues(factors, N):
        g = gcd(g, r)
    return g


def is_prime_submodule(factors, P):
    """Raw definition: r·x ∈ P forces x ∈ P or rM ⊆ P; P proper."""
    elems = elements(factors)
    if len(P) == len(elems):
        return False
    for r in range(exponent(factors)):
        rM_in_P = contains_multiple(factors, r, P)
        if rM_in_P:
            continue
        for x in elems:
            if x not in P and scale(factors, r, x) in P:
                return False
    return True


def maximal_subgroups(factors):
    subs = subgroups(tuple(factors))
    order = len(elements(factors))
    proper = [S for S in subs if len(S) < order]
    return {S for S in proper if not any(S < T for T in proper)}


def product_members(factors, N, K):
    """Span of ab·m for a ∈ (N:M), b ∈ (K:M), m ∈ M, ideals taken as residue sets."""
    return product_from_ideals(tuple(factors), colon_residues(factors, N),
                               colon_residues(factors, K))


@lru_cache(maxsize=None)
def product_from_ideals(factors, A, B):
    scalars = {a * b for a in A for b in B}
    gens = {scale(factors, s, m) for s in scalars for m in elements(factors)}
    return closure(factors, list(gens))


def to_coords(sub):
    """Member set of a library submodule as coordinate tuples."""
    return frozenset(sub.parent.decode(x) for x in sub.members)
