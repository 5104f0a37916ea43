"""Prime and maximal spectra, Zariski closed sets and the topology on Max(M)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .algebra import (
    FinModule,
    IdealOfRing,
    Ring,
    Submodule,
    intersect,
    intersect_all,
    is_prime,
    prime_factors,
    radical,
)


@dataclass(frozen=True)
class PrimeWitness:
    """A prime submodule ``P`` together with the prime ``p`` with ``(P:M) = pR``."""

    submodule: Submodule
    witness_prime: int


@dataclass(frozen=True)
class MaxSubset:
    """A set ``T`` of maximal submodules of ``parent``."""

    parent: FinModule
    members: frozenset[Submodule]

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        maximal = set(max_spec(self.parent))
        if not self.members <= maximal:
            raise ValueError("subset contains submodules that are not maximal")

    @classmethod
    def all(cls, M: FinModule) -> MaxSubset:
        return cls(M, frozenset(max_spec(M)))

    def __iter__(self):
        return iter(sorted(self.members, key=lambda s: s.index))

    def __len__(self):
        return len(self.members)

    @property
    def indices(self) -> list[int]:
        return sorted(s.index for s in self.members)


def _members(T) -> frozenset[Submodule]:
    return T.members if isinstance(T, MaxSubset) else frozenset(T)


@lru_cache(maxsize=4096)
def spec(M: FinModule) -> list[PrimeWitness]:
    """Prime submodules: proper ``P`` with ``pM ⊆ P`` for a prime ``p``."""
    return [PrimeWitness(P, P.colon_divisor) for P in M.submodules()
            if P.is_proper and is_prime(P.colon_divisor)]


@lru_cache(maxsize=4096)
def max_spec(M: FinModule) -> list[Submodule]:
    """Maximal submodules, i.e. the submodules of prime index."""
    return [Q for Q in M.submodules() if is_prime(M.order // Q.order)]


def vm_closed(N: Submodule) -> frozenset[Submodule]:
    """Maximal ``Q`` with ``(Q:M) ⊇ (N:M)``."""
    e = N.colon_divisor
    return frozenset(Q for Q in max_spec(N.parent) if e % Q.colon_divisor == 0)


def v_closed(N: Submodule) -> frozenset[PrimeWitness]:
    """Prime ``P`` with ``(P:M) ⊇ (N:M)``."""
    e = N.colon_divisor
    return frozenset(w for w in spec(N.parent) if e % w.witness_prime == 0)


def im_of(T) -> Submodule:
    """Intersection of the members of a non-empty ``T``."""
    members = _members(T)
    if not members:
        raise ValueError("empty subset")
    M = next(iter(members)).parent
    return intersect_all(members, M)


def jm_radical(N: Submodule) -> Submodule:
    """Intersection of ``Vᵐ(N)``; ``M`` when that set is empty."""
    return intersect_all(vm_closed(N), N.parent)


def jm_radical_ideal(I: IdealOfRing) -> IdealOfRing:
    """Intersection of the maximal ideals containing ``I``."""
    return IdealOfRing(I.ring, radical(I.divisor))


def prime_radical(N: Submodule) -> Submodule:
    """Intersection of the prime submodules containing ``N`` (``M`` if none)."""
    M = N.parent
    return intersect_all((w.submodule for w in spec(M) if N <= w.submodule), M)


def rad(M: FinModule) -> Submodule:
    return intersect_all((w.submodule for w in spec(M)), M)


# -- topology on Max(M) ----------------------------------------------------

@lru_cache(maxsize=4096)
def closed_sets(M: FinModule) -> frozenset[frozenset[Submodule]]:
    """All closed subsets ``Vᵐ(N)`` of ``Max(M)``."""
    return frozenset(vm_closed(N) for N in M.submodules())


def is_closed(T) -> bool:
    members = _members(T)
    M = next(iter(members)).parent
    return members in closed_sets(M)


def closure(T) -> MaxSubset:
    members = _members(T)
    M = next(iter(members)).parent
    return MaxSubset(M, vm_closed(im_of(members)))


def relative_closed_sets(T) -> set[frozenset[Submodule]]:
    members = _members(T)
    M = next(iter(members)).parent
    return {members & C for C in closed_sets(M)}


def is_irreducible(T) -> bool:
    """No cover of ``T`` by two relatively closed proper subsets."""
    members = _members(T)
    proper = [C for C in relative_closed_sets(members) if C != members]
    return not any(A | B == members for A, B in combinations(proper, 2))


def is_connected_subspace(T) -> bool:
    """No partition of ``T`` into two non-empty relatively closed sets."""
    members = _members(T)
    parts = [C for C in relative_closed_sets(members) if C and C != members]
    return not any(A | B == members and not A & B for A, B in combinations(parts, 2))


def topology_report(M: FinModule) -> dict:
    """Closed, irreducible and connected subsets of ``Max(M)`` by submodule index."""
    maximal = max_spec(M)
    subsets = [frozenset(c) for r in range(1, len(maximal) + 1)
               for c in combinations(maximal, r)]

    def idx(T):
        return sorted(s.index for s in T)

    return {
        "closed_subsets": sorted(idx(C) for C in closed_sets(M)),
        "irreducible_subsets": [idx(T) for T in subsets if is_irreducible(T)],
        "connected_subsets": [idx(T) for T in subsets if is_connected_subspace(T)],
    }


# -- natural map ----------------------------------------------------------

def ring_module(M: FinModule) -> FinModule | None:
    """``R/Ann(M)`` as a module over itself (``None`` for the zero module)."""
    e = M.exponent
    return FinModule(Ring(e), (e,)) if e > 1 else None


def natural_map(M: FinModule) -> dict[Submodule, Submodule]:
    """``Q ↦ (Q:M)/Ann(M)`` as a maximal submodule of ``R/Ann(M)``."""
    Rbar = ring_module(M)
    if Rbar is None:
        return {}
    return {Q: Rbar.multiple(Q.colon_divisor) for Q in max_spec(M)}


def is_max_surjective(M: FinModule) -> bool:
    if M.order == 1:
        return True
    hit = {Q.colon_divisor for Q in max_spec(M)}
    return hit == set(prime_factors(M.exponent))


def is_quotient_max_surjective(N: Submodule) -> bool:
    """Whether ``M/N`` is Max-surjective, read off the maximal submodules above ``N``.

    Maximal submodules of ``M/N`` are ``Q/N`` with ``N ⊆ Q`` and ``(Q/N : M/N) = (Q:M)``.
    """
    if not N.is_proper:
        return True
    hit = {Q.colon_divisor for Q in max_spec(N.parent) if N <= Q}
    return hit == set(prime_factors(N.colon_divisor))


def is_natural_map_homeomorphism(M: FinModule) -> bool:
    psi = natural_map(M)
    Rbar = ring_module(M)
    if Rbar is None:
        return True
    if len(set(psi.values())) != len(psi) or set(psi.values()) != set(max_spec(Rbar)):
        return False
    inverse = {v: k for k, v in psi.items()}
    ring_closed = closed_sets(Rbar)
    forward = all(frozenset(psi[Q] for Q in C) in ring_closed for C in closed_sets(M))
    backward = all(frozenset(inverse[Q] for Q in C) in closed_sets(M) for C in ring_closed)
    return forward and backward


def semi_maximal_submodules(M: FinModule) -> list[Submodule]:
    """Intersections of non-empty finite families of maximal submodules."""
    found = set(max_spec(M))
    frontier = set(found)
    while frontier:
        new = {intersect(a, b) for a in frontier for b in max_spec(M)} - found
        found |= new
        frontier = new
    return sorted(found, key=lambda s: s.index)


def idempotents_nontrivial(quotient_ring: int | Ring | IdealOfRing) -> bool:
    """Whether ``Z/m`` (``m = 0`` meaning ``Z``) has idempotents besides 0 and 1.

    An ideal ``I`` stands for the quotient ring ``R/I``.
    """
    if isinstance(quotient_ring, IdealOfRing):
        m = quotient_ring.divisor
    elif isinstance(quotient_ring, Ring):
        m = quotient_ring.modulus
    else:
        m = quotient_ring
    return m != 0 and len(prime_factors(m)) >= 2
