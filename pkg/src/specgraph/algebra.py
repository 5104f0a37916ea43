"""Finite modules over Z and Z/nZ, their submodule lattices and ideal calculus.

A module is a finite abelian group given by invariant factors
``d1 | d2 | ... | dk`` together with the base ring acting on it.  Elements
are stored as integers in mixed radix (first coordinate most significant),
so sorting the integer codes sorts the coordinate tuples lexicographically.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce
from itertools import product as cartesian
from typing import Iterable, Sequence

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp

DEFAULT_MAX_ORDER = 4096
MAX_ORDER_ENV = "SPECGRAPH_MAX_ORDER"


class AlgebraError(ValueError):
    pass


class BoundExceeded(AlgebraError):
    pass


def max_order() -> int:
    """Enumeration bound, overridable through ``SPECGRAPH_MAX_ORDER``."""
    raw = os.environ.get(MAX_ORDER_ENV)
    return int(raw) if raw else DEFAULT_MAX_ORDER


# -- integer helpers ---------------------------------------------------------

@lru_cache(maxsize=None)
def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct primes dividing ``n`` in increasing order (empty for 0 and 1)."""
    n = abs(n)
    out = []
    p = 2
    while n > 1 and p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def radical(n: int) -> int:
    if n == 0:
        return 0
    return math.prod(prime_factors(n))


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == (n,)


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    return tuple(d for d in range(1, n + 1) if n % d == 0)


def valuation(n: int, p: int) -> int:
    k = 0
    while n and n % p == 0:
        n //= p
        k += 1
    return k


# -- rings and ideals --------------------------------------------------------

@dataclass(frozen=True)
class Ring:
    """``Z`` when ``modulus == 0``, otherwise ``Z/modulus``."""

    modulus: int = 0

    def __post_init__(self):
        if self.modulus < 0 or self.modulus == 1:
            raise AlgebraError(f"invalid ring modulus {self.modulus}")

    @property
    def is_integers(self) -> bool:
        return self.modulus == 0

    @property
    def dim(self) -> int:
        return 1 if self.modulus == 0 else 0

    @property
    def is_artinian(self) -> bool:
        return self.modulus != 0

    @property
    def is_reduced(self) -> bool:
        return self.modulus == 0 or radical(self.modulus) == self.modulus

    def ideal(self, divisor: int) -> IdealOfRing:
        return IdealOfRing(self, divisor)

    @property
    def unit_ideal(self) -> IdealOfRing:
        return IdealOfRing(self, 1)

    @property
    def zero_ideal(self) -> IdealOfRing:
        return IdealOfRing(self, self.modulus)

    def __str__(self):
        return "Z" if self.modulus == 0 else f"Z/{self.modulus}"


@dataclass(frozen=True)
class IdealOfRing:
    """The ideal generated by ``divisor``.

    Over ``Z/n`` the divisor is normalised to ``gcd(divisor, n)``, so the zero
    ideal has divisor ``n``; over ``Z`` the zero ideal has divisor 0.
    """

    ring: Ring
    divisor: int

    def __post_init__(self):
        n = self.ring.modulus
        d = abs(self.divisor)
        if n:
            d = math.gcd(d, n)
        object.__setattr__(self, "divisor", d)

    def __contains__(self, r: int) -> bool:
        if self.divisor == 0:
            return r == 0
        return r % self.divisor == 0

    def contains(self, other: IdealOfRing) -> bool:
        """Ideal inclusion ``other ⊆ self``."""
        return other.divisor in self

    def __mul__(self, other: IdealOfRing) -> IdealOfRing:
        return IdealOfRing(self.ring, self.divisor * other.divisor)

    def __add__(self, other: IdealOfRing) -> IdealOfRing:
        return IdealOfRing(self.ring, math.gcd(self.divisor, other.divisor))

    @property
    def is_zero(self) -> bool:
        return self.divisor == self.ring.modulus

    @property
    def is_unit(self) -> bool:
        return self.divisor == 1

    @property
    def is_maximal(self) -> bool:
        return is_prime(self.divisor)

    @property
    def is_prime(self) -> bool:
        if self.ring.is_integers and self.divisor == 0:
            return True
        return is_prime(self.divisor)

    def __str__(self):
        return f"{self.divisor}{self.ring}" if self.ring.modulus else f"{self.divisor}Z"


# -- modules -----------------------------------------------------------------

@dataclass(frozen=True)
class FinModule:
    """A finite abelian group ``⊕ Z/d_i`` viewed as a module over ``ring``."""

    ring: Ring
    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", factors)
        for i, d in enumerate(factors):
            if d < 2:
                raise AlgebraError(f"invariant factor {d} must be at least 2")
            if i and d % factors[i - 1]:
                raise AlgebraError(f"invariant factors {factors} do not form a divisor chain")
            if self.ring.modulus and self.ring.modulus % d:
                raise AlgebraError(f"invariant factor {d} does not divide {self.ring.modulus}")

    @classmethod
    def cyclic(cls, n: int, modulus: int = 0) -> FinModule:
        return cls(Ring(modulus), (n,))

    @classmethod
    def from_spec(cls, spec: dict) -> FinModule:
        try:
            modulus = int(spec.get("ring", {}).get("modulus", 0))
            factors = tuple(spec["module"]["invariant_factors"])
        except (KeyError, TypeError, AttributeError) as exc:
            raise AlgebraError(f"malformed module spec: {exc}") from None
        return cls(Ring(modulus), factors)

    def to_spec(self) -> dict:
        return {
            "ring": {"modulus": self.ring.modulus},
            "module": {"invariant_factors": list(self.invariant_factors)},
        }

    def __str__(self):
        body = " + ".join(f"Z/{d}" for d in self.invariant_factors) or "0"
        return f"{body} over {self.ring}"

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @cached_property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def annihilator(self) -> IdealOfRing:
        return IdealOfRing(self.ring, self.exponent)

    @property
    def is_faithful(self) -> bool:
        return self.annihilator.is_zero

    def p_rank(self, p: int) -> int:
        return sum(1 for d in self.invariant_factors if d % p == 0)

    # element arithmetic on integer codes

    @cached_property
    def _weights(self) -> tuple[int, ...]:
        w, acc = [], 1
        for d in reversed(self.invariant_factors):
            w.append(acc)
            acc *= d
        return tuple(reversed(w))

    @cached_property
    def coords(self) -> tuple[tuple[int, ...], ...]:
        """Coordinate tuple of every element code, in code order."""
        return tuple(cartesian(*(range(d) for d in self.invariant_factors)))

    def encode(self, coords: Sequence[int]) -> int:
        if len(coords) != self.rank:
            raise AlgebraError(f"element {tuple(coords)} has wrong length for {self}")
        return sum((c % d) * w for c, d, w in zip(coords, self.invariant_factors, self._weights))

    def decode(self, x: int) -> tuple[int, ...]:
        return self.coords[x]

    def add(self, x: int, y: int) -> int:
        a, b = self.coords[x], self.coords[y]
        return sum(((u + v) % d) * w
                   for u, v, d, w in zip(a, b, self.invariant_factors, self._weights))

    def scale(self, r: int, x: int) -> int:
        return sum(((r * u) % d) * w
                   for u, d, w in zip(self.coords[x], self.invariant_factors, self._weights))

    def element_order(self, x: int) -> int:
        return reduce(math.lcm,
                      (d // math.gcd(c, d) for c, d in zip(self.coords[x], self.invariant_factors)),
                      1)

    @cached_property
    def basis(self) -> tuple[int, ...]:
        return tuple(self.encode([int(i == j) for j in range(self.rank)]) for i in range(self.rank))

    # submodules

    def span(self, generators: Iterable[int]) -> frozenset[int]:
        members = {0}
        for g in generators:
            members = _extend(self, members, g)
        return frozenset(members)

    def submodule(self, generators: Iterable[Sequence[int] | int]) -> Submodule:
        """Submodule generated by elements given as codes or coordinate tuples."""
        codes = [g if isinstance(g, int) else self.encode(g) for g in generators]
        return self.sub(self.span(codes))

    @property
    def zero(self) -> Submodule:
        return self.sub(frozenset({0}))

    @property
    def whole(self) -> Submodule:
        return self.sub(frozenset(range(self.order)))

    def multiple(self, d: int) -> Submodule:
        """The submodule ``d·M``."""
        return self.sub(self.span(self.scale(d, b) for b in self.basis))

    def submodules(self) -> list[Submodule]:
        return list(self._lattice)

    @cached_property
    def _lattice(self) -> tuple[Submodule, ...]:
        return tuple(enumerate_submodules(self))

    @cached_property
    def _by_members(self) -> dict[frozenset[int], tuple[int, Submodule]]:
        return {s.members: (i, s) for i, s in enumerate(self._lattice)}

    def index_of(self, sub: Submodule) -> int:
        return self._by_members[sub.members][0]

    def sub(self, members: frozenset[int]) -> Submodule:
        """The submodule with the given member set, shared with the enumerated lattice
        once that exists so cached invariants are reused."""
        table = self.__dict__.get("_by_members")
        if table is not None and members in table:
            return table[members][1]
        return Submodule(self, frozenset(members))


def _extend(module: FinModule, members: set[int] | frozenset[int], g: int) -> set[int]:
    """``members + <g>`` for a subgroup ``members``."""
    out = set(members)
    x = g
    while x not in members:
        out.update(module.add(h, x) for h in members)
        x = module.add(x, g)
    return out


class Submodule:
    """A subgroup of a :class:`FinModule`, identified by its member set."""

    __slots__ = ("parent", "members", "_cache")

    def __init__(self, parent: FinModule, members: frozenset[int]):
        self.parent = parent
        self.members = members
        self._cache: dict = {}

    def __eq__(self, other):
        return (isinstance(other, Submodule) and self.members == other.members
                and self.parent == other.parent)

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return "<" + (";".join(",".join(map(str, g)) for g in self.generators) or "0") + ">"

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __le__(self, other: Submodule) -> bool:
        return self.members <= other.members

    def __lt__(self, other: Submodule) -> bool:
        return self.members < other.members

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def is_zero(self) -> bool:
        return len(self.members) == 1

    @property
    def is_proper(self) -> bool:
        return len(self.members) < self.parent.order

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        if "key" not in self._cache:
            self._cache["key"] = (len(self.members), tuple(sorted(self.members)))
        return self._cache["key"]

    @property
    def canonical_key(self) -> list[tuple[int, ...]]:
        return [self.parent.decode(x) for x in self.sort_key[1]]

    @property
    def index(self) -> int:
        return self.parent.index_of(self)

    @property
    def exponent(self) -> int:
        return reduce(math.lcm, (self.parent.element_order(x) for x in self.members), 1)

    @property
    def colon_divisor(self) -> int:
        """Exponent of ``M/N``: least ``e`` with ``e·M ⊆ N``."""
        if "colon" not in self._cache:
            M = self.parent
            self._cache["colon"] = next(
                e for e in divisors(M.exponent)
                if all(M.scale(e, b) in self.members for b in M.basis))
        return self._cache["colon"]

    @property
    def generators(self) -> list[tuple[int, ...]]:
        """An irredundant generating list, as coordinate tuples."""
        if "gens" not in self._cache:
            self._cache["gens"] = [self.parent.decode(g) for g in _minimal_generators(self)]
        return self._cache["gens"]


def _minimal_generators(sub: Submodule) -> list[int]:
    M = sub.parent
    ranked = sorted(sub.members, key=lambda x: (-M.element_order(x), x))
    gens: list[int] = []
    span: set[int] = {0}
    for x in ranked:
        if x not in span:
            gens.append(x)
            span = _extend(M, span, x)
        if len(span) == sub.order:
            break
    for g in list(gens):
        rest = [h for h in gens if h != g]
        if len(M.span(rest)) == sub.order:
            gens = rest
    return gens


# -- lattice enumeration ----------------------------------------------------

def enumerate_submodules(M: FinModule, bound: int | None = None) -> list[Submodule]:
    """Every submodule of ``M`` exactly once, sorted by (order, canonical key)."""
    bound = max_order() if bound is None else bound
    if M.order > bound:
        raise BoundExceeded(f"{M} has {M.order} elements, above the bound {bound}")
    return [Submodule(M, members) for members in _lattice(M.invariant_factors)]


@lru_cache(maxsize=256)
def _lattice(factors: tuple[int, ...]) -> tuple[frozenset[int], ...]:
    # The lattice only depends on the group, so it is shared across base rings.
    M = FinModule(Ring(0), factors)
    if not factors:
        return (frozenset({0}),)
    primary = [_primary_lattice(M, p) for p in prime_factors(M.exponent)]
    found = set()
    for parts in cartesian(*primary):
        members = parts[0]
        for other in parts[1:]:
            members = frozenset(M.add(a, b) for a in members for b in other)
        found.add(members)
    return tuple(sorted(found, key=lambda s: (len(s), sorted(s))))


def _primary_lattice(M: FinModule, p: int) -> list[frozenset[int]]:
    """All subgroups of the ``p``-primary component of ``M``."""
    q = p ** valuation(M.exponent, p)
    cyclics = {M.span([x]) for x in range(M.order) if q % M.element_order(x) == 0}
    cyclics.discard(frozenset({0}))
    seen = {frozenset({0})}
    frontier = [frozenset({0})]
    while frontier:
        nxt = []
        for H in frontier:
            for C in cyclics:
                if C <= H:
                    continue
                J = frozenset(M.add(a, b) for a in H for b in C)
                if J not in seen:
                    seen.add(J)
                    nxt.append(J)
        frontier = nxt
    return list(seen)


# -- lattice operations -----------------------------------------------------

def _same_parent(N: Submodule, K: Submodule) -> FinModule:
    if N.parent != K.parent:
        raise AlgebraError("submodules belong to different modules")
    return N.parent


def colon(N: Submodule, M: FinModule | None = None) -> IdealOfRing:
    """``(N:M) = Ann(M/N)``."""
    M = N.parent if M is None else M
    if N.parent != M:
        raise AlgebraError("submodule is not contained in the given module")
    return IdealOfRing(M.ring, N.colon_divisor)


def product(N: Submodule, K: Submodule) -> Submodule:
    """``(N:M)(K:M)M``."""
    M = _same_parent(N, K)
    return M.multiple(N.colon_divisor * K.colon_divisor)


def submodule_sum(N: Submodule, K: Submodule) -> Submodule:
    M = _same_parent(N, K)
    if N <= K:
        return K
    if K <= N:
        return N
    return M.sub(frozenset(M.add(a, b) for a in N.members for b in K.members))


def intersect(N: Submodule, K: Submodule) -> Submodule:
    M = _same_parent(N, K)
    return M.sub(N.members & K.members)


def intersect_all(subs: Iterable[Submodule], M: FinModule) -> Submodule:
    """Intersection of a family; ``M`` itself for the empty family."""
    members = M.whole.members
    for s in subs:
        members = members & s.members
    return M.sub(members)


def ideal_times_module(I: IdealOfRing, M: FinModule) -> Submodule:
    if I.ring != M.ring:
        raise AlgebraError("ideal and module live over different rings")
    return M.multiple(I.divisor)


def annihilator_in(I: IdealOfRing, M: FinModule) -> Submodule:
    """``(0 :_M I) = {m : I·m = 0}``."""
    return M.sub(frozenset(x for x in range(M.order) if M.scale(I.divisor, x) == 0))


class Quotient:
    """``M/N`` in invariant-factor form together with the lattice correspondence."""

    def __init__(self, M: FinModule, N: Submodule):
        if N.parent != M:
            raise AlgebraError("submodule is not contained in the given module")
        self.source = M
        self.kernel = N
        relations = [[d if i == j else 0 for j in range(M.rank)] for i, d in enumerate(M.invariant_factors)]
        relations += [list(g) for g in N.generators]
        if M.rank:
            A = Matrix(relations).T
            D, U, _ = smith_normal_decomp(A, domain=ZZ)
            diag = [abs(int(D[i, i])) for i in range(M.rank)]
            U = [[int(U[i, j]) for j in range(M.rank)] for i in range(M.rank)]
        else:
            U, diag = None, []
        self._keep = [i for i, s in enumerate(diag) if s != 1]
        self._U = U
        self._diag = diag
        self.module = FinModule(M.ring, tuple(diag[i] for i in self._keep))

    def project(self, x: int) -> int:
        """Image of an element code of ``M`` in the quotient."""
        if not self._keep:
            return 0
        c = self.source.decode(x)
        return self.module.encode(
            [sum(u * v for u, v in zip(self._U[i], c)) % self._diag[i] for i in self._keep])

    def image(self, L: Submodule) -> Submodule:
        """``L/N`` for ``N ⊆ L ⊆ M``."""
        if not self.kernel <= L:
            raise AlgebraError("submodule does not contain the kernel")
        return self.module.sub(frozenset(self.project(x) for x in L.members))

    @cached_property
    def _projection(self) -> tuple[int, ...]:
        return tuple(self.project(x) for x in range(self.source.order))

    def preimage(self, X: Submodule) -> Submodule:
        proj = self._projection
        return self.source.sub(frozenset(x for x in range(self.source.order) if proj[x] in X.members))

    def __iter__(self):
        yield self.module
        yield self.image


@lru_cache(maxsize=4096)
def quotient(M: FinModule, N: Submodule) -> Quotient:
    """``M/N``; unpacks as ``(module, image_map)``."""
    return Quotient(M, N)


def socle(M: FinModule) -> Submodule:
    """Sum of all simple submodules."""
    total = M.zero
    for s in M.submodules():
        if is_prime(s.order):
            total = submodule_sum(total, s)
    return total


def nil_radical(R: Ring) -> IdealOfRing:
    return IdealOfRing(R, radical(R.modulus))


def nil_action_is_zero(R: Ring, M: FinModule) -> bool:
    return ideal_times_module(nil_radical(R), M).is_zero


def is_prime_module(M: FinModule) -> bool:
    """Non-zero with ``0`` a prime submodule, i.e. elementary abelian."""
    return M.order > 1 and is_prime(M.exponent)


def is_multiplication_module(M: FinModule) -> bool:
    return all(ideal_times_module(colon(N), M) == N for N in M.submodules())
