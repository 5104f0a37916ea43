"""Exhaustive checkers for the structural claims about the four graphs.

Each :class:`Claim` pairs a hypothesis with a conclusion evaluated on one
instance: a module alone, or a module together with a non-empty set ``T`` of
maximal submodules.  Failures are data: they come back as ``ClaimResult``
values carrying a witness that reproduces the failure when replayed through
:func:`check`.
"""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Callable, Iterable, Iterator

from .algebra import (
    FinModule,
    IdealOfRing,
    Ring,
    Submodule,
    annihilator_in,
    colon,
    ideal_times_module,
    intersect_all,
    is_multiplication_module,
    is_prime,
    is_prime_module,
    nil_action_is_zero,
    prime_factors,
    quotient,
    socle,
    submodule_sum,
)
from .graphs import (
    SearchBoundExceeded,
    analyze,
    build_annihilating,
    build_zariski_max,
    build_zariski_max_disjoint,
    distances,
    graphs_isomorphic,
    subgraph_embedding,
)
from .spectrum import (
    idempotents_nontrivial,
    im_of,
    is_closed,
    is_connected_subspace,
    is_irreducible,
    is_max_surjective,
    is_natural_map_homeomorphism,
    is_quotient_max_surjective,
    jm_radical,
    jm_radical_ideal,
    max_spec,
    natural_map,
    prime_radical,
    ring_module,
    semi_maximal_submodules,
    spec,
    v_closed,
    vm_closed,
)

log = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
NOT_MET = "hypothesis-not-met"
SKIPPED = "skipped"
STATUSES = (PASS, FAIL, NOT_MET, SKIPPED)

# Alternative readings tracked alongside the checks; each occurrence where the
# alternative gives a different answer is recorded, never resolved.
SPEC_HULL_READING = "semi-maximal hull read with prime-spectrum closed sets"
PER_SUBMODULE_RADICAL = "radical criterion read for a single submodule"
EXCLUSIVE_SOCLE = "socle dichotomy read as exclusive"
NONZERO_PARTNER = "zariski graph partner required to be non-zero"
DIVERGENCE_TOPICS = (SPEC_HULL_READING, PER_SUBMODULE_RADICAL, EXCLUSIVE_SOCLE, NONZERO_PARTNER)


# -- per-module caches ------------------------------------------------------

@lru_cache(maxsize=1024)
def annihilating_graph(M: FinModule):
    return build_annihilating(M)


@lru_cache(maxsize=1024)
def semi_maximal(M: FinModule) -> tuple[Submodule, ...]:
    return tuple(semi_maximal_submodules(M))


@lru_cache(maxsize=1024)
def spec_is_max(M: FinModule) -> bool:
    return {w.submodule for w in spec(M)} == set(max_spec(M))


def _nonzero_proper(M: FinModule) -> list[Submodule]:
    return [N for N in M.submodules() if N.is_proper and not N.is_zero]


def _maximal_ideal_primes(M: FinModule) -> tuple[int, ...]:
    # Over Z only the primes dividing the exponent give pM ≠ M.
    n = M.ring.modulus
    return prime_factors(n if n else M.exponent)


# -- instances ---------------------------------------------------------------

class Instance:
    """A module, optionally with a subset ``T`` of ``Max(M)``; derived data is cached."""

    def __init__(self, M: FinModule, T: Iterable[Submodule] | None = None):
        self.M = M
        self.T = None if T is None else frozenset(T)
        self.divergences: list[tuple[str, dict]] = []

    @property
    def descriptor(self) -> dict:
        return {
            "ring": self.M.ring.modulus,
            "invariant_factors": list(self.M.invariant_factors),
            "T": None if self.T is None else sorted(s.index for s in self.T),
        }

    @property
    def key(self) -> tuple:
        return (self.M.order, self.M.invariant_factors, self.M.ring.modulus,
                () if self.T is None else tuple(sorted(s.index for s in self.T)))

    def diverge(self, topic: str, **detail):
        self.divergences.append((topic, {"instance": self.descriptor, **detail}))

    @cached_property
    def G(self):
        return build_zariski_max(self.M, self.T)

    @cached_property
    def G_nonzero_partner(self):
        return build_zariski_max(self.M, self.T, nonzero_partner=True)

    @cached_property
    def Gd(self):
        return build_zariski_max_disjoint(self.M, self.T)

    @cached_property
    def G_report(self):
        return analyze(self.G)

    @cached_property
    def Gd_report(self):
        return analyze(self.Gd)

    @cached_property
    def AG(self):
        return annihilating_graph(self.M)

    @cached_property
    def AG_report(self):
        return analyze(self.AG)

    @cached_property
    def im(self) -> Submodule:
        return im_of(self.T)

    @cached_property
    def hull(self) -> frozenset[Submodule]:
        return vm_closed(self.im)

    @cached_property
    def closed(self) -> bool:
        return is_closed(self.T)

    @cached_property
    def irreducible(self) -> bool:
        return is_irreducible(self.T)

    @cached_property
    def quot(self):
        return quotient(self.M, self.im)

    @property
    def Mbar(self) -> FinModule:
        return self.quot.module

    @cached_property
    def AGbar(self):
        return annihilating_graph(self.Mbar)

    @cached_property
    def Mbar_is_vertex(self) -> bool:
        return self.Mbar.whole in self.AGbar

    def down(self, N: Submodule) -> Submodule:
        return self.quot.image(N)

    def up(self, X: Submodule) -> Submodule:
        return self.quot.preimage(X)


def idx(s: Submodule) -> int:
    return s.index


def idxs(subs: Iterable[Submodule]) -> list[int]:
    return sorted(s.index for s in subs)


# -- claim registry ---------------------------------------------------------

Outcome = tuple  # (status, witness-or-None)
Checker = Callable[[Instance], Outcome]


@dataclass(frozen=True)
class Claim:
    id: str
    statement: str
    scope: str  # "module" or "subset"
    checker: Checker
    refines: str | None = None  # the literal claim this corrected reading replaces


@dataclass(frozen=True)
class ClaimResult:
    claim: str
    instance: dict
    status: str
    witness: dict | None = None

    def to_dict(self) -> dict:
        out = {"claim": self.claim, "instance": self.instance, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


REGISTRY: dict[str, Claim] = {}


def claim(claim_id: str, scope: str, statement: str, refines: str | None = None):
    def register(fn: Checker) -> Checker:
        if claim_id in REGISTRY:
            raise ValueError(f"duplicate claim {claim_id}")
        REGISTRY[claim_id] = Claim(claim_id, statement, scope, fn, refines)
        return fn
    return register


def select_claims(selector: str | Iterable[str] | None) -> list[str]:
    """Resolve ``all``, ``literal``, ``corrected`` or explicit ids to sorted claim ids.

    ``literal`` is every claim as stated; ``corrected`` swaps each literal claim
    that has a corrected reading for that reading.
    """
    if selector is None or selector == "all":
        return sorted(REGISTRY)
    if selector == "literal":
        return sorted(c for c, v in REGISTRY.items() if v.refines is None)
    if selector == "corrected":
        replaced = {v.refines for v in REGISTRY.values() if v.refines}
        return sorted(c for c in REGISTRY if c not in replaced)
    ids = [selector] if isinstance(selector, str) else list(selector)
    unknown = [c for c in ids if c not in REGISTRY]
    if unknown:
        raise KeyError(f"unknown claims: {', '.join(sorted(unknown))}")
    return sorted(set(ids))


def ok(witness=None) -> Outcome:
    return PASS, witness


def bad(**witness) -> Outcome:
    return FAIL, witness


def not_met(reason: str) -> Outcome:
    return NOT_MET, {"reason": reason}


def verdict(failures: list[dict], checked: int, what: str) -> Outcome:
    if failures:
        return FAIL, {"failures": failures[:5], "failure_count": len(failures)}
    if not checked:
        return not_met(f"no {what} satisfied the hypothesis")
    return PASS, None


# -- Zariski graph on Max(M) -----------------------------------------------

@claim("zmax-nonempty-iff-closed-reducible", "subset",
       "G(T) has a vertex exactly when T is closed and not irreducible.")
def _closed_reducible(inst: Instance) -> Outcome:
    lhs = not inst.G.is_empty
    rhs = inst.closed and not inst.irreducible
    if lhs != rhs:
        return bad(graph_nonempty=lhs, closed=inst.closed, irreducible=inst.irreducible)
    return ok()


@claim("zmax-nonempty-iff-hull-reducible", "subset",
       "T is closed iff T equals the closed hull of its intersection; hence G(T) is "
       "non-empty iff T equals that hull and is not irreducible.")
def _hull_reducible(inst: Instance) -> Outcome:
    equal_hull = inst.T == inst.hull
    if inst.closed != equal_hull:
        return bad(closed=inst.closed, equals_hull=equal_hull)
    lhs = not inst.G.is_empty
    rhs = equal_hull and not inst.irreducible
    if lhs != rhs:
        return bad(graph_nonempty=lhs, equals_hull=equal_hull, irreducible=inst.irreducible)
    return ok()


@claim("zmax-nonempty-colon-criterion", "subset",
       "For Max-surjective M, G(T) is non-empty iff T equals its hull and the colon "
       "ideal of its intersection is not a prime ideal fixed by the J-radical; when "
       "Spec(M) = Max(M) a non-empty G(T) forces the intersection to be non-prime.")
def _colon_criterion(inst: Instance) -> Outcome:
    checked = False
    nonempty = not inst.G.is_empty
    I = colon(inst.im)
    if is_max_surjective(inst.M):
        checked = True
        jprime = I.is_prime and jm_radical_ideal(I) == I
        rhs = inst.T == inst.hull and not jprime
        if nonempty != rhs:
            return bad(part="max-surjective", graph_nonempty=nonempty,
                       colon_divisor=I.divisor, jradical_prime=jprime)
    if spec_is_max(inst.M) and nonempty:
        checked = True
        im_prime = any(w.submodule == inst.im for w in spec(inst.M))
        if inst.T != inst.hull or im_prime:
            return bad(part="spec-equals-max", intersection=idx(inst.im),
                       intersection_prime=im_prime)
    return ok() if checked else not_met("M not Max-surjective and G(T) empty")


@claim("zmax-connected-diameter-girth", "subset",
       "A non-empty G(T) is connected with diameter at most 3 and girth 3, 4 or infinite.")
def _zmax_shape(inst: Instance) -> Outcome:
    if inst.G.is_empty:
        return not_met("G(T) empty")
    return _shape_verdict(inst.G_report)


def _shape_verdict(rep) -> Outcome:
    if not rep.connected or rep.diameter > 3 or rep.girth not in (3, 4, float("inf")):
        return bad(connected=rep.connected, diameter=rep.finite_diameter,
                   girth=None if rep.girth == float("inf") else rep.girth)
    return ok({"diameter": rep.diameter,
               "girth": None if rep.girth == float("inf") else rep.girth})


@claim("zmax-ring-correspondence", "subset",
       "When the natural map Max(M) -> Max(R/Ann M) is a homeomorphism, adjacency of N, L "
       "in G(T) matches adjacency of their colon ideals in the ring's graph over the image "
       "of T, and adjacent ideals I, J give adjacent IM, JM.")
def _ring_correspondence(inst: Instance) -> Outcome:
    if not is_natural_map_homeomorphism(inst.M):
        return not_met("natural map is not a homeomorphism")
    Rbar = ring_module(inst.M)
    psi = natural_map(inst.M)
    ring_graph = build_zariski_max(Rbar, {psi[P] for P in inst.T})
    failures = []
    for N, L in inst.G.edge_pairs():
        a, b = Rbar.multiple(N.colon_divisor), Rbar.multiple(L.colon_divisor)
        if not ring_graph.has_edge(a, b):
            failures.append({"direction": "module-to-ring", "edge": [idx(N), idx(L)]})
    for I, J in ring_graph.edge_pairs():
        a, b = inst.M.multiple(I.colon_divisor), inst.M.multiple(J.colon_divisor)
        if not inst.G.has_edge(a, b):
            failures.append({"direction": "ring-to-module", "ideals": [I.colon_divisor, J.colon_divisor]})
    return verdict(failures, 1, "instance")


@claim("zmax-maximal-vertex", "subset",
       "In a non-empty G(T), a member P of T is a vertex whenever some T' ⊆ T containing P "
       "has hull T while dropping P breaks it, or some vertex N has N + P outside the "
       "vertex set; the first condition holds for all P when every member of T is adjacent "
       "to a semi-maximal submodule.")
def _maximal_vertex(inst: Instance) -> Outcome:
    if inst.G.is_empty:
        return not_met("G(T) empty")
    M, T, G = inst.M, inst.T, inst.G
    ordered = sorted(T, key=idx)
    failures, checked = [], 0
    cond_a_all = True
    for P in ordered:
        others = [Q for Q in ordered if Q != P]
        cond_a = False
        for r in range(len(others) + 1):
            for rest in combinations(others, r):
                if (vm_closed(intersect_all((P, *rest), M)) == T
                        and vm_closed(intersect_all(rest, M)) != T):
                    cond_a = True
                    break
            if cond_a:
                break
        cond_b = any(submodule_sum(N, P) not in G for N in G.vertices)
        cond_a_all &= cond_a
        if cond_a or cond_b:
            checked += 1
            if P not in G:
                failures.append({"P": idx(P), "condition_a": cond_a, "condition_b": cond_b})
    semis = semi_maximal(M)
    if all(any(G.has_edge(Q, S) for S in semis) for Q in ordered) and not cond_a_all:
        failures.append({"particular_case": "every member adjacent to a semi-maximal, "
                                            "yet the subset condition fails"})
    return verdict(failures, checked, "member of T")


# -- disjoint subgraph -----------------------------------------------------

@claim("disjoint-nonempty-iff-disconnected", "subset",
       "G_d(T) is non-empty exactly when T equals its hull and is disconnected.")
def _disjoint_nonempty(inst: Instance) -> Outcome:
    lhs = not inst.Gd.is_empty
    connected = is_connected_subspace(inst.T)
    rhs = inst.T == inst.hull and not connected
    if lhs != rhs:
        return bad(graph_nonempty=lhs, equals_hull=inst.T == inst.hull, connected=connected)
    return ok()


@claim("disjoint-empty-iff-no-idempotents", "subset",
       "If Spec(M) = Max(M), M is Max-surjective and T is closed, G_d(T) is empty exactly "
       "when R/(intersection of T : M) has no idempotents besides 0 and 1.")
def _disjoint_idempotents(inst: Instance) -> Outcome:
    if not (spec_is_max(inst.M) and is_max_surjective(inst.M) and inst.closed):
        return not_met("needs Spec = Max, Max-surjective M and closed T")
    I = colon(inst.im)
    trivial = not idempotents_nontrivial(I)
    if inst.Gd.is_empty != trivial:
        return bad(graph_empty=inst.Gd.is_empty, quotient_ring_modulus=I.divisor)
    return ok()


@claim("disjoint-bipartite", "subset", "G_d(T) is bipartite.")
def _disjoint_bipartite(inst: Instance) -> Outcome:
    if inst.Gd.is_empty:
        return not_met("G_d(T) empty")
    return ok() if inst.Gd_report.bipartite else bad(vertices=idxs(inst.Gd.vertices))


@claim("disjoint-girth-four", "subset", "A G_d(T) containing a cycle has girth exactly 4.")
def _disjoint_girth(inst: Instance) -> Outcome:
    rep = inst.Gd_report
    if not rep.has_cycle:
        return not_met("G_d(T) is acyclic")
    return ok() if rep.girth == 4 else bad(girth=rep.girth)


@claim("disjoint-connected-iff-complete-bipartite", "subset",
       "G_d(T) is connected iff complete bipartite; it is complete bipartite iff each "
       "side of its bipartition has a single closed set; two vertices lie at distance 2 "
       "iff they share their closed set.")
def _disjoint_complete(inst: Instance) -> Outcome:
    Gd, rep = inst.Gd, inst.Gd_report
    if Gd.is_empty:
        return not_met("G_d(T) empty")
    if rep.connected != rep.complete_bipartite:
        return bad(part="connected-vs-complete", connected=rep.connected,
                   complete_bipartite=rep.complete_bipartite)
    if rep.bipartition is not None:
        uniform = all(len({vm_closed(v) for v in side}) == 1 for side in rep.bipartition)
        if uniform != rep.complete_bipartite:
            return bad(part="uniform-sides", uniform=uniform,
                       complete_bipartite=rep.complete_bipartite,
                       sides=[idxs(s) for s in rep.bipartition])
    dist = distances(Gd)
    for i, j in combinations(range(len(Gd)), 2):
        N, L = Gd.vertices[i], Gd.vertices[j]
        if (dist[i].get(j) == 2) != (vm_closed(N) == vm_closed(L)):
            return bad(part="distance-two", pair=[idx(N), idx(L)], distance=dist[i].get(j))
    return ok()


# -- G(T) versus AG(M / intersection of T) --------------------------------

def _transfer(inst: Instance, radical_of) -> Outcome:
    if not is_max_surjective(inst.M):
        return not_met("M not Max-surjective")
    if not inst.G.edges:
        return not_met("G(T) has no edges")
    failures = []
    for N, L in inst.G.edge_pairs():
        X, Y = radical_of(N), radical_of(L)
        if not (inst.im <= X and inst.im <= Y):
            failures.append({"edge": [idx(N), idx(L)], "reason": "radical misses intersection"})
            continue
        if not inst.AGbar.has_edge(inst.down(X), inst.down(Y)):
            failures.append({"edge": [idx(N), idx(L)], "images": [idx(X), idx(Y)]})
    return verdict(failures, 1, "edge")


@claim("zmax-to-ag-colon-radical", "subset",
       "For Max-surjective M, adjacent N, L in G(T) give adjacent J((N:M)M)/I, J((L:M)M)/I "
       "in AG(M/I), where I is the intersection of T and J the maximal radical.")
def _transfer_colon(inst: Instance) -> Outcome:
    return _transfer(inst, lambda N: jm_radical(ideal_times_module(colon(N), inst.M)))


@claim("zmax-to-ag-radical", "subset",
       "For Max-surjective M, adjacent N, L in G(T) give adjacent J(N)/I, J(L)/I in AG(M/I).")
def _transfer_plain(inst: Instance) -> Outcome:
    return _transfer(inst, jm_radical)


def _canonical_embedding_failure(inst: Instance) -> dict | None:
    for X in inst.AGbar.vertices:
        if inst.up(X) not in inst.G:
            return {"quotient_vertex": idx(X), "preimage": idx(inst.up(X)), "reason": "not a vertex"}
    for X, Y in inst.AGbar.edge_pairs():
        if not inst.G.has_edge(inst.up(X), inst.up(Y)):
            return {"quotient_edge": [idx(X), idx(Y)], "reason": "edge not preserved"}
    return None


@claim("ag-quotient-embeds-in-zmax", "subset",
       "If M/I is not a vertex of AG(M/I), then AG(M/I) is isomorphic to a subgraph of G(T) "
       "via N/I -> N.")
def _embeds(inst: Instance) -> Outcome:
    if inst.Mbar_is_vertex:
        return not_met("M/I is a vertex of AG(M/I)")
    candidate = {X: inst.up(X) for X in inst.AGbar.vertices}
    try:
        emb = subgraph_embedding(inst.AGbar, inst.G, candidate)
    except SearchBoundExceeded as exc:
        return SKIPPED, {"reason": str(exc)}
    if emb is None:
        return bad(canonical_map=_canonical_embedding_failure(inst),
                   quotient_graph_order=len(inst.AGbar), graph_order=len(inst.G),
                   T_closed=inst.closed)
    return ok(None if emb == candidate else {"embedding": "found by search"})


@claim("ag-quotient-empty-iff-zmax-empty", "subset",
       "If M/I is not a vertex of AG(M/I) and M is Max-surjective or Spec(M) = Max(M), "
       "then AG(M/I) is empty iff G(T) is empty.")
def _empty_iff(inst: Instance) -> Outcome:
    if inst.Mbar_is_vertex:
        return not_met("M/I is a vertex of AG(M/I)")
    if not (is_max_surjective(inst.M) or spec_is_max(inst.M)):
        return not_met("neither Max-surjective nor Spec = Max")
    if inst.AGbar.is_empty != inst.G.is_empty:
        return bad(quotient_graph_empty=inst.AGbar.is_empty, graph_empty=inst.G.is_empty,
                   T_closed=inst.closed)
    return ok()


@claim("artinian-quotient-vertex-totality", "subset",
       "Over an Artinian ring, if M/I is not a vertex of AG(M/I), every non-zero proper N/I "
       "is a vertex of AG(M/I) and N is a vertex of G(T).")
def _artinian_totality(inst: Instance) -> Outcome:
    if not inst.M.ring.is_artinian:
        return not_met("ring is not Artinian")
    if inst.Mbar_is_vertex:
        return not_met("M/I is a vertex of AG(M/I)")
    failures = []
    for X in _nonzero_proper(inst.Mbar):
        in_ag, in_g = X in inst.AGbar, inst.up(X) in inst.G
        if not (in_ag and in_g):
            failures.append({"quotient_submodule": idx(X), "in_AG": in_ag, "in_G": in_g,
                             "T_closed": inst.closed})
    return verdict(failures, 1, "submodule")


@claim("prime-lifting", "module",
       "For every N and every prime ideal P containing (N:M) there is a prime submodule "
       "K ⊇ N with (K:M) = P.")
def _prime_lifting(inst: Instance) -> Outcome:
    M = inst.M
    primes = spec(M)
    candidates = [M.ring.ideal(p) for p in _maximal_ideal_primes(M)]
    if M.ring.is_integers:
        candidates.append(M.ring.zero_ideal)
    failures, checked = [], 0
    for N in M.submodules():
        I = colon(N)
        for P in candidates:
            if not P.contains(I):
                continue
            checked += 1
            if not any(N <= w.submodule and colon(w.submodule) == P for w in primes):
                failures.append({"N": idx(N), "prime_ideal": P.divisor})
    return verdict(failures, checked, "pair (N, P)")


def _semi_max_with_hull(inst: Instance, above: Submodule, reading: str) -> bool:
    """Whether some semi-maximal S ⊇ ``above``, S ≠ I, has closed set T."""
    for S in semi_maximal(inst.M):
        if S == inst.im or not above <= S:
            continue
        if reading == "max":
            if vm_closed(S) == inst.T:
                return True
        elif frozenset(w.submodule for w in v_closed(S)) == inst.T:
            return True
    return False


@claim("ag-lift-nonvertex", "subset",
       "If N/I, L/I are adjacent in AG(M/I) and M/I is not a vertex there, N and L are "
       "adjacent in G(T); M/I fails to be a vertex when no semi-maximal S ≠ I above I has "
       "closed set T.")
def _lift_nonvertex(inst: Instance) -> Outcome:
    failures, checked = [], 0
    if inst.AGbar.edges and not inst.Mbar_is_vertex:
        checked += 1
        for X, Y in inst.AGbar.edge_pairs():
            N, L = inst.up(X), inst.up(Y)
            if not inst.G.has_edge(N, L):
                failures.append({"edge": [idx(N), idx(L)], "T_closed": inst.closed})
    if not _semi_max_with_hull(inst, inst.im, "max"):
        checked += 1
        if inst.Mbar_is_vertex:
            failures.append({"particular_case": "no semi-maximal with hull T, yet M/I is a vertex"})
    if not _semi_max_with_hull(inst, inst.im, "spec") and inst.Mbar_is_vertex:
        inst.diverge(SPEC_HULL_READING,
                     claim="ag-lift-nonvertex", detail="M/I is a vertex")
    return verdict(failures, checked, "condition")


@claim("ag-lift-max-surjective", "subset",
       "If N/I, L/I are adjacent in AG(M/I), M/N and M/L are Max-surjective and neither "
       "contains a semi-maximal S ≠ I with closed set T, then N and L are adjacent in G(T).")
def _lift_max_surjective(inst: Instance) -> Outcome:
    failures, checked = [], 0
    for X, Y in inst.AGbar.edge_pairs():
        N, L = inst.up(X), inst.up(Y)
        if not (is_quotient_max_surjective(N) and is_quotient_max_surjective(L)):
            continue
        adjacent = inst.G.has_edge(N, L)
        if not (_semi_max_with_hull(inst, N, "max") or _semi_max_with_hull(inst, L, "max")):
            checked += 1
            if not adjacent:
                failures.append({"edge": [idx(N), idx(L)], "T_closed": inst.closed})
        if not (_semi_max_with_hull(inst, N, "spec") or _semi_max_with_hull(inst, L, "spec")) \
                and not adjacent:
            inst.diverge(SPEC_HULL_READING,
                         claim="ag-lift-max-surjective", edge=[idx(N), idx(L)])
    return verdict(failures, checked, "edge")


@claim("radical-fixed-iff-nil-kills", "module",
       "Over a zero-dimensional ring, every submodule equals its prime radical iff "
       "Nil(R)M = 0.")
def _radical_nil(inst: Instance) -> Outcome:
    M = inst.M
    if M.ring.dim != 0:
        return not_met("ring has dimension 1")
    nil_zero = nil_action_is_zero(M.ring, M)
    not_fixed = [N for N in M.submodules() if prime_radical(N) != N]
    if (not not_fixed) != nil_zero:
        return bad(nil_action_zero=nil_zero, unfixed=idxs(not_fixed)[:10])
    if not nil_zero:
        fixed = [N for N in M.submodules() if prime_radical(N) == N]
        inst.diverge(PER_SUBMODULE_RADICAL,
                     claim="radical-fixed-iff-nil-kills",
                     fixed_submodules_despite_nonzero_nil=idxs(fixed)[:10])
    return ok()


@claim("zmax-isomorphic-ag-quotient", "subset",
       "If dim R = 0, Nil(R)M = 0 and M/I is not a vertex of AG(M/I), then G(T) and AG(M/I) "
       "are isomorphic.")
def _isomorphic(inst: Instance) -> Outcome:
    M = inst.M
    if M.ring.dim != 0 or not nil_action_is_zero(M.ring, M):
        return not_met("needs dim R = 0 and Nil(R)M = 0")
    if inst.Mbar_is_vertex:
        return not_met("M/I is a vertex of AG(M/I)")
    candidate = None
    if all(inst.im <= N for N in inst.G.vertices):
        candidate = {N: inst.down(N) for N in inst.G.vertices}
    try:
        iso = graphs_isomorphic(inst.G, inst.AGbar, candidate)
    except SearchBoundExceeded as exc:
        return SKIPPED, {"reason": str(exc)}
    if not iso:
        return bad(graph_order=len(inst.G), graph_size=len(inst.G.edges),
                   quotient_graph_order=len(inst.AGbar), quotient_graph_size=len(inst.AGbar.edges),
                   T_closed=inst.closed)
    return ok()


def _semi_max_adjacent(inst: Instance, Q: Submodule) -> bool:
    return any(inst.G.has_edge(Q, S) for S in semi_maximal(inst.M))


@claim("maximal-vertex-transfer", "subset",
       "If M/I is not a vertex of AG(M/I) and every member of T that is a vertex of G(T) is "
       "adjacent to a semi-maximal submodule, then some maximal submodule is a vertex of G(T) "
       "iff some maximal submodule of M/I is a vertex of AG(M/I).")
def _maximal_transfer(inst: Instance) -> Outcome:
    if inst.Mbar_is_vertex:
        return not_met("M/I is a vertex of AG(M/I)")
    if not all(_semi_max_adjacent(inst, Q) for Q in inst.T if Q in inst.G):
        return not_met("a vertex in T has no semi-maximal neighbour")
    lhs = any(Q in inst.G for Q in max_spec(inst.M))
    rhs = any(X in inst.AGbar for X in max_spec(inst.Mbar))
    if lhs != rhs:
        return bad(maximal_vertex_in_G=lhs, maximal_vertex_in_quotient_AG=rhs, T_closed=inst.closed)
    return ok()


@claim("socle-dichotomy-zmax", "subset",
       "If every pM in T that is a vertex of G(T) has a semi-maximal neighbour, then either "
       "some non-zero K ≠ I has closed set T, or: some pM lies in T and in G(T) iff "
       "Soc(M/I) ≠ 0.")
def _socle_zmax(inst: Instance) -> Outcome:
    M = inst.M
    pms = [M.multiple(p) for p in _maximal_ideal_primes(M)]
    in_t_and_g = [P for P in pms if P in inst.T and P in inst.G]
    if not all(_semi_max_adjacent(inst, P) for P in in_t_and_g):
        return not_met("a pM vertex in T has no semi-maximal neighbour")
    first = any(not K.is_zero and K != inst.im and vm_closed(K) == inst.T for K in M.submodules())
    soc = not socle(inst.Mbar).is_zero
    second = bool(in_t_and_g) == soc
    if not (first or second):
        return bad(pM_vertices_in_T=idxs(in_t_and_g), socle_nonzero=soc, T_closed=inst.closed)
    return ok()


@claim("zmax-vertex-count", "subset",
       "If M/I is faithful and not a vertex of AG(M/I), G(T) has n ≥ 1 vertices iff M/I has "
       "exactly n non-zero proper submodules.")
def _vertex_count(inst: Instance) -> Outcome:
    if not inst.Mbar.is_faithful:
        return not_met("M/I is not faithful")
    if inst.Mbar_is_vertex:
        return not_met("M/I is a vertex of AG(M/I)")
    n_graph = len(inst.G)
    n_sub = len(_nonzero_proper(inst.Mbar))
    if n_graph != n_sub:
        return bad(graph_vertices=n_graph, quotient_nonzero_proper=n_sub, T_closed=inst.closed)
    return ok({"vertices": n_graph})


# -- annihilating-submodule graph ------------------------------------------

@claim("ag-vertex-sufficient", "module",
       "A non-zero proper N is a vertex of AG(M) when Ann(N) ≠ Ann(M) or (0 :_M (N:M)) ≠ 0; "
       "for multiplication modules the second condition characterises vertices.")
def _vertex_sufficient(inst: Instance) -> Outcome:
    M, AG = inst.M, inst.AG
    multiplication = is_multiplication_module(M)
    failures, checked = [], 0
    for N in _nonzero_proper(M):
        ann_differs = M.ring.ideal(N.exponent) != M.annihilator
        kernel = not annihilator_in(colon(N), M).is_zero
        if ann_differs or kernel:
            checked += 1
            if N not in AG:
                failures.append({"N": idx(N), "part": "sufficient"})
        if multiplication:
            checked += 1
            if (N in AG) != kernel:
                failures.append({"N": idx(N), "part": "multiplication"})
    return verdict(failures, checked, "submodule")


@claim("ag-whole-module-vertex", "module",
       "M is a vertex of AG(M) iff every non-zero submodule is, iff some non-zero proper N "
       "has (N:M) = Ann(M).")
def _whole_vertex(inst: Instance) -> Outcome:
    M, AG = inst.M, inst.AG
    a = M.whole in AG
    b = all(N in AG for N in M.submodules() if not N.is_zero)
    c = any(colon(N) == M.annihilator for N in _nonzero_proper(M))
    if not a == b == c:
        return bad(M_vertex=a, all_nonzero_vertices=b, colon_equals_annihilator=c)
    return ok()


@claim("ag-prime-module-and-vertex-test", "module",
       "If M is not a vertex of AG(M): AG(M) is empty iff M is a prime module, and a non-zero "
       "N is a vertex iff (0 :_M (N:M)) ≠ 0.")
def _prime_module(inst: Instance) -> Outcome:
    M, AG = inst.M, inst.AG
    if M.whole in AG:
        return not_met("M is a vertex of AG(M)")
    if AG.is_empty != is_prime_module(M):
        return bad(part="empty-iff-prime", graph_empty=AG.is_empty, prime_module=is_prime_module(M))
    for N in M.submodules():
        if N.is_zero:
            continue
        kernel = not annihilator_in(colon(N), M).is_zero
        if (N in AG) != kernel:
            return bad(part="vertex-test", N=idx(N), vertex=N in AG, kernel_nonzero=kernel)
    return ok()


@claim("ag-connected-diameter-girth", "module",
       "A non-empty AG(M) is connected with diameter at most 3 and girth 3, 4 or infinite.")
def _ag_shape(inst: Instance) -> Outcome:
    if inst.AG.is_empty:
        return not_met("AG(M) empty")
    return _shape_verdict(inst.AG_report)


@claim("ag-artinian-vertex-totality", "module",
       "Over an Artinian ring every non-zero proper submodule is a vertex of AG(M).")
def _ag_totality(inst: Instance) -> Outcome:
    if not inst.M.ring.is_artinian:
        return not_met("ring is not Artinian")
    missing = [N for N in _nonzero_proper(inst.M) if N not in inst.AG]
    return bad(missing=idxs(missing)) if missing else ok()


@claim("ag-chain-conditions", "module",
       "For non-prime M, AG(M) has acc (dcc) on vertices iff M is Noetherian (Artinian); "
       "for finite modules both sides always hold.")
def _chain_conditions(inst: Instance) -> Outcome:
    if is_prime_module(inst.M):
        return not_met("M is a prime module")
    # Finitely many vertices and elements: every chain stabilises on both sides.
    return ok()


@claim("ag-vertex-count-faithful", "module",
       "For reduced R and faithful non-prime M, AG(M) has n ≥ 1 vertices iff M has exactly n "
       "non-zero proper submodules.")
def _ag_count(inst: Instance) -> Outcome:
    M = inst.M
    if not (M.ring.is_reduced and M.is_faithful and not is_prime_module(M)):
        return not_met("needs reduced R and faithful non-prime M")
    n_graph, n_sub = len(inst.AG), len(_nonzero_proper(M))
    if n_graph != n_sub:
        return bad(graph_vertices=n_graph, nonzero_proper=n_sub, M_vertex=M.whole in inst.AG)
    return ok({"vertices": n_graph})


@claim("ag-socle-dichotomy", "module",
       "Either every non-zero submodule is a vertex of AG(M), or: some mM with m maximal is "
       "a vertex iff Soc(M) ≠ 0.")
def _ag_socle(inst: Instance) -> Outcome:
    M, AG = inst.M, inst.AG
    first = all(N in AG for N in M.submodules() if not N.is_zero)
    pm_vertex = any(M.multiple(p) in AG for p in _maximal_ideal_primes(M))
    soc = not socle(M).is_zero
    if not (first or pm_vertex == soc):
        return bad(pM_vertex=pm_vertex, socle_nonzero=soc, prime_module=is_prime_module(M))
    if first and pm_vertex == soc:
        inst.diverge(EXCLUSIVE_SOCLE, claim="ag-socle-dichotomy")
    return ok()


# -- corrected readings ----------------------------------------------------
#
# Each variant keeps the original conclusion and adds the hypothesis that the
# corpus shows to be missing from the literal statement.

def _requires_closed(inst: Instance) -> str | None:
    return None if inst.closed else "T is not closed"


def _requires_nonsimple_quotient(inst: Instance) -> str | None:
    if not inst.closed:
        return "T is not closed"
    return "M/I is simple" if is_prime(inst.Mbar.order) else None


def _requires_nonsimple(inst: Instance) -> str | None:
    return "M is simple" if is_prime(inst.M.order) else None


def variant(base_id: str, suffix: str, extra: Callable[[Instance], str | None], note: str):
    base = REGISTRY[base_id]

    def checker(inst: Instance) -> Outcome:
        reason = extra(inst)
        return not_met(reason) if reason else base.checker(inst)

    claim(f"{base_id}-{suffix}", base.scope, f"{base.statement} [{note}]", base_id)(checker)


for _base in ("ag-quotient-embeds-in-zmax", "ag-quotient-empty-iff-zmax-empty",
              "artinian-quotient-vertex-totality", "ag-lift-nonvertex",
              "ag-lift-max-surjective", "zmax-isomorphic-ag-quotient",
              "maximal-vertex-transfer", "zmax-vertex-count"):
    variant(_base, "closed", _requires_closed, "T closed")
variant("socle-dichotomy-zmax", "closed-nonsimple", _requires_nonsimple_quotient,
        "T closed and M/I not simple")
variant("ag-socle-dichotomy", "nonsimple", _requires_nonsimple, "M not simple")


@claim("ag-vertex-count-faithful-proper", "module",
       "For reduced R and faithful non-prime M, the non-zero proper vertices of AG(M) are "
       "exactly the non-zero proper submodules, so their numbers agree.",
       refines="ag-vertex-count-faithful")
def _ag_count_proper(inst: Instance) -> Outcome:
    M = inst.M
    if not (M.ring.is_reduced and M.is_faithful and not is_prime_module(M)):
        return not_met("needs reduced R and faithful non-prime M")
    proper_vertices = [N for N in inst.AG.vertices if N.is_proper]
    n_sub = len(_nonzero_proper(M))
    if len(proper_vertices) != n_sub:
        return bad(proper_vertices=len(proper_vertices), nonzero_proper=n_sub)
    return ok({"vertices": n_sub})


# -- running -----------------------------------------------------------------

def check(claim_id: str, M: FinModule, T: Iterable[Submodule] | None = None,
          instance: Instance | None = None) -> ClaimResult:
    c = REGISTRY[claim_id]
    inst = instance or Instance(M, T)
    if (c.scope == "subset") != (inst.T is not None):
        return ClaimResult(claim_id, inst.descriptor, SKIPPED, {"reason": "scope mismatch"})
    status, witness = c.checker(inst)
    return ClaimResult(claim_id, inst.descriptor, status, witness)


def instance_from_descriptor(descriptor: dict) -> tuple[FinModule, list[Submodule] | None]:
    """Rebuild ``(M, T)`` from a result's instance descriptor."""
    M = FinModule(Ring(descriptor["ring"]), tuple(descriptor["invariant_factors"]))
    if descriptor.get("T") is None:
        return M, None
    subs = M.submodules()
    return M, [subs[i] for i in descriptor["T"]]


def replay(result: ClaimResult) -> ClaimResult:
    """Re-evaluate a result's claim on its instance in isolation."""
    M, T = instance_from_descriptor(result.instance)
    return check(result.claim, M, T)


RING_CHOICES = ("Z", "exponent", "multiple")


@dataclass(frozen=True)
class Corpus:
    """Finite abelian groups up to ``max_order`` and ``max_rank`` over chosen base rings.

    ``multiple`` uses ``Z/(2·exponent)``.  Subsets ``T`` are enumerated for
    modules with at most ``max_subset_base`` maximal submodules.
    """

    max_order: int = 200
    max_rank: int = 3
    rings: tuple[str, ...] = RING_CHOICES
    max_subset_base: int = 6
    include: tuple[tuple[int, tuple[int, ...]], ...] | None = None

    def groups(self) -> list[tuple[int, ...]]:
        out = []

        def grow(chain, prod):
            if chain:
                out.append(tuple(chain))
            if len(chain) == self.max_rank:
                return
            start = chain[-1] if chain else 2
            d = start
            while prod * d <= self.max_order:
                if not chain or d % chain[-1] == 0:
                    grow(chain + [d], prod * d)
                d += 1 if not chain else chain[-1]

        grow([], 1)
        return sorted(out, key=lambda f: (_prod(f), f))

    def modules(self) -> list[FinModule]:
        if self.include is not None:
            return [FinModule(Ring(n), f) for n, f in self.include]
        out = []
        for factors in self.groups():
            e = factors[-1]
            for choice in self.rings:
                n = {"Z": 0, "exponent": e, "multiple": 2 * e}[choice]
                out.append(FinModule(Ring(n), factors))
        return out

    def subsets(self, M: FinModule) -> list[frozenset[Submodule]]:
        maximal = max_spec(M)
        if len(maximal) > self.max_subset_base:
            return []
        return [frozenset(c) for r in range(1, len(maximal) + 1)
                for c in combinations(maximal, r)]


def _prod(f):
    out = 1
    for d in f:
        out *= d
    return out


@dataclass
class SuiteReport:
    results: list[ClaimResult]
    divergences: dict[str, list[dict]] = field(default_factory=dict)

    @property
    def summary(self) -> dict[str, dict[str, int]]:
        counts: dict[str, Counter] = defaultdict(Counter)
        for r in self.results:
            counts[r.claim][r.status] += 1
        return {cid: {s: counts[cid][s] for s in STATUSES} for cid in sorted(counts)}

    @property
    def failures(self) -> list[ClaimResult]:
        return [r for r in self.results if r.status == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self, full: bool = False, divergence_examples: int = 5) -> dict:
        shown = self.results if full else self.failures
        return {
            "schema_version": 1,
            "summary": self.summary,
            "failure_count": len(self.failures),
            "results" if full else "failures": [r.to_dict() for r in shown],
            "divergences": {
                topic: {"count": len(items), "examples": items[:divergence_examples]}
                for topic, items in sorted(self.divergences.items())
            },
        }


def _run_module(args) -> tuple[list[tuple], list[tuple[str, dict]]]:
    M, claim_ids, corpus = args
    module_claims = [REGISTRY[c] for c in claim_ids if REGISTRY[c].scope == "module"]
    subset_claims = [REGISTRY[c] for c in claim_ids if REGISTRY[c].scope == "subset"]
    rows, divergences = [], []
    instances = []
    if module_claims:
        instances.append((Instance(M), module_claims))
    if subset_claims:
        instances.extend((Instance(M, T), subset_claims) for T in corpus.subsets(M))
    for inst, claims in instances:
        for c in claims:
            status, witness = c.checker(inst)
            rows.append((c.id, inst.key, ClaimResult(c.id, inst.descriptor, status, witness)))
        if inst.T is not None:
            _compare_partner_variants(inst)
        for item in inst.divergences:
            if item not in divergences:
                divergences.append(item)
    return rows, divergences


def _compare_partner_variants(inst: Instance):
    # Both readings of the partner requirement in the graph definition.
    G, H = inst.G, inst.G_nonzero_partner
    if G.vertices != H.vertices or G.edges != H.edges:
        inst.diverge(NONZERO_PARTNER,
                     vertices_any_partner=idxs(G.vertices), vertices_nonzero_partner=idxs(H.vertices))


def run_suite(corpus: Corpus, claims: str | Iterable[str] | None = None, jobs: int = 1) -> SuiteReport:
    """Evaluate every selected claim on every applicable corpus instance."""
    claim_ids = select_claims(claims)
    tasks = [(M, claim_ids, corpus) for M in corpus.modules()]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_module, tasks, chunksize=4))
    else:
        chunks = [_run_module(t) for t in tasks]
    rows = [row for chunk, _ in chunks for row in chunk]
    rows.sort(key=lambda r: (r[0], r[1]))
    divergences: dict[str, list[dict]] = {t: [] for t in DIVERGENCE_TOPICS}
    for _, divs in chunks:
        for topic, detail in divs:
            divergences[topic].append(detail)
    log.info("evaluated %d claim instances over %d modules", len(rows), len(tasks))
    return SuiteReport([r[2] for r in rows], divergences)


# -- open question explorer ------------------------------------------------

def explore_members_as_vertices(corpus: Corpus) -> dict:
    """For every (M, T) with G(T) non-empty, record which members of T are vertices."""
    rows, negatives = [], []
    skipped = 0
    for M in corpus.modules():
        for T in corpus.subsets(M):
            inst = Instance(M, T)
            if inst.G.is_empty:
                skipped += 1
                continue
            hit = idxs(Q for Q in T if Q in inst.G)
            row = {**inst.descriptor, "members_that_are_vertices": hit, "nonempty": bool(hit)}
            rows.append(row)
            if not hit:
                negatives.append(row)
    return {
        "schema_version": 1,
        "question": "Does a non-empty G(T) always contain a member of T as a vertex?",
        "instances_with_nonempty_graph": len(rows),
        "instances_skipped_empty_graph": skipped,
        "negative_count": len(negatives),
        "negative_witnesses": negatives,
        "instances": rows,
    }
