"""The four submodule graphs and their graph-theoretic invariants."""

from __future__ import annotations

import json
import math
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Sequence

from .algebra import FinModule, Submodule
from .spectrum import MaxSubset, PrimeWitness, max_spec, spec, v_closed, vm_closed

ZARISKI_MAX = "zariski_max"
ZARISKI_SPEC = "zariski_spec"
ZARISKI_MAX_DISJOINT = "zariski_max_disjoint"
ANNIHILATING = "annihilating"
KINDS = (ZARISKI_MAX, ZARISKI_SPEC, ZARISKI_MAX_DISJOINT, ANNIHILATING)

SCHEMA_VERSION = 1
SEARCH_LIMIT = 24


class GraphError(ValueError):
    pass


class EmptySubset(GraphError):
    pass


class SearchBoundExceeded(GraphError):
    pass


class UnsupportedFormat(GraphError):
    pass


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph; edges are position pairs ``(i, j)`` with ``i < j``."""

    vertices: tuple[Hashable, ...]
    edges: frozenset[tuple[int, int]]

    @classmethod
    def from_edges(cls, vertices: Sequence[Hashable], pairs: Iterable[tuple[Hashable, Hashable]]) -> Graph:
        pos = {v: i for i, v in enumerate(vertices)}
        edges = set()
        for a, b in pairs:
            i, j = pos[a], pos[b]
            if i == j:
                raise GraphError("self-loops are not allowed")
            edges.add((min(i, j), max(i, j)))
        return cls(tuple(vertices), frozenset(edges))

    def __len__(self):
        return len(self.vertices)

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @cached_property
    def position(self) -> dict[Hashable, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj = [set() for _ in self.vertices]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return tuple(frozenset(a) for a in adj)

    def __contains__(self, v) -> bool:
        return v in self.position

    def has_edge(self, a, b) -> bool:
        pos = self.position
        return a in pos and b in pos and pos[b] in self.adjacency[pos[a]]

    def neighbors(self, v) -> list:
        return [self.vertices[j] for j in sorted(self.adjacency[self.position[v]])]

    def edge_pairs(self) -> list[tuple]:
        return [(self.vertices[i], self.vertices[j]) for i, j in sorted(self.edges)]


@dataclass(frozen=True)
class SpecGraph(Graph):
    """A graph on submodules of ``module`` built by one of the four constructions."""

    kind: str = ZARISKI_MAX
    module: FinModule | None = None
    subset: tuple[Submodule, ...] | None = None


# -- construction ----------------------------------------------------------

def _subset_members(M: FinModule, T, allowed: Iterable[Submodule]) -> frozenset[Submodule]:
    if isinstance(T, MaxSubset):
        members = T.members
    else:
        members = frozenset(t.submodule if isinstance(t, PrimeWitness) else t for t in T)
    if not members:
        raise EmptySubset("the subset T must be non-empty")
    if not members <= set(allowed):
        raise GraphError("T contains submodules outside the allowed spectrum")
    return members


def _zariski(kind, M, T, closed_of, *, disjoint=False, nonzero_partner=False) -> SpecGraph:
    classes: dict[frozenset, list[Submodule]] = defaultdict(list)
    for N in M.submodules():
        if not N.is_proper:
            continue
        C = closed_of(N)
        if C <= T and C != T:
            classes[C].append(N)
    pairs = []
    for A, B in combinations(sorted(classes, key=lambda c: sorted(s.index for s in c)), 2):
        if A | B != T or (disjoint and A & B):
            continue
        pairs.extend((n, l) for n in classes[A] for l in classes[B])
    if nonzero_partner:
        ok = {n for n, l in pairs if not l.is_zero} | {l for n, l in pairs if not n.is_zero}
        pairs = [(n, l) for n, l in pairs if n in ok and l in ok]
    return _assemble(kind, M, T, pairs)


def _assemble(kind, M, T, pairs, extra_vertices=()) -> SpecGraph:
    vs = {x for p in pairs for x in p} | set(extra_vertices)
    vertices = tuple(sorted(vs, key=lambda s: s.index))
    base = Graph.from_edges(vertices, pairs)
    subset = None if T is None else tuple(sorted(T, key=lambda s: s.index))
    return SpecGraph(base.vertices, base.edges, kind, M, subset)


def build_zariski_max(M: FinModule, T, *, nonzero_partner: bool = False) -> SpecGraph:
    """Vertices: proper ``N`` with a partner ``L ≠ N`` such that
    ``Vᵐ(N) ∪ Vᵐ(L) = T`` while neither set equals ``T``."""
    members = _subset_members(M, T, max_spec(M))
    return _zariski(ZARISKI_MAX, M, members, vm_closed, nonzero_partner=nonzero_partner)


def build_zariski_max_disjoint(M: FinModule, T) -> SpecGraph:
    """As :func:`build_zariski_max` with the two closed sets also disjoint."""
    members = _subset_members(M, T, max_spec(M))
    return _zariski(ZARISKI_MAX_DISJOINT, M, members, vm_closed, disjoint=True)


def build_zariski_spec(M: FinModule, T, *, nonzero_partner: bool = False) -> SpecGraph:
    """The same cover condition with prime-spectrum closed sets ``V``."""
    members = _subset_members(M, T, [w.submodule for w in spec(M)])

    def closed_of(N):
        return frozenset(w.submodule for w in v_closed(N))

    return _zariski(ZARISKI_SPEC, M, members, closed_of, nonzero_partner=nonzero_partner)


def build_annihilating(M: FinModule) -> SpecGraph:
    """Annihilating-submodule graph: ``N ~ L`` iff ``(N:M)(L:M)M = 0``.

    A non-zero ``N`` is a vertex when some non-zero proper ``L`` (possibly
    ``N`` itself) annihilates it, so a vertex with ``N·N = 0`` may be isolated.
    """
    e = M.exponent
    nonzero = [N for N in M.submodules() if not N.is_zero]
    by_colon: dict[int, list[Submodule]] = defaultdict(list)
    for N in nonzero:
        by_colon[N.colon_divisor].append(N)
    proper_colons = {N.colon_divisor for N in nonzero if N.is_proper}
    pairs = []
    vertices = []
    keys = sorted(by_colon)
    for a in keys:
        if any((a * b) % e == 0 for b in proper_colons):
            vertices.extend(by_colon[a])
        for b in keys:
            if b < a or (a * b) % e:
                continue
            if a == b:
                pairs.extend(combinations(by_colon[a], 2))
            else:
                pairs.extend((n, l) for n in by_colon[a] for l in by_colon[b])
    return _assemble(ANNIHILATING, M, None, pairs, vertices)


# -- invariants ------------------------------------------------------------

@dataclass(frozen=True)
class GraphReport:
    connected: bool
    diameter: float
    finite_diameter: int | None
    girth: float
    bipartite: bool
    bipartition: tuple[tuple, tuple] | None
    complete_bipartite: bool
    degrees: dict = field(default_factory=dict)

    @property
    def has_cycle(self) -> bool:
        return self.girth != math.inf

    def to_dict(self, label=lambda v: v) -> dict:
        def num(x):
            return None if x == math.inf else x

        return {
            "connected": self.connected,
            "diameter": num(self.diameter),
            "finite_diameter": self.finite_diameter,
            "girth": num(self.girth),
            "bipartite": self.bipartite,
            "bipartition": None if self.bipartition is None
            else [[label(v) for v in part] for part in self.bipartition],
            "complete_bipartite": self.complete_bipartite,
            "degrees": [[label(v), d] for v, d in self.degrees.items()],
        }


def _bfs(adj, root) -> dict[int, int]:
    dist = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def distances(G: Graph) -> list[dict[int, int]]:
    """Shortest-path lengths from every vertex position."""
    return [_bfs(G.adjacency, i) for i in range(len(G))]


def girth(G: Graph) -> float:
    adj = G.adjacency
    best = math.inf
    for root in range(len(G)):
        dist, parent = {root: 0}, {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def _two_colour(G: Graph) -> dict[int, int] | None:
    adj = G.adjacency
    colour: dict[int, int] = {}
    for root in range(len(G)):
        if root in colour:
            continue
        colour[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return None
    return colour


def analyze(G: Graph) -> GraphReport:
    n = len(G)
    adj = G.adjacency
    degrees = {v: len(adj[i]) for i, v in enumerate(G.vertices)}
    if n == 0:
        return GraphReport(True, math.inf, None, math.inf, True, None, False, degrees)
    dists = distances(G)
    connected = len(dists[0]) == n
    finite = max(max(d.values()) for d in dists)
    diameter = finite if connected else math.inf
    colour = _two_colour(G)
    bipartition = None
    complete = False
    if colour is not None:
        U = tuple(G.vertices[i] for i in range(n) if colour[i] == 0)
        V = tuple(G.vertices[i] for i in range(n) if colour[i] == 1)
        bipartition = (U, V)
        by_count = bool(U and V) and len(G.edges) == len(U) * len(V)
        by_pairs = bool(U and V) and all(G.has_edge(u, v) for u in U for v in V)
        if by_count != by_pairs:
            raise AssertionError("complete-bipartite checks disagree")
        complete = by_count
    return GraphReport(connected, diameter, finite, girth(G), colour is not None,
                       bipartition, complete, degrees)


# -- embeddings ------------------------------------------------------------

def _preserves_edges(G1: Graph, G2: Graph, mapping: dict) -> bool:
    if len(set(mapping.values())) != len(mapping) or set(mapping) != set(G1.vertices):
        return False
    if not all(v in G2 for v in mapping.values()):
        return False
    return all(G2.has_edge(mapping[a], mapping[b]) for a, b in G1.edge_pairs())


def _search(G1: Graph, G2: Graph, bijective: bool) -> dict | None:
    n1, n2 = len(G1), len(G2)
    if n1 > n2 or (bijective and n1 != n2) or len(G1.edges) > len(G2.edges):
        return None
    if n1 > SEARCH_LIMIT:
        raise SearchBoundExceeded(f"embedding search limited to {SEARCH_LIMIT} vertices, got {n1}")
    a1, a2 = G1.adjacency, G2.adjacency
    order = sorted(range(n1), key=lambda i: (-len(a1[i]), i))
    assign: dict[int, int] = {}
    used: set[int] = set()

    def fits(i, j):
        if len(a1[i]) > len(a2[j]) or (bijective and len(a1[i]) != len(a2[j])):
            return False
        return all(assign[k] in a2[j] for k in a1[i] if k in assign)

    def step(depth):
        if depth == n1:
            return True
        i = order[depth]
        for j in range(n2):
            if j not in used and fits(i, j):
                assign[i] = j
                used.add(j)
                if step(depth + 1):
                    return True
                del assign[i]
                used.discard(j)
        return False

    if not step(0):
        return None
    return {G1.vertices[i]: G2.vertices[j] for i, j in assign.items()}


def subgraph_embedding(G1: Graph, G2: Graph, candidate: dict | None = None) -> dict | None:
    """An injective map ``V(G1) → V(G2)`` carrying edges to edges, or ``None``."""
    if candidate is not None and _preserves_edges(G1, G2, candidate):
        return dict(candidate)
    return _search(G1, G2, bijective=False)


def graphs_isomorphic(G1: Graph, G2: Graph, candidate: dict | None = None) -> bool:
    if len(G1) != len(G2) or len(G1.edges) != len(G2.edges):
        return False
    if sorted(map(len, G1.adjacency)) != sorted(map(len, G2.adjacency)):
        return False
    if candidate is not None and _preserves_edges(G1, G2, candidate):
        return True
    return _search(G1, G2, bijective=True) is not None


# -- export ----------------------------------------------------------------

def _label(v) -> int:
    return v.index if isinstance(v, Submodule) else v


def to_document(G: Graph) -> dict:
    """JSON-ready description, vertices keyed by submodule index."""
    kind = getattr(G, "kind", None)
    module = getattr(G, "module", None)
    subset = getattr(G, "subset", None)
    vertices = []
    for v in sorted(G.vertices, key=_label):
        entry = {"id": _label(v), "generators": None, "vm_set": None}
        if isinstance(v, Submodule):
            entry["generators"] = [list(g) for g in v.generators]
            if kind in (ZARISKI_MAX, ZARISKI_MAX_DISJOINT):
                entry["vm_set"] = sorted(q.index for q in vm_closed(v))
            elif kind == ZARISKI_SPEC:
                entry["vm_set"] = sorted(w.submodule.index for w in v_closed(v))
        vertices.append(entry)
    edges = sorted(sorted((_label(a), _label(b))) for a, b in G.edge_pairs())
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "module": module.to_spec() if module is not None else None,
        "T": None if subset is None else [s.index for s in subset],
        "vertices": vertices,
        "edges": edges,
    }


def render_dot(doc: dict) -> str:
    name = doc.get("kind") or "graph"
    lines = [f'graph "{name}" {{']
    module = doc.get("module")
    if module:
        factors = ",".join(str(d) for d in module["module"]["invariant_factors"])
        n = module["ring"]["modulus"]
        lines.append(f'  label="{name} M=[{factors}] R={"Z/" + str(n) if n else "Z"}";')
    for v in sorted(doc["vertices"], key=lambda e: e["id"]):
        if v.get("generators") is not None:
            gens = ";".join(",".join(map(str, g)) for g in v["generators"]) or "0"
            label = f'{v["id"]}: <{gens}>'
        else:
            label = str(v["id"])
        lines.append(f'  n{v["id"]} [label="{label}"];')
    for i, j in sorted(doc["edges"]):
        lines.append(f"  n{i} -- n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def export(G: Graph, fmt: str) -> str:
    doc = to_document(G)
    if fmt == "dot":
        return render_dot(doc)
    if fmt == "json":
        return render_json(doc)
    raise UnsupportedFormat(f"unsupported export format {fmt!r}")
