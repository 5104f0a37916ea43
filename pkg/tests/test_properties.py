"""Property-based checks of algebraic and graph invariants on random small modules."""

from itertools import combinations

from hypothesis import given, settings
from hypothesis import strategies as st

from specgraph.algebra import (
    FinModule,
    Ring,
    colon,
    intersect,
    product,
    quotient,
    submodule_sum,
)
from specgraph.graphs import analyze, build_annihilating, build_zariski_max, build_zariski_max_disjoint
from specgraph.spectrum import is_closed, im_of, max_spec, spec, vm_closed

MAX_ORDER = 72


@st.composite
def modules(draw):
    """Invariant-factor chains of order at most MAX_ORDER, over Z or Z/(k·exponent)."""
    chain = [draw(st.integers(2, 24))]
    order = chain[0]
    while len(chain) < 3 and draw(st.booleans()):
        nxt = chain[-1] * draw(st.integers(1, 4))
        if order * nxt > MAX_ORDER:
            break
        chain.append(nxt)
        order *= nxt
    modulus = draw(st.sampled_from([0, 1, 2])) * chain[-1]
    return FinModule(Ring(modulus), tuple(chain))


settings.register_profile("specgraph", max_examples=60, deadline=None)
settings.load_profile("specgraph")


@given(modules())
def test_lattice_is_closed_under_sum_and_intersection(M):
    subs = set(M.submodules())
    for N, K in combinations(M.submodules(), 2):
        assert submodule_sum(N, K) in subs and intersect(N, K) in subs


@given(modules())
def test_product_is_commutative_and_monotone(M):
    subs = M.submodules()
    for N, K in combinations(subs, 2):
        assert product(N, K) == product(K, N)
        assert product(N, K) <= M.whole
    for N in subs:
        for N2 in subs:
            if N <= N2:
                for K in subs[::3]:
                    assert product(N, K) <= product(N2, K)


@given(modules())
def test_colon_is_exponent_of_quotient(M):
    for N in M.submodules():
        assert colon(N).divisor == quotient(M, N).module.exponent or (not N.is_proper
                                                                      and colon(N).is_unit)


@given(modules())
def test_maximal_submodules_are_prime_and_closed_sets_behave(M):
    maximal = max_spec(M)
    primes = {w.submodule for w in spec(M)}
    assert set(maximal) <= primes
    for N, K in combinations(M.submodules(), 2):
        assert vm_closed(N) | vm_closed(K) == vm_closed(product(N, K))
    for r in (1, 2):
        for T in combinations(maximal, r):
            assert is_closed(T) == (frozenset(T) == vm_closed(im_of(T)))


@given(modules())
def test_graph_structure(M):
    maximal = max_spec(M)
    if len(maximal) > 4:
        maximal = maximal[:4]
    for r in range(1, len(maximal) + 1):
        for T in combinations(maximal, r):
            G, Gd = build_zariski_max(M, T), build_zariski_max_disjoint(M, T)
            assert set(Gd.vertices) <= set(G.vertices) and set(Gd.edge_pairs()) <= set(G.edge_pairs())
            if not G.is_empty:
                rep = analyze(G)
                assert rep.connected and rep.diameter <= 3
            assert analyze(Gd).bipartite
    AG = build_annihilating(M)
    assert all(not v.is_zero for v in AG.vertices)
    if not AG.is_empty:
        assert analyze(AG).diameter <= 3
