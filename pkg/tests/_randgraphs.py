import random

from ringclass.graph import load_graph


def random_connected_graph(rng: random.Random, max_edges: int = 14):
    """Random connected simple graph with at most ``max_edges`` edges."""
    while True:
        n = rng.randint(3, 10)
        m = rng.randint(n, min(max_edges, n * (n - 1) // 2))
        if m >= n - 1:
            break
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        a, b = order[i], order[rng.randrange(i)]
        edges.add((min(a, b), max(a, b)))
    pool = [(a, b) for a in range(n) for b in range(a + 1, n) if (a, b) not in edges]
    rng.shuffle(pool)
    edges |= set(pool[: m - len(edges)])
    return load_graph(sorted(edges), n)


try:
    from hypothesis import strategies as st
except ImportError:  # pragma: no cover
    st = None

if st is not None:

    @st.composite
    def graphs(draw, max_nodes=9, max_edges=14, connected=True):
        """Simple graphs, connected by default, with at most ``max_edges`` edges."""
        n = draw(st.integers(3 if connected else 1, max_nodes))
        pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
        if not pairs:
            return load_graph([], n)
        edges = set()
        if connected:
            for i in range(1, n):
                j = draw(st.integers(0, i - 1))
                edges.add((j, i))
            perm = draw(st.permutations(range(n)))
            edges = {tuple(sorted((perm[a], perm[b]))) for a, b in edges}
        extra = draw(st.lists(st.sampled_from(pairs), max_size=max(0, max_edges - len(edges))))
        edges |= set(extra)
        return load_graph(sorted(edges)[:max_edges] if not connected else sorted(edges), n)
