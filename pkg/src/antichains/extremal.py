"""Extremal antichain constructions on grid posets and exact width search.

Widths go through the minimum-chain-cover route: the strict comparability
relation of the grid is a bipartite graph whose maximum matching determines
how many chains cover the poset, and the standard alternating-reachability
construction turns that matching into a maximum antichain witness.
"""

from collections import deque
from dataclasses import dataclass
from itertools import product

from .lattice import Order, Point, PointSet
from .partition import BudgetExceededError

__all__ = [
    "GridPoset",
    "WidthResult",
    "layer_size",
    "middle_layer_index",
    "layer_construct",
    "wn_construct",
    "max_antichain",
    "best_construction",
]


@dataclass(frozen=True)
class GridPoset:
    """Points {0,...,m-1}^n under a strict dominance order.

    ``Order.STRICT`` compares for ordinary antichains, ``Order.STRONG`` for
    weak antichains; both are strict partial orders, so the same machinery
    applies to either.
    """

    n: int
    m: int
    order: Order = Order.STRICT

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("grid needs n >= 1 and m >= 1")
        if self.order not in (Order.STRICT, Order.STRONG):
            raise ValueError("grid posets use Order.STRICT or Order.STRONG")

    @property
    def size(self) -> int:
        return self.m**self.n


def layer_size(n: int, m: int, ell: int) -> int:
    """Number of grid points with coordinate sum ``ell``.

    Computed as the degree-``ell`` coefficient of (1 + t + ... + t^(m-1))^n;
    sums outside 0..n(m-1) have no points and return 0.
    """
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    if ell < 0 or ell > n * (m - 1):
        return 0
    coeffs = [1]
    for _ in range(n):
        nxt = [0] * (len(coeffs) + m - 1)
        for j, c in enumerate(coeffs):
            for t in range(m):
                nxt[j + t] += c
        coeffs = nxt
    return coeffs[ell]


def middle_layer_index(n: int, m: int) -> int:
    return (n * (m - 1)) // 2


def layer_construct(n: int, m: int, ell: int) -> PointSet:
    """The full layer of coordinate-sum ``ell``; a maximum antichain at the middle sum."""
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    return PointSet(n, (p for p in product(range(m), repeat=n) if sum(p) == ell))


def wn_construct(n: int, m: int) -> PointSet:
    """All grid points with at least one zero coordinate: m^n - (m-1)^n points.

    This is a maximum weak antichain of the grid.
    """
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    return PointSet(n, (p for p in product(range(m), repeat=n) if 0 in p))


@dataclass(frozen=True)
class WidthResult:
    width: int
    witness: PointSet
    method: str  # "matching" or "construction"


def _strictly_above(p: Point, m: int, order: Order):
    """Points of the grid strictly above ``p`` in the given order."""
    if order is Order.STRONG:
        yield from product(*(range(c + 1, m) for c in p))
    else:
        for q in product(*(range(c, m) for c in p)):
            if q != p:
                yield q


def _max_matching(adj: dict) -> tuple[int, dict, dict]:
    """Hopcroft-Karp maximum matching on a bipartite graph given as left adjacency.

    The DFS phase is iterative because augmenting paths can be as long as a
    chain through the whole poset.
    """
    lefts = sorted(adj)
    pair_u: dict = {}
    pair_v: dict = {}
    dist: dict = {}

    def bfs() -> bool:
        queue = deque()
        for u in lefts:
            if u not in pair_u:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = -1
        found = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = pair_v.get(v)
                if w is None:
                    found = True
                elif dist.get(w, -1) < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(root) -> bool:
        stack = [[root, iter(adj[root]), None]]
        while stack:
            frame = stack[-1]
            u, edges = frame[0], frame[1]
            moved = False
            for v in edges:
                w = pair_v.get(v)
                if w is None:
                    frame[2] = v
                    for fu, _, fv in stack:
                        pair_u[fu] = fv
                        pair_v[fv] = fu
                    return True
                if dist.get(w, -1) == dist[u] + 1:
                    frame[2] = v
                    stack.append([w, iter(adj[w]), None])
                    moved = True
                    break
            if not moved:
                dist[u] = -1
                stack.pop()
        return False

    matching = 0
    while bfs():
        for u in lefts:
            if u not in pair_u and dfs(u):
                matching += 1
    return matching, pair_u, pair_v


def max_antichain(poset: GridPoset, budget: int = 4096) -> WidthResult:
    """Exact maximum antichain of a grid poset via minimum chain cover.

    The width equals m^n minus the maximum matching of the comparability
    graph; the witness collects the points whose left copy is reachable by
    an alternating path from an unmatched left vertex while the right copy
    is not, which selects one element from each chain of the cover.
    """
    if poset.size > budget:
        raise BudgetExceededError(
            f"grid has {poset.size} points, budget is {budget}"
        )
    pts = sorted(product(range(poset.m), repeat=poset.n))
    adj = {p: sorted(_strictly_above(p, poset.m, poset.order)) for p in pts}
    matching, pair_u, pair_v = _max_matching(adj)

    reachable_left: set[Point] = set()
    reachable_right: set[Point] = set()
    queue = deque(u for u in pts if u not in pair_u)
    reachable_left.update(queue)
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in reachable_right:
                reachable_right.add(v)
                w = pair_v.get(v)
                if w is not None and w not in reachable_left:
                    reachable_left.add(w)
                    queue.append(w)

    witness = [p for p in pts if p in reachable_left and p not in reachable_right]
    width = poset.size - matching
    if len(witness) != width:
        raise RuntimeError("witness extraction disagrees with the matching size")
    return WidthResult(width=width, witness=PointSet(poset.n, witness), method="matching")


def best_construction(poset: GridPoset) -> WidthResult:
    """Closed-form extremal witness: the middle layer, or the zero-coordinate set."""
    if poset.order is Order.STRICT:
        witness = layer_construct(poset.n, poset.m, middle_layer_index(poset.n, poset.m))
    else:
        witness = wn_construct(poset.n, poset.m)
    return WidthResult(width=len(witness), witness=witness, method="construction")
