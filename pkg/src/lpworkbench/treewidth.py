"""Exact treewidth and tree-decomposition validation.

Width-0/1/2 graphs are recognized by exact elimination rules (any size);
everything else goes through a memoized dynamic program over elimination
orderings, limited to 16 vertices per connected component.
"""

from __future__ import annotations

from dataclasses import dataclass

from .problems import CapacityError, Graph
from .verdict import Verdict, accept, reject

DEFAULT_LIMIT = 16


@dataclass(frozen=True)
class TreeDecomposition:
    """Tree of bags; nodes are 0-based ints, bags are vertex subsets."""

    nodes: tuple[int, ...]
    tree_edges: frozenset[tuple[int, int]]
    bags: tuple[tuple[int, frozenset[int]], ...]

    def bag(self, t: int) -> frozenset[int]:
        return dict(self.bags)[t]

    def width(self) -> int:
        return max((len(b) for _, b in self.bags), default=0) - 1

    def neighbors(self, t: int) -> list[int]:
        out = []
        for a, b in self.tree_edges:
            if a == t:
                out.append(b)
            elif b == t:
                out.append(a)
        return sorted(out)


def _is_tree(nodes: tuple[int, ...], edges: frozenset[tuple[int, int]]) -> bool:
    if len(edges) != max(len(nodes) - 1, 0):
        return False
    if not nodes:
        return True
    seen = {nodes[0]}
    frontier = [nodes[0]]
    adj = {t: [] for t in nodes}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    while frontier:
        t = frontier.pop()
        for u in adj[t]:
            if u not in seen:
                seen.add(u)
                frontier.append(u)
    return len(seen) == len(nodes)


def validate_tree_decomposition(g: Graph, td: TreeDecomposition) -> Verdict:
    """Check vertex coverage, edge coverage, and bag connectivity, with witnesses."""
    bags = dict(td.bags)
    if set(bags) != set(td.nodes):
        return reject("structure", witness=None, detail="bags and nodes disagree")
    if not _is_tree(td.nodes, td.tree_edges):
        return reject("structure", witness=None, detail="decomposition graph is not a tree")
    covered = set().union(*bags.values()) if bags else set()
    for v in sorted(g.vertices):
        if v not in covered:
            return reject("condition-1", witness=v, detail=f"vertex {v} not covered by any bag")
    for e in sorted(g.edges):
        if not any(e[0] in b and e[1] in b for b in bags.values()):
            return reject("condition-2", witness=e, detail=f"edge {e} inside no bag")
    # condition 3: nodes whose bags contain v must induce a connected subtree
    adj = {t: [] for t in td.nodes}
    for a, b in td.tree_edges:
        adj[a].append(b)
        adj[b].append(a)
    for v in sorted(g.vertices):
        holding = [t for t in td.nodes if v in bags[t]]
        if not holding:
            continue
        seen = {holding[0]}
        frontier = [holding[0]]
        hold_set = set(holding)
        while frontier:
            t = frontier.pop()
            for u in adj[t]:
                if u in hold_set and u not in seen:
                    seen.add(u)
                    frontier.append(u)
        if len(seen) != len(holding):
            return reject("condition-3", witness=v,
                          detail=f"vertex {v} appears in disconnected bags")
    return accept()


def _components(g: Graph) -> list[frozenset[int]]:
    seen: set[int] = set()
    comps = []
    for v in sorted(g.vertices):
        if v in seen:
            continue
        comp = {v}
        frontier = [v]
        while frontier:
            u = frontier.pop()
            for w in g.neighbors(u):
                if w not in comp:
                    comp.add(w)
                    frontier.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def _decomposition_from_elimination(g: Graph, order: list[int]) -> TreeDecomposition:
    """Standard bag construction: eliminate in order, bag = vertex + current neighbors.

    Bags without a later neighbor (one per connected component) are chained so
    the result is a single tree.
    """
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    pos = {v: i for i, v in enumerate(order)}
    bags = {}
    for v in order:
        nb = set(adj[v])
        bags[v] = frozenset({v} | nb)
        for a in nb:
            adj[a].discard(v)
            for b in nb:
                if a != b:
                    adj[a].add(b)
    nodes = tuple(range(len(order)))
    index = {v: i for i, v in enumerate(order)}
    edges = set()
    roots = []
    for v in order:
        later = [u for u in bags[v] if u != v and pos[u] > pos[v]]
        if later:
            nxt = min(later, key=lambda u: pos[u])
            edges.add(tuple(sorted((index[v], index[nxt]))))
        else:
            roots.append(index[v])
    for a, b in zip(roots, roots[1:]):
        edges.add(tuple(sorted((a, b))))
    bag_items = tuple((index[v], bags[v]) for v in order)
    return TreeDecomposition(nodes, frozenset(edges), bag_items)


def _try_width2_order(g: Graph) -> list[int] | None:
    """Minimum-degree elimination while degrees stay <= 2.

    Succeeds exactly on graphs of width <= 2, and because a vertex of globally
    minimum degree is eliminated first, the bag sizes along the order realize
    the true width (0, 1, or 2) rather than an overestimate.
    """
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    order = []
    remaining = set(g.vertices)
    while remaining:
        pick = min(remaining, key=lambda v: (len(adj[v]), v))
        if len(adj[pick]) > 2:
            return None
        nb = list(adj[pick])
        if len(nb) == 2:
            a, b = nb
            adj[a].add(b)
            adj[b].add(a)
        for u in nb:
            adj[u].discard(pick)
        del adj[pick]
        remaining.discard(pick)
        order.append(pick)
    return order


def _dp_elimination_order(g: Graph) -> list[int]:
    """Memoized minimum over all elimination orderings of a connected graph."""
    verts = sorted(g.vertices)
    n = len(verts)
    idx = {v: i for i, v in enumerate(verts)}
    nbr = [0] * n
    for u, v in g.edges:
        nbr[idx[u]] |= 1 << idx[v]
        nbr[idx[v]] |= 1 << idx[u]
    full = (1 << n) - 1

    def q_degree(eliminated: int, v: int) -> int:
        # vertices outside eliminated∪{v} reachable from v through eliminated
        seen = 1 << v
        frontier = nbr[v]
        reach = 0
        while frontier:
            w = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            bit = 1 << w
            if seen & bit:
                continue
            seen |= bit
            if eliminated & bit:
                frontier |= nbr[w] & ~seen
            else:
                reach |= bit
        return bin(reach).count("1")

    memo = {0: (0, -1)}

    def f(mask: int) -> int:
        if mask in memo:
            return memo[mask][0]
        best = n
        best_v = -1
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            rest = mask & ~(1 << v)
            cand = max(f(rest), q_degree(rest, v))
            if cand < best:
                best, best_v = cand, v
        memo[mask] = (best, best_v)
        return best

    f(full)
    order_idx = []
    mask = full
    while mask:
        _, v = memo[mask]
        order_idx.append(v)
        mask &= ~(1 << v)
    order_idx.reverse()  # memo picks the last-eliminated vertex of the prefix
    return [verts[i] for i in order_idx]


def treewidth_exact(g: Graph, limit: int = DEFAULT_LIMIT) -> tuple[int, TreeDecomposition]:
    """Exact treewidth with a witnessing decomposition.

    Components are handled independently; widths 0..2 are recognized without
    the exponential search, so the size limit only applies to harder components.
    """
    if not g.vertices:
        return 0, TreeDecomposition((0,), frozenset(), ((0, frozenset()),))
    order: list[int] = []
    for comp in _components(g):
        sub = g.induced(comp)
        if not sub.edges:
            order.extend(sorted(comp))
            continue
        comp_order = _try_width2_order(sub)
        if comp_order is None:
            if len(comp) > limit:
                raise CapacityError(
                    f"component with {len(comp)} vertices exceeds exact-search limit {limit}")
            comp_order = _dp_elimination_order(sub)
        order.extend(comp_order)
    td = _decomposition_from_elimination(g, order)
    verdict = validate_tree_decomposition(g, td)
    if not verdict.ok:
        raise AssertionError(f"internal: produced invalid decomposition: {verdict}")
    return td.width(), td
