"""Optimization problems over finite enumerations with exact rational measures.

Everything here is immutable and pure: problems are (instances, solutions,
measure) triples, measures return `Fraction`, and optima come from explicit
enumeration so they can serve as oracles for every other module.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

Frac = Fraction

MAX = "max"
MIN = "min"


class DomainError(ValueError):
    """Input outside an operation's documented domain."""


class CapacityError(ValueError):
    """Input exceeds a configured exact-computation size limit."""


class GuaranteeViolation(ValueError):
    """A completeness guarantee fails to dominate a measured value."""


def parse_frac(s: str | int) -> Frac:
    """Parse "p/q" or "p" into a Fraction."""
    if isinstance(s, int):
        return Frac(s)
    return Frac(s.strip())


def frac_str(x: Frac) -> str:
    """Render a Fraction in lowest terms, "p/q" or "p"."""
    x = Frac(x)
    return str(x)


# ---------------------------------------------------------------------------
# Graphs
# ---------------------------------------------------------------------------


def edge(u: int, v: int) -> tuple[int, int]:
    """Canonical unordered pair."""
    if u == v:
        raise DomainError(f"self-loop at {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected graph with vertex set inside the universe [n] = {1..n}."""

    n: int
    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("universe size must be nonnegative")
        for v in self.vertices:
            if not 1 <= v <= self.n:
                raise DomainError(f"vertex {v} outside universe [{self.n}]")
        for e in self.edges:
            u, v = e
            if u == v:
                raise DomainError(f"self-loop at {u}")
            if e != edge(u, v):
                raise DomainError(f"non-canonical edge {e}")
            if u not in self.vertices or v not in self.vertices:
                raise DomainError(f"edge {e} has endpoint outside vertex set")

    @staticmethod
    def build(n: int, edges: Iterable[tuple[int, int]], vertices: Iterable[int] | None = None) -> "Graph":
        es = frozenset(edge(u, v) for u, v in edges)
        if vertices is None:
            vs = frozenset(v for e in es for v in e)
        else:
            vs = frozenset(vertices)
        return Graph(n, vs, es)

    @staticmethod
    def complete(n: int) -> "Graph":
        return Graph.build(n, itertools.combinations(range(1, n + 1), 2), range(1, n + 1))

    @staticmethod
    def cycle(n: int) -> "Graph":
        es = [(i, i % n + 1) for i in range(1, n + 1)]
        return Graph.build(n, es, range(1, n + 1))

    @staticmethod
    def path(n: int) -> "Graph":
        return Graph.build(n, [(i, i + 1) for i in range(1, n)], range(1, n + 1))

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(u for e in self.edges if v in e for u in e if u != v)

    def induced(self, vs: Iterable[int]) -> "Graph":
        vset = frozenset(vs)
        return Graph(self.n, vset & self.vertices,
                     frozenset(e for e in self.edges if e[0] in vset and e[1] in vset))

    def num_edges(self) -> int:
        return len(self.edges)


def graph_to_text(g: Graph) -> str:
    """Serialize: first line n, then one "u v" line per edge (1-based)."""
    lines = [str(g.n)]
    lines += [f"{u} {v}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> Graph:
    """Parse the text format; the vertex set is the full universe [n]."""
    rows = [ln for ln in (ln.strip() for ln in text.splitlines()) if ln]
    if not rows:
        raise DomainError("empty graph file")
    n = int(rows[0])
    edges = []
    for ln in rows[1:]:
        u, v = ln.split()
        edges.append((int(u), int(v)))
    return Graph.build(n, edges, range(1, n + 1))


# ---------------------------------------------------------------------------
# Problem abstraction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OptimizationProblem:
    """Finite optimization problem: sense, enumerated instances/solutions, exact measure."""

    name: str
    sense: str
    instances: tuple
    solutions: tuple
    measure: Callable[[object, object], Frac]
    _iindex: dict = field(default=None, repr=False, compare=False)
    _sindex: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.sense not in (MAX, MIN):
            raise DomainError(f"sense must be max or min, got {self.sense}")
        object.__setattr__(self, "_iindex", {inst: i for i, inst in enumerate(self.instances)})
        object.__setattr__(self, "_sindex", {s: i for i, s in enumerate(self.solutions)})

    @property
    def tau(self) -> int:
        return 1 if self.sense == MAX else -1

    def instance_index(self, inst) -> int:
        try:
            return self._iindex[inst]
        except KeyError:
            raise DomainError(f"unknown instance for problem {self.name}") from None

    def solution_index(self, sol) -> int:
        try:
            return self._sindex[sol]
        except KeyError:
            raise DomainError(f"unknown solution for problem {self.name}") from None


@dataclass(frozen=True)
class FractionalProblem:
    """Problem whose measure is a ratio; numerator and denominator kept separate."""

    name: str
    sense: str
    instances: tuple
    solutions: tuple
    measure_num: Callable[[object, object], Frac]
    measure_den: Callable[[object, object], Frac]
    _iindex: dict = field(default=None, repr=False, compare=False)
    _sindex: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.sense not in (MAX, MIN):
            raise DomainError(f"sense must be max or min, got {self.sense}")
        object.__setattr__(self, "_iindex", {inst: i for i, inst in enumerate(self.instances)})
        object.__setattr__(self, "_sindex", {s: i for i, s in enumerate(self.solutions)})

    @property
    def tau(self) -> int:
        return 1 if self.sense == MAX else -1

    def instance_index(self, inst) -> int:
        try:
            return self._iindex[inst]
        except KeyError:
            raise DomainError(f"unknown instance for problem {self.name}") from None

    def solution_index(self, sol) -> int:
        try:
            return self._sindex[sol]
        except KeyError:
            raise DomainError(f"unknown solution for problem {self.name}") from None


def evaluate(problem: OptimizationProblem, instance, solution) -> Frac:
    """Exact measure value; errors on unknown instance or solution."""
    problem.instance_index(instance)
    problem.solution_index(solution)
    return Frac(problem.measure(instance, solution))


def evaluate_fractional(problem: FractionalProblem, instance, solution) -> tuple[Frac, Frac]:
    """Exact (numerator, denominator); never divides."""
    problem.instance_index(instance)
    problem.solution_index(solution)
    return Frac(problem.measure_num(instance, solution)), Frac(problem.measure_den(instance, solution))


def brute_force_opt(problem: OptimizationProblem, instance) -> tuple[Frac, object]:
    """Exact optimum by enumeration; witness is the first optimizer in enumeration order."""
    problem.instance_index(instance)
    if not problem.solutions:
        raise DomainError("empty solution set")
    best_v = None
    best_s = None
    better = (lambda a, b: a > b) if problem.sense == MAX else (lambda a, b: a < b)
    for s in problem.solutions:
        v = problem.measure(instance, s)
        if best_v is None or better(v, best_v):
            best_v, best_s = v, s
    return Frac(best_v), best_s


def brute_force_opt_fractional(problem: FractionalProblem, instance) -> tuple[Frac, object]:
    """Exact optimum of num/den over solutions with positive denominator."""
    problem.instance_index(instance)
    best_n = best_d = None
    best_s = None
    want_max = problem.sense == MAX
    for s in problem.solutions:
        d = problem.measure_den(instance, s)
        if d <= 0:
            if d < 0:
                raise DomainError("negative denominator")
            continue
        n = problem.measure_num(instance, s)
        if best_s is None:
            best_n, best_d, best_s = n, d, s
            continue
        # compare n/d with best_n/best_d by cross-multiplication
        lhs, rhs = n * best_d, best_n * d
        if (lhs > rhs) if want_max else (lhs < rhs):
            best_n, best_d, best_s = n, d, s
    if best_s is None:
        raise DomainError("no solution with positive denominator")
    return Frac(best_n, best_d), best_s


# ---------------------------------------------------------------------------
# Graph-problem catalog
# ---------------------------------------------------------------------------


def _subsets(items: Sequence[int]) -> list[frozenset[int]]:
    out = []
    items = sorted(items)
    for r in range(len(items) + 1):
        out.extend(frozenset(c) for c in itertools.combinations(items, r))
    return out


def all_graphs_on(n: int) -> tuple[Graph, ...]:
    """Every graph with vertex set inside [n], ordered deterministically."""
    out = []
    for vs in _subsets(range(1, n + 1)):
        pairs = sorted(itertools.combinations(sorted(vs), 2))
        for r in range(len(pairs) + 1):
            for es in itertools.combinations(pairs, r):
                out.append(Graph(n, vs, frozenset(es)))
    return tuple(out)


def cut_edges(g: Graph, x: frozenset[int]) -> int:
    return sum(1 for u, v in g.edges if (u in x) != (v in x))


def maxcut_uniform(n: int) -> OptimizationProblem:
    """Maximize the number of instance edges crossing a vertex subset of [n]."""
    sols = tuple(_subsets(range(1, n + 1)))

    def val(g: Graph, x: frozenset[int]) -> Frac:
        return Frac(cut_edges(g, x))

    return OptimizationProblem(f"MaxCut({n})", MAX, all_graphs_on(n), sols, val)


def independent_set_uniform(n: int) -> OptimizationProblem:
    """Vertices of the instance captured, penalized by instance edges inside the set."""
    sols = tuple(_subsets(range(1, n + 1)))

    def val(g: Graph, x: frozenset[int]) -> Frac:
        inside = sum(1 for u, v in g.edges if u in x and v in x)
        return Frac(len(x & g.vertices) - inside)

    return OptimizationProblem(f"IndependentSet({n})", MAX, all_graphs_on(n), sols, val)


def vertex_cover_uniform(n: int) -> OptimizationProblem:
    """Vertices of the instance used, penalized by instance edges left uncovered."""
    sols = tuple(_subsets(range(1, n + 1)))

    def val(g: Graph, x: frozenset[int]) -> Frac:
        uncovered = sum(1 for u, v in g.edges if u not in x and v not in x)
        return Frac(len(x & g.vertices) + uncovered)

    return OptimizationProblem(f"VertexCover({n})", MIN, all_graphs_on(n), sols, val)


def perfect_matchings(g: Graph) -> list[frozenset[tuple[int, int]]]:
    """All perfect matchings of g, in deterministic order."""
    verts = sorted(g.vertices)
    adj = {v: sorted(g.neighbors(v)) for v in verts}
    out: list[frozenset[tuple[int, int]]] = []

    def extend(uncovered: list[int], chosen: list[tuple[int, int]]):
        if not uncovered:
            out.append(frozenset(chosen))
            return
        v = uncovered[0]
        for u in adj[v]:
            if u in uncovered:
                rest = [w for w in uncovered if w != v and w != u]
                extend(rest, chosen + [edge(v, u)])

    extend(verts, [])
    return sorted(out, key=lambda m: sorted(m))


def spanning_subgraphs(g: Graph) -> tuple[Graph, ...]:
    """All subgraphs of g on the full vertex set, ordered by edge subset."""
    pairs = sorted(g.edges)
    out = []
    for r in range(len(pairs) + 1):
        for es in itertools.combinations(pairs, r):
            out.append(Graph(g.n, g.vertices, frozenset(es)))
    return tuple(out)


def matching_problem(g: Graph) -> OptimizationProblem:
    """Size of a fixed perfect matching inside a spanning-subgraph instance of g."""
    pms = tuple(perfect_matchings(g))

    def val(h: Graph, m: frozenset[tuple[int, int]]) -> Frac:
        return Frac(len(m & h.edges))

    return OptimizationProblem(f"Matching({g.n})", MAX, spanning_subgraphs(g), pms, val)


def independent_sets(g: Graph) -> list[frozenset[int]]:
    out = []
    for x in _subsets(sorted(g.vertices)):
        if all(not (u in x and v in x) for u, v in g.edges):
            out.append(x)
    return out


def independent_set_on(g: Graph) -> OptimizationProblem:
    """Independent sets of a ground graph, measured inside induced-subgraph instances."""
    insts = tuple(g.induced(vs) for vs in _subsets(sorted(g.vertices)))
    sols = tuple(independent_sets(g))

    def val(h: Graph, i: frozenset[int]) -> Frac:
        return Frac(len(i & h.vertices))

    return OptimizationProblem(f"IndependentSetOn({g.n})", MAX, insts, sols, val)


def maxcut_fraction_on(g: Graph, instance_vertex_sets: Sequence[frozenset[int]]) -> OptimizationProblem:
    """Fraction of induced-subgraph edges cut by a subset of the ground vertex set.

    Edgeless instances measure 0.  Used as the target of the parity-clause
    gadget reduction, whose identities are stated per edge.
    """
    insts = tuple(g.induced(vs) for vs in instance_vertex_sets)
    sols = tuple(_subsets(sorted(g.vertices)))

    def val(h: Graph, x: frozenset[int]) -> Frac:
        m = h.num_edges()
        if m == 0:
            return Frac(0)
        return Frac(cut_edges(h, x), m)

    return OptimizationProblem(f"MaxCutFractionOn({g.n})", MAX, insts, sols, val)


def maxcut_fraction_uniform(n: int, instances: Sequence[Graph]) -> FractionalProblem:
    """MaxCUT with the cut measured as a fraction of instance edges, split as a ratio.

    Numerator = cut fraction, denominator = 1; this is the source side of the
    cut-to-sparsest-cut reduction, where guarantees are fractions of |E|.
    """
    for g in instances:
        if g.num_edges() == 0:
            raise DomainError("instances must have at least one edge")
    sols = tuple(_subsets(range(1, n + 1)))

    def num(g: Graph, x: frozenset[int]) -> Frac:
        return Frac(cut_edges(g, x), g.num_edges())

    def den(g: Graph, x: frozenset[int]) -> Frac:
        return Frac(1)

    return FractionalProblem(f"MaxCutFraction({n})", MAX, tuple(instances), sols, num, den)


# ---------------------------------------------------------------------------
# CSP
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Clause:
    """Weighted clause: scope of distinct variables and its satisfying assignments."""

    weight: Frac
    scope: tuple[int, ...]
    satisfying: frozenset[tuple[int, ...]]

    def __post_init__(self):
        if self.weight < 0:
            raise DomainError("clause weight must be nonnegative")
        if len(set(self.scope)) != len(self.scope):
            raise DomainError("clause scope variables must be pairwise distinct")
        for a in self.satisfying:
            if len(a) != len(self.scope):
                raise DomainError("satisfying assignment arity mismatch")

    def holds(self, assignment: tuple[int, ...]) -> bool:
        return tuple(assignment[v] for v in self.scope) in self.satisfying


@dataclass(frozen=True)
class CspInstance:
    """Formal weighted sum of clauses over num_variables variables with values 0..q-1."""

    num_variables: int
    q: int
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        if self.q < 1:
            raise DomainError("alphabet size must be positive")
        total = sum((c.weight for c in self.clauses), Frac(0))
        if total <= 0:
            raise DomainError("total clause weight must be positive")
        for c in self.clauses:
            for v in c.scope:
                if not 0 <= v < self.num_variables:
                    raise DomainError(f"clause variable {v} out of range")
            for a in c.satisfying:
                if any(not 0 <= x < self.q for x in a):
                    raise DomainError("satisfying assignment value out of range")

    def total_weight(self) -> Frac:
        return sum((c.weight for c in self.clauses), Frac(0))

    def value(self, assignment: tuple[int, ...]) -> Frac:
        sat = sum((c.weight for c in self.clauses if c.holds(assignment)), Frac(0))
        return sat / self.total_weight()


def all_assignments(num_variables: int, q: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.product(range(q), repeat=num_variables))


def csp_problem(instances: Sequence[CspInstance], num_variables: int, q: int,
                sense: str = MAX, name: str | None = None) -> OptimizationProblem:
    """Weighted fraction of satisfied clauses over all assignments."""
    for inst in instances:
        if inst.num_variables != num_variables or inst.q != q:
            raise DomainError("instance shape mismatch")
    sols = all_assignments(num_variables, q)

    def val(inst: CspInstance, s: tuple[int, ...]) -> Frac:
        return inst.value(s)

    return OptimizationProblem(name or f"CSP({num_variables},{q})", sense, tuple(instances), sols, val)


def xor_clause(scope: tuple[int, ...], parity: int, weight: Frac = Frac(1)) -> Clause:
    """Clause x_{i1} + ... + x_{ik} = parity over GF(2)."""
    sat = frozenset(a for a in itertools.product((0, 1), repeat=len(scope)) if sum(a) % 2 == parity)
    return Clause(weight, scope, sat)


def maxxor0_instance(num_variables: int, scopes: Sequence[tuple[int, int, int]],
                     weights: Sequence[Frac] | None = None) -> CspInstance:
    """Parity-zero 3-clause instance over GF(2)."""
    if weights is None:
        weights = [Frac(1)] * len(scopes)
    clauses = tuple(xor_clause(tuple(sc), 0, w) for sc, w in zip(scopes, weights))
    return CspInstance(num_variables, 2, clauses)


# ---------------------------------------------------------------------------
# Unique games
# ---------------------------------------------------------------------------

UgVertex = tuple[int, int]  # (side, index), side in {0,1}, index in 1..n


@dataclass(frozen=True)
class UgInstance:
    """Edge-weighted regular bipartite labeling game with permutation constraints.

    perms maps each ordered edge (u, v) to a tuple p with p[k] = image of label k;
    a labeling s is correct on {u, v} when s[u] = p_{u,v}[s[v]].
    """

    n: int
    q: int
    delta: int
    edges: frozenset[tuple[UgVertex, UgVertex]]
    weights: tuple[tuple[tuple[UgVertex, UgVertex], Frac], ...]
    perms: tuple[tuple[tuple[UgVertex, UgVertex], tuple[int, ...]], ...]

    def __post_init__(self):
        wmap = dict(self.weights)
        pmap = dict(self.perms)
        for (u, v) in self.edges:
            if u[0] != 0 or v[0] != 1:
                raise DomainError("edges must be stored left-to-right between the two sides")
            if not (1 <= u[1] <= self.n and 1 <= v[1] <= self.n):
                raise DomainError("vertex index out of range")
            if wmap.get((u, v), Frac(-1)) < 0:
                raise DomainError("edge weights must be nonnegative rationals")
            p = pmap.get((u, v))
            pr = pmap.get((v, u))
            if p is None or pr is None:
                raise DomainError("missing permutation for an edge")
            if sorted(p) != list(range(self.q)) or sorted(pr) != list(range(self.q)):
                raise DomainError("permutation is not a bijection")
            if any(pr[p[k]] != k for k in range(self.q)):
                raise DomainError("oriented permutations must be mutually inverse")
        for side in (0, 1):
            for i in range(1, self.n + 1):
                deg = sum(1 for (u, v) in self.edges if (side == 0 and u == (0, i)) or (side == 1 and v == (1, i)))
                if deg != self.delta:
                    raise DomainError(f"vertex ({side},{i}) has degree {deg}, expected {self.delta}")

    def vertices(self) -> list[UgVertex]:
        return [(s, i) for s in (0, 1) for i in range(1, self.n + 1)]

    def weight(self, u: UgVertex, v: UgVertex) -> Frac:
        key = (u, v) if u[0] == 0 else (v, u)
        return dict(self.weights)[key]

    def perm(self, u: UgVertex, v: UgVertex) -> tuple[int, ...]:
        return dict(self.perms)[(u, v)]

    def total_weight(self) -> Frac:
        return sum((w for _, w in self.weights), Frac(0))

    def correct(self, labeling: dict[UgVertex, int], u: UgVertex, v: UgVertex) -> bool:
        return labeling[u] == self.perm(u, v)[labeling[v]]

    def value(self, labeling: dict[UgVertex, int]) -> Frac:
        w = sum((wt for (u, v), wt in self.weights if self.correct(labeling, u, v)), Frac(0))
        total = self.total_weight()
        if total <= 0:
            raise DomainError("total edge weight must be positive")
        return w / total


def ug_labelings(ug: UgInstance) -> tuple[tuple[int, ...], ...]:
    """All labelings as value tuples over ug.vertices() order."""
    return tuple(itertools.product(range(ug.q), repeat=2 * ug.n))


def ug_labeling_dict(ug: UgInstance, labels: tuple[int, ...]) -> dict[UgVertex, int]:
    return dict(zip(ug.vertices(), labels))


def unique_games_problem(instances: Sequence[UgInstance]) -> OptimizationProblem:
    """Weighted fraction of correctly labeled edges over all labelings."""
    if not instances:
        raise DomainError("need at least one instance")
    n, q = instances[0].n, instances[0].q
    for inst in instances:
        if inst.n != n or inst.q != q:
            raise DomainError("instance shape mismatch")
    sols = tuple(itertools.product(range(q), repeat=2 * n))

    def val(inst: UgInstance, labels: tuple[int, ...]) -> Frac:
        return inst.value(ug_labeling_dict(inst, labels))

    return OptimizationProblem(f"UniqueGames({n},{q})", MAX, tuple(instances), sols, val)


# ---------------------------------------------------------------------------
# Sparsest cut / balanced separator
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScInstance:
    """Sparsest-cut instance: exact capacities and demands on pairs from [n]."""

    n: int
    k: int
    capacity: tuple[tuple[tuple[int, int], Frac], ...]
    demand: tuple[tuple[tuple[int, int], Frac], ...]

    def __post_init__(self):
        for (u, v), w in self.capacity + self.demand:
            if not (1 <= u < v <= self.n):
                raise DomainError(f"bad pair ({u},{v})")
            if w < 0:
                raise DomainError("weights must be nonnegative")

    def cap_map(self) -> dict[tuple[int, int], Frac]:
        return dict(self.capacity)

    def dem_map(self) -> dict[tuple[int, int], Frac]:
        return dict(self.demand)

    def supply_graph(self) -> Graph:
        es = [e for e, w in self.capacity if w > 0]
        return Graph.build(self.n, es, range(1, self.n + 1))


def sc_separated(weights: Iterable[tuple[tuple[int, int], Frac]], s: frozenset[int]) -> Frac:
    return sum((w for (u, v), w in weights if (u in s) != (v in s)), Frac(0))


def sparsest_cut_problem(n: int, k: int, instances: Sequence[ScInstance],
                         check_treewidth: bool = True) -> FractionalProblem:
    """Minimize separated capacity over separated demand, both exact."""
    from .treewidth import treewidth_exact  # local import to avoid a cycle

    for inst in instances:
        if inst.n != n or inst.k != k:
            raise DomainError("instance shape mismatch")
        if check_treewidth:
            width, _ = treewidth_exact(inst.supply_graph())
            if width > k:
                raise DomainError(f"supply treewidth {width} exceeds bound {k}")
    sols = tuple(_subsets(range(1, n + 1)))

    def num(inst: ScInstance, s: frozenset[int]) -> Frac:
        return sc_separated(inst.capacity, s)

    def den(inst: ScInstance, s: frozenset[int]) -> Frac:
        return sc_separated(inst.demand, s)

    return FractionalProblem(f"SparsestCut({n},{k})", MIN, tuple(instances), sols, num, den)


@dataclass(frozen=True)
class BsDemand:
    """Balanced-separator demand: pair weights plus never-separated self-demands."""

    n: int
    pairs: tuple[tuple[tuple[int, int], Frac], ...]
    selfs: tuple[tuple[int, Frac], ...] = ()

    def total(self) -> Frac:
        return sum((w for _, w in self.pairs), Frac(0)) + sum((w for _, w in self.selfs), Frac(0))

    def separated(self, s: frozenset[int]) -> Frac:
        return sc_separated(self.pairs, s)

    def graph(self) -> Graph:
        es = [e for e, w in self.pairs if w > 0]
        return Graph.build(self.n, es, range(1, self.n + 1))


@dataclass(frozen=True)
class BsInstance:
    """Balanced-separator instance: capacities on pairs from [n]."""

    n: int
    capacity: tuple[tuple[tuple[int, int], Frac], ...]

    def separated_capacity(self, s: frozenset[int]) -> Frac:
        return sc_separated(self.capacity, s)


def balanced_separator_problem(demand: BsDemand, instances: Sequence[BsInstance]) -> OptimizationProblem:
    """Minimize separated capacity over cuts separating at least a quarter of the demand."""
    n = demand.n
    for inst in instances:
        if inst.n != n:
            raise DomainError("instance shape mismatch")
    threshold = demand.total() / 4
    sols = tuple(s for s in _subsets(range(1, n + 1)) if demand.separated(s) >= threshold)
    if not sols:
        raise DomainError("no balanced cuts exist for this demand")

    def val(inst: BsInstance, s: frozenset[int]) -> Frac:
        return inst.separated_capacity(s)

    return OptimizationProblem(f"BalancedSeparator({n})", MIN, tuple(instances), sols, val)
