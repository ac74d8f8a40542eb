"""Concrete reductions: degree-3 matching, parity-clause cut gadgets, cut powering.

Everything is built at desk scale over enumerated problems so the generic
verifiers can replay each identity in exact arithmetic.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .problems import (
    Clause, CspInstance, DomainError, Frac, Graph, ScInstance, all_assignments,
    brute_force_opt, csp_problem, edge, matching_problem, maxcut_fraction_on,
    maxcut_fraction_uniform, perfect_matchings, sparsest_cut_problem,
)
from .reduction import (
    FractionalReductionRecord, ReductionRecord, constant_matrix,
    verify_fractional_reduction, verify_reduction,
)
from .verdict import Verdict, accept, reject


# ---------------------------------------------------------------------------
# Matching over 3-regular graphs
# ---------------------------------------------------------------------------


def build_d_graph(n: int) -> tuple[Graph, dict]:
    """Cycle-of-pairs graph on 2n(2n-1) vertices, 3-regular by construction.

    Vertex [v,u] (v != u in [2n]) sits on the cycle of v, whose vertices are
    ordered by u ascending; bridges join [v,u] to [u,v].
    """
    if n < 2:
        raise DomainError("need n >= 2")
    base = list(range(1, 2 * n + 1))
    names = [(v, u) for v in base for u in base if u != v]
    index = {name: i + 1 for i, name in enumerate(sorted(names))}
    edges = set()
    for v in base:
        ring = [(v, u) for u in base if u != v]  # u ascending
        for a, b in zip(ring, ring[1:] + ring[:1]):
            edges.add(edge(index[a], index[b]))
    for v, u in itertools.combinations(base, 2):
        edges.add(edge(index[(v, u)], index[(u, v)]))
    g = Graph.build(len(names), edges, range(1, len(names) + 1))
    return g, index


def _cycle_completion(n: int, v: int, covered: tuple, index: dict) -> list:
    """Unique perfect matching of the v-cycle after removing one covered vertex."""
    base = [u for u in range(1, 2 * n + 1) if u != v]
    ring = [(v, u) for u in base]
    k = ring.index(covered)
    rest = ring[k + 1:] + ring[:k]  # even-length path around the cycle
    return [edge(index[a], index[b]) for a, b in zip(rest[::2], rest[1::2])]


def matching_image_instance(h: Graph, n: int, d: Graph, index: dict) -> Graph:
    """Spanning subgraph of the cycle-of-pairs graph: all cycles plus bridge edges of h."""
    edges = set()
    base = list(range(1, 2 * n + 1))
    for v in base:
        ring = [(v, u) for u in base if u != v]
        for a, b in zip(ring, ring[1:] + ring[:1]):
            edges.add(edge(index[a], index[b]))
    for u, v in h.edges:
        edges.add(edge(index[(u, v)], index[(v, u)]))
    return Graph(d.n, d.vertices, frozenset(edges))


def matching_image_solution(m: frozenset, n: int, index: dict) -> frozenset:
    """Bridges for matched pairs plus the unique cycle completions."""
    out = []
    for u, v in m:
        out.append(edge(index[(u, v)], index[(v, u)]))
    for v in range(1, 2 * n + 1):
        partner = next(b if a == v else a for a, b in m if v in (a, b))
        out.extend(_cycle_completion(n, v, (v, partner), index))
    return frozenset(out)


def build_matching_3reg(n: int, eps: Frac = Frac(1, 2)) -> tuple[Graph, ReductionRecord]:
    """Reduction from matchings of the complete graph into the 3-regular graph.

    Guarantees are floor(|V|/2) + (1-eps)/2 against the exact optimum on both
    sides; the distortions are the all-ones and zero matrices.
    """
    if n < 2:
        raise DomainError("need n >= 2")
    if not 0 <= eps < 1:
        raise DomainError("eps must lie in [0, 1)")
    d, index = build_d_graph(n)
    src = matching_problem(Graph.complete(2 * n))
    inst_map = {h: matching_image_instance(h, n, d, index) for h in src.instances}
    sol_map = {m: matching_image_solution(m, n, index) for m in src.solutions}
    pms = tuple(perfect_matchings(d))
    tgt_instances = []
    seen = set()
    for h in src.instances:
        img = inst_map[h]
        if img not in seen:
            seen.add(img)
            tgt_instances.append(img)

    def tgt_val(hh: Graph, mm: frozenset) -> Frac:
        return Frac(len(mm & hh.edges))

    from .problems import OptimizationProblem
    tgt = OptimizationProblem(f"MatchingOn3Regular({d.n})", "max",
                              tuple(tgt_instances), pms, tgt_val)
    half = (1 - eps) / 2
    c1 = {h: Frac(len(h.vertices) // 2) + half for h in src.instances}
    s1 = {h: brute_force_opt(src, h)[0] for h in src.instances}
    c2 = {g: Frac(len(g.vertices) // 2) + half for g in tgt_instances}
    s2 = {g: brute_force_opt(tgt, g)[0] for g in tgt_instances}
    nr, nc = len(src.instances), len(src.solutions)
    rec = ReductionRecord.build(src, tgt, c1, s1, c2, s2, inst_map, sol_map,
                                constant_matrix(1, nr, nc), constant_matrix(0, nr, nc))
    return d, rec


# ---------------------------------------------------------------------------
# Parity-clause cut gadget
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GadgetTemplate:
    """Per-clause graph fragment whose best local cut encodes clause parity."""

    shared: tuple[str, ...]  # ground vertex then the three clause variables
    local: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    sat_cut: int
    unsat_cut: int

    @property
    def total_edges(self) -> int:
        return len(self.edges)


def load_default_gadget() -> GadgetTemplate:
    text = resources.files("lpworkbench.data").joinpath("xor_cut_gadget.json").read_text()
    return gadget_from_json(json.loads(text))


def gadget_from_json(obj: dict) -> GadgetTemplate:
    return GadgetTemplate(tuple(obj["shared"]), tuple(obj["local"]),
                          tuple((a, b) for a, b in obj["edges"]),
                          int(obj["satCut"]), int(obj["unsatCut"]))


def gadget_to_json(t: GadgetTemplate) -> dict:
    return {"shared": list(t.shared), "local": list(t.local),
            "edges": [list(e) for e in t.edges],
            "satCut": t.sat_cut, "unsatCut": t.unsat_cut}


def _gadget_best_cut(t: GadgetTemplate, sigma: tuple[int, int, int]) -> tuple[int, tuple]:
    """Maximum cut over local completions with the shared side fixed, 0 out of the cut.

    Ties break toward the lexicographically first completion so downstream
    solution maps are deterministic.
    """
    side = {t.shared[0]: 0}
    for lbl, b in zip(t.shared[1:], sigma):
        side[lbl] = b
    best, best_t = -1, None
    for comp in itertools.product((0, 1), repeat=len(t.local)):
        for lbl, b in zip(t.local, comp):
            side[lbl] = b
        cut = sum(1 for a, b in t.edges if side[a] != side[b])
        if cut > best:
            best, best_t = cut, comp
    return best, best_t


def validate_gadget(t: GadgetTemplate) -> Verdict:
    """Exhaustively certify the (sat, unsat) cut maxima over all 8 shared assignments."""
    if len(t.local) > 12:
        raise DomainError("too many local vertices for exhaustive validation")
    if len(t.shared) != 4:
        return reject("shape", detail="need the ground vertex plus three variables")
    labels = set(t.shared) | set(t.local)
    if len(labels) != len(t.shared) + len(t.local):
        return reject("shape", detail="duplicate vertex labels")
    for a, b in t.edges:
        if a not in labels or b not in labels or a == b:
            return reject("shape", witness=(a, b), detail=f"bad edge ({a},{b})")
        if a in t.shared and b in t.shared:
            return reject("shared-edge", witness=(a, b),
                          detail="edges between shared vertices collide across clauses")
    if len(set(frozenset(e) for e in t.edges)) != len(t.edges):
        return reject("shape", detail="duplicate edges")
    if t.total_edges != len(t.edges):
        return reject("shape", detail="edge count mismatch")
    for sigma in itertools.product((0, 1), repeat=3):
        want = t.sat_cut if sum(sigma) % 2 == 0 else t.unsat_cut
        got, _ = _gadget_best_cut(t, sigma)
        if got != want:
            return reject("cut-profile", witness=sigma,
                          detail=f"assignment {sigma}: best local cut {got}, expected {want}")
    return accept()


def _xor_scopes(inst: CspInstance) -> list[tuple[int, int, int]]:
    scopes = []
    for c in inst.clauses:
        if len(c.scope) != 3 or c.weight != 1:
            raise DomainError("builder needs unit-weight 3-variable clauses")
        sat = frozenset(a for a in itertools.product((0, 1), repeat=3) if sum(a) % 2 == 0)
        if c.satisfying != sat:
            raise DomainError("clauses must be even-parity checks")
        scopes.append(tuple(sorted(c.scope)))
    if len(set(scopes)) != len(scopes):
        raise DomainError("clause scopes must be distinct")
    return scopes


def maxxor_to_maxcut(inst: CspInstance, template: GadgetTemplate,
                     eps: Frac = Frac(0), delta: Frac = Frac(0)
                     ) -> tuple[Graph, ReductionRecord]:
    """Union-of-gadgets reduction from even-parity clauses to fractional cuts.

    The ground graph places one gadget per possible clause scope; an instance
    maps to the induced union of its clauses' gadgets, and an assignment maps
    to the best deterministic per-gadget completion with the ground vertex
    kept out of the cut.
    """
    v = validate_gadget(template)
    if not v.ok:
        raise DomainError(f"invalid gadget: {v.detail}")
    m = inst.num_variables
    scopes = _xor_scopes(inst)
    all_scopes = [tuple(s) for s in itertools.combinations(range(m), 3)]
    # vertex universe: ground, one vertex per variable, locals per possible scope
    names: list = ["0"] + [("x", i) for i in range(m)]
    for sc in all_scopes:
        names += [(sc, lbl) for lbl in template.local]
    index = {nm: i + 1 for i, nm in enumerate(names)}
    if len(names) > 14:
        raise DomainError("ground graph too large for enumerated cut solutions")

    def gadget_edges(sc):
        lblmap = {template.shared[0]: "0"}
        for lbl, var in zip(template.shared[1:], sc):
            lblmap[lbl] = ("x", var)
        for lbl in template.local:
            lblmap[lbl] = (sc, lbl)
        return [edge(index[lblmap[a]], index[lblmap[b]]) for a, b in template.edges]

    ground_edges = [e for sc in all_scopes for e in gadget_edges(sc)]
    ground = Graph.build(len(names), ground_edges, range(1, len(names) + 1))

    def image_vertices(scs):
        vs = {index["0"]}
        for sc in scs:
            vs |= {index[("x", var)] for var in sc}
            vs |= {index[(sc, lbl)] for lbl in template.local}
        return frozenset(vs)

    img_vs = image_vertices(scopes)
    tgt = maxcut_fraction_on(ground, [img_vs])
    img = ground.induced(img_vs)

    def map_solution(a: tuple[int, ...]) -> frozenset:
        chosen = {index[("x", i)] for i in range(m) if a[i] == 1}
        for sc in scopes:
            sigma = tuple(a[var] for var in sc)
            _, comp = _gadget_best_cut(template, sigma)
            chosen |= {index[(sc, lbl)] for lbl, b in zip(template.local, comp) if b == 1}
        return frozenset(chosen)

    src = csp_problem([inst], m, 2, name=f"EvenParity3({m})")
    sol_map = {a: map_solution(a) for a in src.solutions}
    scale = Frac(template.sat_cut - template.unsat_cut, 2)  # per-clause slope over edges
    c1 = {inst: 1 - eps}
    s1 = {inst: Frac(1, 2) + delta}
    c2 = {img: Frac(4, 5) - eps / 10}
    s2 = {img: Frac(3, 4) + delta / 10}
    nr, nc = 1, len(src.solutions)
    m1 = constant_matrix(Frac(template.total_edges, int(2 * scale)), nr, nc)
    rec = ReductionRecord.build(src, tgt, c1, s1, c2, s2, {inst: img}, sol_map,
                                m1, constant_matrix(0, nr, nc))
    return ground, rec
