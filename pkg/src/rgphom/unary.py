"""Solvers for patterns whose labels are a single symbol a or a+.

This fragment reduces to classical homomorphism questions on digraphs
with two arc labels: 'a' arcs map locally, and a+ arcs may stretch
along any nonempty walk, which is exactly reachability in the target.
The module covers four layers:

* the reduction itself (d_of_q, reduce_to_hom, hom_two_labeled);
* structural audits and the dichotomy classifier for undirected,
  connected core templates, plus the polynomial-case solvers;
* the simplification pipeline for directed-path targets whose arcs are
  all 'a' (collapse_levels, prune_plus_arcs) and its reformulation as
  a scheduling feasibility problem solved by shortest paths;
* the majority-polymorphism route for mixed {a, a+} path targets
  (median_polymorphism, path_consistency_solve).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from collections import Counter, deque
from enum import Enum
from typing import Any, Iterable, Mapping, Sequence

from .csp import Constraint, iter_csp_solutions, solve_csp
from .errors import (
    NotAcyclicError,
    NotBalancedError,
    PreconditionError,
    SearchBudget,
)
from .nhom import NHomomorphism, is_n_core, n_hom
from .regexes import RegexAst, Sym
from .rgp import (
    LabelKind,
    Rgp,
    directed_path_order,
    label_class,
    make_rgp,
    structural_predicates,
)
from .walks import relation_for_label


# ---------------------------------------------------------------------------
# Two-labeled digraphs and the reduction to classical homomorphism


@dataclass(frozen=True)
class TwoLabeledDigraph:
    """A digraph with arcs labeled 'a' or 't', at most one per label
    and ordered pair."""

    vertices: tuple[str, ...]
    a_arcs: frozenset[tuple[str, str]]
    t_arcs: frozenset[tuple[str, str]]

    def __post_init__(self):
        known = set(self.vertices)
        if len(known) != len(self.vertices):
            raise PreconditionError("duplicate vertex ids")
        for u, v in list(self.a_arcs) + list(self.t_arcs):
            if u not in known or v not in known:
                raise PreconditionError(f"arc endpoint {u!r}->{v!r} unknown")

    def to_json(self) -> dict[str, Any]:
        arcs = [{"from": u, "to": v, "label": "a"}
                for u, v in sorted(self.a_arcs)]
        arcs += [{"from": u, "to": v, "label": "t"}
                 for u, v in sorted(self.t_arcs)]
        return {"vertices": list(self.vertices), "arcs": arcs}

    @classmethod
    def from_json(cls, doc: "str | Mapping[str, Any]") -> "TwoLabeledDigraph":
        if isinstance(doc, str):
            doc = json.loads(doc)
        a_arcs, t_arcs = set(), set()
        for arc in doc["arcs"]:
            pair = (str(arc["from"]), str(arc["to"]))
            if arc["label"] == "a":
                a_arcs.add(pair)
            elif arc["label"] == "t":
                t_arcs.add(pair)
            else:
                raise PreconditionError(f"unknown label {arc['label']!r}")
        return cls(tuple(str(v) for v in doc["vertices"]),
                   frozenset(a_arcs), frozenset(t_arcs))

    def to_dot(self) -> str:
        lines = ["digraph {"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for u, v in sorted(self.a_arcs):
            lines.append(f'  "{u}" -> "{v}" [label="a"];')
        for u, v in sorted(self.t_arcs):
            lines.append(f'  "{u}" -> "{v}" [label="t", style=dashed];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _require_unary(p: Rgp, role: str) -> str | None:
    cls = label_class(p)
    if cls.kind is LabelKind.GENERAL:
        raise PreconditionError(f"{role} labels must all be a or a+")
    return cls.symbol


def _split_arcs(p: Rgp) -> tuple[set[tuple[str, str]], set[tuple[str, str]]]:
    """Deduplicated (src, dst) pairs of single-symbol arcs and plus arcs."""
    single, plussed = set(), set()
    for arc in p.arcs:
        if isinstance(arc.label, Sym):
            single.add((arc.src, arc.dst))
        else:
            plussed.add((arc.src, arc.dst))
    return single, plussed


def _reachable_pairs(p: Rgp) -> frozenset[tuple[str, str]]:
    """Ordered pairs joined by a directed walk of length >= 1, any labels."""
    out: dict[str, set[str]] = {v: set() for v in p.vertices}
    for arc in p.arcs:
        out[arc.src].add(arc.dst)
    pairs = set()
    for start in p.vertices:
        frontier = deque(out[start])
        seen = set(out[start])
        while frontier:
            v = frontier.popleft()
            pairs.add((start, v))
            for w in out[v]:
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
    return frozenset(pairs)


def d_of_q(q: Rgp) -> TwoLabeledDigraph:
    """The target-side translation: keep 'a' arcs, and add a 't' arc
    u -> v for every pair joined by a nonempty directed walk."""
    _require_unary(q, "target")
    single, _ = _split_arcs(q)
    return TwoLabeledDigraph(q.vertices, frozenset(single), _reachable_pairs(q))


def reduce_to_hom(p: Rgp, q: Rgp) -> tuple[TwoLabeledDigraph, TwoLabeledDigraph]:
    """Translate an {a, a+} instance into a two-labeled digraph pair.

    The pattern keeps its arcs with a+ renamed to 't' (no closure); the
    target becomes d_of_q(q). A navigational homomorphism p to q exists
    exactly when a classical labeled homomorphism exists between the
    results.
    """
    sp = _require_unary(p, "pattern")
    sq = _require_unary(q, "target")
    if sp is not None and sq is not None and sp != sq:
        raise PreconditionError(f"mismatched symbols {sp!r} vs {sq!r}")
    single, plussed = _split_arcs(p)
    pattern = TwoLabeledDigraph(p.vertices, frozenset(single), frozenset(plussed))
    return pattern, d_of_q(q)


def hom_two_labeled(
    g: TwoLabeledDigraph,
    h: TwoLabeledDigraph,
    budget: SearchBudget | None = None,
) -> dict[str, str] | None:
    """Label-preserving digraph homomorphism g -> h, or None."""
    budget = budget or SearchBudget()
    if not g.vertices:
        return {}
    if not h.vertices:
        return None
    domain = sorted(h.vertices)
    domains = {v: domain for v in g.vertices}
    constraints = [Constraint(u, v, h.a_arcs) for u, v in sorted(g.a_arcs)]
    constraints += [Constraint(u, v, h.t_arcs) for u, v in sorted(g.t_arcs)]
    return solve_csp(g.vertices, domains, constraints, budget)


# ---------------------------------------------------------------------------
# Undirected templates: core audit, dichotomy classifier, easy solvers


@dataclass(frozen=True)
class Violation:
    """One failed audit item, with a machine-checkable witness."""

    item: str
    detail: str
    witness: Any = None


def _undirected_edges(q: Rgp) -> list[tuple[str, str, bool]]:
    """Distinct unordered edges as (u, v, is_plus) with u <= v."""
    edges = set()
    for arc in q.arcs:
        u, v = sorted((arc.src, arc.dst))
        edges.add((u, v, not isinstance(arc.label, Sym)))
    return sorted(edges)


def _a_edge_adjacency(q: Rgp) -> dict[str, set[str]]:
    adj: dict[str, set[str]] = {v: set() for v in q.vertices}
    for arc in q.arcs:
        if isinstance(arc.label, Sym) and arc.src != arc.dst:
            adj[arc.src].add(arc.dst)
            adj[arc.dst].add(arc.src)
    return adj


def _edge_induced_a_components(q: Rgp) -> list[Rgp]:
    """Connected components of the a-edge subgraph, as standalone
    patterns; vertices touched by no 'a' edge belong to none."""
    adj = _a_edge_adjacency(q)
    loops = {arc.src for arc in q.arcs
             if isinstance(arc.label, Sym) and arc.src == arc.dst}
    seen: set[str] = set()
    components = []
    for root in q.vertices:
        if root in seen or (not adj[root] and root not in loops):
            continue
        stack, members = [root], {root}
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in members:
                    members.add(w)
                    stack.append(w)
        seen |= members
        vertices = [v for v in q.vertices if v in members]
        arcs = [(a.src, a.dst, a.label) for a in q.arcs
                if isinstance(a.label, Sym) and a.src in members and a.dst in members]
        components.append(make_rgp(q.alphabet, vertices, arcs))
    return components


def _plus_incident_vertices(q: Rgp, members: Iterable[str]) -> list[str]:
    members = set(members)
    hit = set()
    for arc in q.arcs:
        if not isinstance(arc.label, Sym):
            if arc.src in members:
                hit.add(arc.src)
            if arc.dst in members:
                hit.add(arc.dst)
    return [v for v in q.vertices if v in hit]


def audit_undirected_ncore(
    q: Rgp,
    budget: SearchBudget | None = None,
) -> list[Violation]:
    """Necessary conditions for an undirected connected {a, a+} pattern
    to be a core. An empty list does not prove core-ness; any entry
    disproves it.

    Items over the components S_1..S_p of the subgraph formed by the
    'a' edges (components with at least one 'a' edge; an a+ endpoint
    with no 'a' edge spans no component of its own), writing X_i for
    the vertices of S_i touching an a+ edge of q:
      a: some edge is labeled 'a', unless q has at most one edge;
      b: a loop forces a single vertex;
      c: in a loop-free pattern every a+ edge is a bridge;
      d: if |X_i| <= 1 then S_i has no homomorphism into any other S_j;
      e: every endomorphism of S_i fixing X_i pointwise is an
         automorphism.
    """
    budget = budget or SearchBudget()
    report = structural_predicates(q)
    if not report.is_undirected or not report.is_connected:
        raise PreconditionError("audit needs an undirected connected pattern")
    _require_unary(q, "template")
    violations: list[Violation] = []
    edges = _undirected_edges(q)
    loops = [(u, v, plussed) for u, v, plussed in edges if u == v]

    if len(edges) >= 2 and all(plussed for _, _, plussed in edges):
        violations.append(Violation(
            "a", f"{len(edges)} edges but none labeled 'a'"))

    if loops and len(q.vertices) > 1:
        u = loops[0][0]
        violations.append(Violation(
            "b", f"loop at {u!r} alongside {len(q.vertices) - 1} other vertices",
            witness=u))

    if not loops:
        for u, v, plussed in edges:
            if not plussed:
                continue
            if _connected_without(q.vertices, edges, (u, v, plussed)):
                violations.append(Violation(
                    "c", f"a+ edge {u!r}--{v!r} is not a bridge",
                    witness=(u, v)))

    components = _edge_induced_a_components(q)
    anchors = [_plus_incident_vertices(q, c.vertices) for c in components]
    for i, source in enumerate(components):
        if len(anchors[i]) > 1:
            continue
        for j, target in enumerate(components):
            if i == j:
                continue
            h = n_hom(source, target, budget)
            if h is not None:
                violations.append(Violation(
                    "d",
                    f"component of {source.vertices[0]!r} (|X|={len(anchors[i])}) "
                    f"maps into component of {target.vertices[0]!r}",
                    witness=h.mapping))
    for i, component in enumerate(components):
        bad = _non_bijective_endo(component, anchors[i], budget)
        if bad is not None:
            violations.append(Violation(
                "e",
                f"component of {component.vertices[0]!r} has a non-surjective "
                "endomorphism fixing its a+ anchors",
                witness=bad))
    return violations


def _connected_without(vertices, edges, dropped) -> bool:
    """Are dropped's endpoints still connected once it is removed?"""
    adj: dict[str, set[str]] = {v: set() for v in vertices}
    for edge in edges:
        if edge == dropped:
            continue
        u, v, _ = edge
        adj[u].add(v)
        adj[v].add(u)
    u, v, _ = dropped
    stack, seen = [u], {u}
    while stack:
        x = stack.pop()
        if x == v:
            return True
        for w in adj[x]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def _non_bijective_endo(
    comp: Rgp,
    fixed: Sequence[str],
    budget: SearchBudget,
) -> dict[str, str] | None:
    """An endomorphism of comp fixing the given vertices that is not a
    bijection, if one exists."""
    domain = sorted(comp.vertices)
    pins = set(fixed)
    domains = {v: [v] if v in pins else domain for v in comp.vertices}
    pairs = frozenset((a.src, a.dst) for a in comp.arcs)
    constraints = [Constraint(a.src, a.dst, pairs) for a in comp.arcs]
    for f in iter_csp_solutions(comp.vertices, domains, constraints, budget):
        if len(set(f.values())) != len(comp.vertices):
            return f
    return None


class TemplateKind(Enum):
    POLY_SINGLE_VERTEX_NO_LOOP = "PolySingleVertexNoLoop"
    POLY_LOOP_A = "PolyLoopA"
    POLY_LOOP_A_PLUS = "PolyLoopAPlus"
    POLY_SINGLE_EDGE_A = "PolySingleEdgeA"
    POLY_SINGLE_EDGE_A_PLUS = "PolySingleEdgeAPlus"
    NP_COMPLETE = "NPComplete"


@dataclass(frozen=True)
class TemplateClass:
    kind: TemplateKind
    # Cyclic vertex sequence in the a-subgraph, odd length; only for
    # NP_COMPLETE.
    odd_cycle: tuple[str, ...] | None = None


# Verifying a core claim is cheap below this size; larger templates
# must vouch for themselves via assume_core.
_RECHECK_LIMIT = 8


def classify_undirected_template(
    q: Rgp,
    assume_core: bool = False,
    budget: SearchBudget | None = None,
) -> TemplateClass:
    """Sort an undirected connected core template into its complexity
    class: one of five single-edge-or-less polynomial shapes, or
    NP-complete with an odd a-cycle as the hardness witness."""
    report = structural_predicates(q)
    if not report.is_undirected or not report.is_connected:
        raise PreconditionError("template must be undirected and connected")
    _require_unary(q, "template")
    if not assume_core and len(q.vertices) <= _RECHECK_LIMIT:
        if not is_n_core(q, budget).is_core:
            raise PreconditionError("template is not a core")
    edges = _undirected_edges(q)
    if len(edges) == 0:
        return TemplateClass(TemplateKind.POLY_SINGLE_VERTEX_NO_LOOP)
    if len(edges) == 1:
        u, v, plussed = edges[0]
        if u == v:
            kind = (TemplateKind.POLY_LOOP_A_PLUS if plussed
                    else TemplateKind.POLY_LOOP_A)
        else:
            kind = (TemplateKind.POLY_SINGLE_EDGE_A_PLUS if plussed
                    else TemplateKind.POLY_SINGLE_EDGE_A)
        return TemplateClass(kind)
    cycle = odd_a_cycle(q)
    if cycle is None:
        raise PreconditionError(
            "multi-edge template with bipartite a-subgraph is not a core")
    return TemplateClass(TemplateKind.NP_COMPLETE, odd_cycle=cycle)


def odd_a_cycle(q: Rgp) -> tuple[str, ...] | None:
    """A closed walk of odd length along 'a' edges, as its cyclic
    vertex sequence, or None when the a-subgraph is bipartite."""
    for arc in q.arcs:
        if isinstance(arc.label, Sym) and arc.src == arc.dst:
            return (arc.src,)
    adj = _a_edge_adjacency(q)
    color: dict[str, int] = {}
    parent: dict[str, str | None] = {}
    for root in q.vertices:
        if root in color:
            continue
        color[root] = 0
        parent[root] = None
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in sorted(adj[v]):
                if w not in color:
                    color[w] = color[v] ^ 1
                    parent[w] = v
                    queue.append(w)
                elif color[w] == color[v]:
                    return _close_walk(parent, v, w)
    return None


def _close_walk(parent, v, w) -> tuple[str, ...]:
    """Join the tree paths of the conflict edge (v, w) into an odd
    closed walk: root..v, then w..back to root (root listed once)."""
    up_v = [v]
    while parent[up_v[-1]] is not None:
        up_v.append(parent[up_v[-1]])
    up_w = [w]
    while parent[up_w[-1]] is not None:
        up_w.append(parent[up_w[-1]])
    return tuple(reversed(up_v)) + tuple(up_w[:-1])


def solve_undirected_easy(template: TemplateClass, p: Rgp) -> bool:
    """Decide pattern-to-template existence for a polynomial class by
    the matching closed-form test."""
    report = structural_predicates(p)
    if not report.is_undirected:
        raise PreconditionError("pattern must be undirected")
    _require_unary(p, "pattern")
    edges = _undirected_edges(p)
    kind = template.kind
    if kind is TemplateKind.POLY_SINGLE_VERTEX_NO_LOOP:
        return not edges
    if kind is TemplateKind.POLY_LOOP_A:
        return True
    if kind in (TemplateKind.POLY_LOOP_A_PLUS,
                TemplateKind.POLY_SINGLE_EDGE_A_PLUS):
        return all(plussed for _, _, plussed in edges)
    if kind is TemplateKind.POLY_SINGLE_EDGE_A:
        return _a_subgraph_bipartite(p)
    raise PreconditionError(f"{kind.value} is not a polynomial class")


def _a_subgraph_bipartite(p: Rgp) -> bool:
    return odd_a_cycle(p) is None


def easy_certificate(
    template: TemplateClass,
    p: Rgp,
    q: Rgp,
    budget: SearchBudget | None = None,
) -> NHomomorphism | None:
    """Certificate companion to solve_undirected_easy: the concrete
    homomorphism behind a positive answer, with witness walks in q."""
    if not solve_undirected_easy(template, p):
        return None
    kind = template.kind
    if kind is TemplateKind.POLY_SINGLE_EDGE_A:
        ends = sorted({v for arc in q.arcs for v in (arc.src, arc.dst)})
        side = _two_coloring(p)
        mapping = {v: ends[side[v]] for v in p.vertices}
    else:
        anchor = q.vertices[0]
        mapping = {v: anchor for v in p.vertices}
    witnesses = {}
    for i, arc in enumerate(p.arcs):
        relation = relation_for_label(q, arc.label, budget)
        witnesses[i] = relation.witnesses[(mapping[arc.src], mapping[arc.dst])]
    return NHomomorphism(mapping=mapping, witnesses=witnesses)


def _two_coloring(p: Rgp) -> dict[str, int]:
    """A 2-coloring of p's (bipartite) a-subgraph; a+-only vertices
    default to side 0."""
    adj = _a_edge_adjacency(p)
    side: dict[str, int] = {}
    for root in p.vertices:
        if root in side:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in sorted(adj[v]):
                if w not in side:
                    side[w] = side[v] ^ 1
                    queue.append(w)
    return side


# ---------------------------------------------------------------------------
# Directed-path targets, all arcs 'a': collapse, prune, schedule


@dataclass(frozen=True)
class CollapsedPattern:
    """Result of collapse_levels: the merged pattern plus the map from
    original vertices to their merged representative."""

    rgp: Rgp
    vertex_map: dict[str, str]


def _vertex_a_components(p: Rgp) -> list[list[str]]:
    """Components of the spanning a-edge subgraph, isolated vertices
    included, each listed in p.vertices order."""
    adj = _a_edge_adjacency_directed(p)
    seen: set[str] = set()
    components = []
    for root in p.vertices:
        if root in seen:
            continue
        members = {root}
        stack = [root]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in members:
                    members.add(w)
                    stack.append(w)
        seen |= members
        components.append([v for v in p.vertices if v in members])
    return components


def _a_edge_adjacency_directed(p: Rgp) -> dict[str, set[str]]:
    """Undirected adjacency over the directed single-symbol arcs."""
    adj: dict[str, set[str]] = {v: set() for v in p.vertices}
    for arc in p.arcs:
        if isinstance(arc.label, Sym):
            adj[arc.src].add(arc.dst)
            adj[arc.dst].add(arc.src)
    return adj


def collapse_levels(p: Rgp) -> CollapsedPattern:
    """First simplification against a directed-path target.

    Within one a-component, every vertex of a given level must share
    its image, so such vertices merge into one (named after the first
    original member). Each merged a-component is then a directed path.
    A forward a+ arc inside a component is satisfied automatically and
    is dropped; a non-forward one closes a directed cycle, so it is
    reported as NotAcyclicError, as is any directed cycle in p itself.
    The a-subgraph must admit a leveling, else NotBalancedError.
    """
    _require_unary(p, "pattern")
    if not structural_predicates(p).is_acyclic:
        raise NotAcyclicError("pattern has a directed cycle")
    a_arcs = [(a.src, a.dst, "a") for a in p.arcs if isinstance(a.label, Sym)]
    a_sub = make_rgp(("a",), p.vertices, a_arcs)
    levels = structural_predicates(a_sub).levels
    if levels is None:
        raise NotBalancedError("a-subgraph admits no leveling")

    comp_of = _component_index(p)
    vertex_map: dict[str, str] = {}
    merged_order: list[str] = []
    for component in _vertex_a_components(p):
        groups: dict[int, str] = {}
        for v in component:
            rep = groups.setdefault(levels[v], v)
            vertex_map[v] = rep
        for level in sorted(groups):
            merged_order.append(groups[level])

    arcs: list[tuple[str, str, RegexAst]] = []
    emitted = set()
    for arc in p.arcs:
        src, dst = vertex_map[arc.src], vertex_map[arc.dst]
        if (not isinstance(arc.label, Sym)
                and comp_of[arc.src] == comp_of[arc.dst]):
            if levels[arc.src] < levels[arc.dst]:
                continue
            raise NotAcyclicError(
                f"a+ arc {arc.src!r}->{arc.dst!r} closes a cycle after merging")
        key = (src, dst, arc.label)
        if key not in emitted:
            emitted.add(key)
            arcs.append(key)
    merged = make_rgp(p.alphabet, merged_order, arcs)
    return CollapsedPattern(rgp=merged, vertex_map=vertex_map)


def _component_index(p: Rgp) -> dict[str, int]:
    index = {}
    for i, component in enumerate(_vertex_a_components(p)):
        for v in component:
            index[v] = i
    return index


def _component_paths(p: Rgp) -> list[list[str]]:
    """The a-components of p, each required to be a directed path,
    listed source to sink."""
    comp_of = _component_index(p)
    succ: dict[str, str] = {}
    indeg: Counter[str] = Counter()
    for arc in p.arcs:
        if not isinstance(arc.label, Sym):
            continue
        if arc.src in succ and succ[arc.src] != arc.dst:
            raise PreconditionError("a-component is not a directed path")
        succ[arc.src] = arc.dst
        indeg[arc.dst] += 1
    paths = []
    for component in _vertex_a_components(p):
        starts = [v for v in component if indeg[v] == 0]
        if len(starts) != 1:
            raise PreconditionError("a-component is not a directed path")
        path = [starts[0]]
        while path[-1] in succ:
            nxt = succ[path[-1]]
            if comp_of[nxt] != comp_of[path[0]] or nxt in path:
                raise PreconditionError("a-component is not a directed path")
            path.append(nxt)
        if len(path) != len(component):
            raise PreconditionError("a-component is not a directed path")
        paths.append(path)
    return paths


def prune_plus_arcs(p_prime: "Rgp | CollapsedPattern") -> Rgp | None:
    """Second simplification: between each ordered pair of a-path
    components keep only the dominant a+ arc, the one maximizing
    i - j over 1-based source and target positions. Intra-component
    a+ arcs are dropped when strictly forward and make the instance
    infeasible (None) otherwise.
    """
    p = p_prime.rgp if isinstance(p_prime, CollapsedPattern) else p_prime
    _require_unary(p, "pattern")
    paths = _component_paths(p)
    comp_of: dict[str, int] = {}
    pos: dict[str, int] = {}
    for c, path in enumerate(paths):
        for k, v in enumerate(path, start=1):
            comp_of[v] = c
            pos[v] = k

    best: dict[tuple[int, int], tuple[int, int]] = {}
    kept_a: list[int] = []
    for idx, arc in enumerate(p.arcs):
        if isinstance(arc.label, Sym):
            kept_a.append(idx)
            continue
        ci, cj = comp_of[arc.src], comp_of[arc.dst]
        if ci == cj:
            if pos[arc.src] >= pos[arc.dst]:
                return None
            continue
        gap = pos[arc.src] - pos[arc.dst]
        cur = best.get((ci, cj))
        if cur is None or gap > cur[0]:
            best[(ci, cj)] = (gap, idx)
    keep = set(kept_a) | {idx for _, idx in best.values()}
    arcs = [(a.src, a.dst, a.label)
            for i, a in enumerate(p.arcs) if i in keep]
    return make_rgp(p.alphabet, p.vertices, arcs)


@dataclass(frozen=True)
class SchedulingInstance:
    """Feasibility instance: every job C runs for duration[C] unit
    steps, must finish by horizon, and each constraint (C1, C2, r)
    demands t(C1) <= t(C2) + r. Pairs without a constraint are free."""

    jobs: tuple[str, ...]
    durations: dict[str, int] = field(hash=False)
    constraints: tuple[tuple[str, str, int], ...] = ()
    horizon: int = 0

    def to_json(self) -> dict[str, Any]:
        return {
            "jobs": list(self.jobs),
            "durations": dict(self.durations),
            "constraints": [list(c) for c in self.constraints],
            "horizon": self.horizon,
        }

    @classmethod
    def from_json(cls, doc: "str | Mapping[str, Any]") -> "SchedulingInstance":
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls(
            jobs=tuple(str(j) for j in doc["jobs"]),
            durations={str(k): int(v) for k, v in doc["durations"].items()},
            constraints=tuple((str(a), str(b), int(r))
                              for a, b, r in doc["constraints"]),
            horizon=int(doc["horizon"]),
        )


def to_scheduling(p2: Rgp, n: int) -> SchedulingInstance:
    """Translate a pruned pattern into job scheduling against an
    n-vertex all-'a' path.

    One job per a-path component, with the component's arc count as
    duration. The surviving a+ arc u_i -> v_j between two components
    becomes the deadline t(C1) <= t(C2) + (j - i - 1): the walk needs
    the source's image strictly before the target's.
    """
    if n < 1:
        raise PreconditionError("target path needs at least one vertex")
    paths = _component_paths(p2)
    comp_of: dict[str, int] = {}
    pos: dict[str, int] = {}
    for c, path in enumerate(paths):
        for k, v in enumerate(path, start=1):
            comp_of[v] = c
            pos[v] = k
    jobs = tuple(path[0] for path in paths)
    durations = {path[0]: len(path) - 1 for path in paths}
    tightest: dict[tuple[int, int], int] = {}
    for arc in p2.arcs:
        if isinstance(arc.label, Sym):
            continue
        ci, cj = comp_of[arc.src], comp_of[arc.dst]
        if ci == cj:
            raise PreconditionError("intra-component a+ arc; prune first")
        r = pos[arc.dst] - pos[arc.src] - 1
        key = (ci, cj)
        tightest[key] = min(tightest.get(key, r), r)
    constraints = tuple(
        (jobs[ci], jobs[cj], r)
        for (ci, cj), r in sorted(tightest.items()))
    return SchedulingInstance(jobs=jobs, durations=durations,
                              constraints=constraints, horizon=n - 1)


@dataclass(frozen=True)
class ScheduleResult:
    feasible: bool
    start_times: dict[str, int] | None = None
    # Difference-constraint edges (from, to, weight) forming a cycle
    # whose weights sum below zero; set only when infeasible.
    negative_cycle: tuple[tuple[str, str, int], ...] | None = None


def solve_scheduling(inst: SchedulingInstance) -> ScheduleResult:
    """Feasibility via single-source shortest paths.

    Each job's start is bounded by 0 <= t(C) and t(C) <= horizon - d(C),
    and each deadline is the difference constraint t(C1) - t(C2) <= r.
    All of them become weighted edges from a root pseudo-job; the
    system is feasible exactly when no negative cycle exists, and the
    shortest-path distances (shifted so the root sits at zero) are the
    componentwise latest valid start times.
    """
    root = ""
    while root in inst.jobs:
        root += "_"
    nodes = [root, *inst.jobs]
    edges = [(root, job, inst.horizon - inst.durations[job])
             for job in inst.jobs]
    edges += [(job, root, 0) for job in inst.jobs]
    edges += [(c2, c1, r) for c1, c2, r in inst.constraints]

    dist = {v: 0 if v == root else None for v in nodes}
    pred: dict[str, tuple[str, str, int] | None] = {v: None for v in nodes}
    for _ in range(len(nodes) - 1):
        changed = False
        for u, v, w in edges:
            if dist[u] is not None and (dist[v] is None or dist[u] + w < dist[v]):
                dist[v] = dist[u] + w
                pred[v] = (u, v, w)
                changed = True
        if not changed:
            break
    for u, v, w in edges:
        if dist[u] is not None and (dist[v] is None or dist[u] + w < dist[v]):
            return ScheduleResult(False, negative_cycle=_extract_cycle(pred, u, v, w, nodes))
    starts = {job: dist[job] - dist[root] for job in inst.jobs}
    return ScheduleResult(True, start_times=starts)


def _extract_cycle(pred, u, v, w, nodes) -> tuple[tuple[str, str, int], ...]:
    """Walk predecessor edges back from a still-relaxable edge until a
    node repeats, then cut out the cycle."""
    pred = dict(pred)
    pred[v] = (u, v, w)
    node = v
    for _ in range(len(nodes)):
        node = pred[node][0]
    cycle = []
    cursor = node
    while True:
        edge = pred[cursor]
        cycle.append(edge)
        cursor = edge[0]
        if cursor == node:
            break
    cycle.reverse()
    return tuple(cycle)


# ---------------------------------------------------------------------------
# Directed-path targets with {a, a+} labels


def solve_path_template(
    p: Rgp,
    q: Rgp,
    budget: SearchBudget | None = None,
) -> NHomomorphism | None:
    """Polynomial solver for directed-path targets.

    All-'a' targets run collapse -> prune -> scheduling and rebuild the
    map from start times (position k of job C lands on path vertex
    t(C)+k-1). Mixed {a, a+} targets go through the two-labeled
    reduction and path-consistency. Witness walks come from the walk
    relation in either case.
    """
    cert, _ = solve_path_template_with_reason(p, q, budget)
    return cert


def solve_path_template_with_reason(
    p: Rgp,
    q: Rgp,
    budget: SearchBudget | None = None,
) -> tuple[NHomomorphism | None, str | None]:
    """solve_path_template plus a short diagnostic for the NO answers."""
    order = directed_path_order(q)
    if order is None:
        raise PreconditionError("target is not a directed path")
    sq = _require_unary(q, "target")
    sp = _require_unary(p, "pattern")
    if sp is not None and sq is not None and sp != sq:
        raise PreconditionError(f"mismatched symbols {sp!r} vs {sq!r}")
    if not p.vertices:
        return NHomomorphism({}, {}), None
    if not q.vertices:
        return None, "empty target"

    if label_class(q).kind is LabelKind.UNARY_A_APLUS:
        pattern, template = reduce_to_hom(p, q)
        mapping = path_consistency_solve(pattern, template)
        if mapping is None:
            return None, "no mapping survives path consistency"
        return _attach_witnesses(p, q, mapping, budget), None

    try:
        collapsed = collapse_levels(p)
    except NotAcyclicError as exc:
        return None, str(exc)
    except NotBalancedError as exc:
        return None, str(exc)
    pruned = prune_plus_arcs(collapsed)
    if pruned is None:
        return None, "conflicting a+ order constraints inside a component"
    inst = to_scheduling(pruned, len(q.vertices))
    result = solve_scheduling(inst)
    if not result.feasible:
        return None, "scheduling infeasible"
    paths = _component_paths(pruned)
    index: dict[str, int] = {}
    for path in paths:
        start = result.start_times[path[0]]
        for k, v in enumerate(path, start=1):
            index[v] = start + k - 1
    mapping = {v: order[index[collapsed.vertex_map[v]]] for v in p.vertices}
    return _attach_witnesses(p, q, mapping, budget), None


def _attach_witnesses(p, q, mapping, budget) -> NHomomorphism:
    witnesses = {}
    for i, arc in enumerate(p.arcs):
        relation = relation_for_label(q, arc.label, budget)
        witnesses[i] = relation.witnesses[(mapping[arc.src], mapping[arc.dst])]
    return NHomomorphism(mapping=dict(mapping), witnesses=witnesses)


# ---------------------------------------------------------------------------
# Majority polymorphism and path consistency


@dataclass(frozen=True)
class MajorityTable:
    """An explicit ternary operation on a vertex set."""

    vertices: tuple[str, ...]
    table: dict[tuple[str, str, str], str] = field(hash=False)

    def __call__(self, x: str, y: str, z: str) -> str:
        return self.table[(x, y, z)]


def median_table(order: Sequence[str]) -> MajorityTable:
    """The median operation induced by a vertex order."""
    index = {v: i for i, v in enumerate(order)}
    table = {}
    for x in order:
        for y in order:
            for z in order:
                mid = sorted((index[x], index[y], index[z]))[1]
                table[(x, y, z)] = order[mid]
    return MajorityTable(tuple(order), table)


def median_polymorphism(q: Rgp) -> MajorityTable:
    """The median over a directed-path template's natural vertex order.

    For such templates this is a majority polymorphism of d_of_q(q),
    which is what makes the fragment polynomial.
    """
    order = directed_path_order(q)
    if order is None:
        raise PreconditionError("target is not a directed path")
    return median_table(order)


def is_majority_polymorphism(d: TwoLabeledDigraph, f: MajorityTable) -> bool:
    """Exhaustively check the majority identities and that f maps every
    same-labeled arc triple of d to an arc with that label."""
    if set(f.vertices) != set(d.vertices):
        raise PreconditionError("table and digraph vertex sets differ")
    for x in d.vertices:
        for y in d.vertices:
            if not f(x, x, y) == f(x, y, x) == f(y, x, x) == x:
                return False
    for arcs in (d.a_arcs, d.t_arcs):
        pairs = sorted(arcs)
        for x1, y1 in pairs:
            for x2, y2 in pairs:
                for x3, y3 in pairs:
                    if (f(x1, x2, x3), f(y1, y2, y3)) not in arcs:
                        return False
    return True


def path_consistency_solve(
    g: TwoLabeledDigraph,
    h: TwoLabeledDigraph,
) -> dict[str, str] | None:
    """Homomorphism search that is complete whenever h has a majority
    polymorphism: establish (2,3)-consistency over pairwise allowed
    lists, then extract an assignment greedily, re-closing after each
    choice."""
    if not g.vertices:
        return {}
    if not h.vertices:
        return None
    state = _PcState(g, h)
    if not state.close():
        return None
    mapping: dict[str, str] = {}
    for v in g.vertices:
        chosen = None
        for u in sorted(state.dom[v]):
            trial = state.copy()
            trial.dom[v] = {u}
            if trial.close():
                chosen = u
                state = trial
                break
        if chosen is None:
            return None
        mapping[v] = chosen
    return mapping


class _PcState:
    """Domains plus pairwise allowed-value sets, closed under the
    (2,3)-consistency rule."""

    def __init__(self, g: TwoLabeledDigraph, h: TwoLabeledDigraph):
        self.names = g.vertices
        self.dom: dict[str, set[str]] = {v: set(h.vertices) for v in g.vertices}
        full = {(u, w) for u in h.vertices for w in h.vertices}
        self.rel: dict[tuple[str, str], set[tuple[str, str]]] = {}
        for i, x in enumerate(self.names):
            for y in self.names[i + 1:]:
                self.rel[(x, y)] = set(full)
        for g_arcs, h_arcs in ((g.a_arcs, h.a_arcs), (g.t_arcs, h.t_arcs)):
            for x, y in sorted(g_arcs):
                if x == y:
                    self.dom[x] &= {u for u, w in h_arcs if u == w}
                elif (x, y) in self.rel:
                    self.rel[(x, y)] &= h_arcs
                else:
                    self.rel[(y, x)] &= {(w, u) for u, w in h_arcs}

    def copy(self) -> "_PcState":
        dup = _PcState.__new__(_PcState)
        dup.names = self.names
        dup.dom = {v: set(s) for v, s in self.dom.items()}
        dup.rel = {k: set(s) for k, s in self.rel.items()}
        return dup

    def pairs(self, x: str, y: str) -> set[tuple[str, str]]:
        if (x, y) in self.rel:
            return self.rel[(x, y)]
        return {(b, a) for a, b in self.rel[(y, x)]}

    def close(self) -> bool:
        names = self.names
        changed = True
        while changed:
            changed = False
            for (x, y), allowed in self.rel.items():
                filtered = {(u, w) for u, w in allowed
                            if u in self.dom[x] and w in self.dom[y]}
                for z in names:
                    if z == x or z == y:
                        continue
                    xz = self.pairs(x, z)
                    zy = self.pairs(z, y)
                    filtered = {
                        (u, w) for u, w in filtered
                        if any((u, m) in xz and (m, w) in zy
                               for m in self.dom[z])}
                if filtered != allowed:
                    self.rel[(x, y)] = filtered
                    changed = True
                new_x = {u for u, _ in self.rel[(x, y)]}
                new_y = {w for _, w in self.rel[(x, y)]}
                if new_x != self.dom[x]:
                    self.dom[x] = new_x
                    changed = True
                if new_y != self.dom[y]:
                    self.dom[y] = new_y
                    changed = True
        if len(names) == 1:
            return bool(self.dom[names[0]])
        return all(self.dom[v] for v in names) and all(self.rel.values())
