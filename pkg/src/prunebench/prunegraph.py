"""Weighted DAGs whose 0 -> top paths are the runs of the counting sweep.

Reversing the trace of a run gives a path from node 0 to node ``2**n - 1``.
A *blue* edge ``m-1 -> m`` means case ``m`` was in the solution set (R and C
both grow, so the par number drops by ``f - 1``); a *red* edge
``prune(m) -> m`` means case ``m`` was pruned (only C grows, par rises by 1).
With blue weight ``-(f - 1)`` the heaviest path has weight 0 exactly when
``max C/R == f``.

``G_k`` is the block of this graph covering cases ``2**(k-1) - 1`` to
``2**k - 1`` (plus node 0).  Its boxes are node intervals whose
self-similarity from ``G_k`` to ``G_{k+1}`` is checked by
:func:`verify_structure`.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import NamedTuple

from .bitcase import DomainError, check_level, prune
from .efficiency import RunOutcome, SolutionSet

GRAPH_MAX_N = 24
IMPLICIT_DP_THRESHOLD = 20


class Color(str, Enum):
    BLUE = "blue"
    RED = "red"

    def __str__(self) -> str:
        return self.value


BLUE, RED = Color.BLUE, Color.RED


class Edge(NamedTuple):
    src: int
    dst: int
    color: Color
    weight: int


class InvalidPathError(DomainError):
    """A node/colour sequence that is not a 0 -> top path of the run graph."""


@dataclass(frozen=True)
class WeightedDag:
    """Two-colour DAG.  Every edge runs from a smaller node to a larger one."""

    ell: int
    blue_weight: int
    nodes: tuple[int, ...]
    edges: tuple[Edge, ...]
    name: str = "G"

    @cached_property
    def node_set(self) -> frozenset[int]:
        return frozenset(self.nodes)

    @cached_property
    def in_edges(self) -> dict[int, list[Edge]]:
        into: dict[int, list[Edge]] = {v: [] for v in self.nodes}
        for e in self.edges:
            into[e.dst].append(e)
        return into

    def out_edges(self, u: int) -> list[Edge]:
        return [e for e in self.edges if e.src == u]

    def with_blue_weight(self, blue_weight: int) -> WeightedDag:
        edges = tuple(e._replace(weight=blue_weight) if e.color is BLUE else e
                      for e in self.edges)
        return WeightedDag(self.ell, blue_weight, self.nodes, edges, self.name)

    def induced(self, keep: Iterable[int], name: str | None = None) -> WeightedDag:
        keep = frozenset(keep) & self.node_set
        edges = tuple(e for e in self.edges if e.src in keep and e.dst in keep)
        return WeightedDag(self.ell, self.blue_weight, tuple(sorted(keep)), edges,
                           name or self.name)

    def edge_counter(self) -> Counter:
        """Edge multiset keyed by ``(src, dst, color)``."""
        return Counter((e.src, e.dst, e.color) for e in self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges, key=lambda e: (e.src, e.dst, e.color.value))

    def check_invariants(self) -> None:
        """Assert the edge rules every graph built here must satisfy."""
        for e in self.edges:
            assert e.src < e.dst, e
            assert e.src in self.node_set and e.dst in self.node_set, e
            if e.color is BLUE:
                assert e.dst == e.src + 1 and e.weight == self.blue_weight, e
            else:
                assert e.src == prune(e.dst, self.ell) and e.weight == 1, e
        if 0 in self.node_set:
            assert not self.in_edges[0], "node 0 must have no incoming edges"


def _check_graph_width(n: int, what: str = "n") -> None:
    if n < 2:
        raise DomainError(f"{what} must be >= 2, got {n}")
    if n > GRAPH_MAX_N:
        raise DomainError(f"explicit graphs capped at {what} <= {GRAPH_MAX_N}, got {n}")


def _assemble(ell, blue_weight, nodes, blue_srcs, red_dsts, name) -> WeightedDag:
    edges = [Edge(m, m + 1, BLUE, blue_weight) for m in blue_srcs]
    edges.extend(Edge(prune(m, ell), m, RED, 1) for m in red_dsts)
    g = WeightedDag(ell, blue_weight, tuple(nodes), tuple(edges), name)
    g.check_invariants()
    return g


def build_gk(k: int, ell: int, blue_weight: int) -> WeightedDag:
    """The block ``G_k``: nodes ``0, 2**(k-1)-1, ..., 2**k - 1``."""
    _check_graph_width(k, "k")
    check_level(ell)
    lo, top = (1 << (k - 1)) - 1, (1 << k) - 1
    inner = range(lo, top)
    return _assemble(ell, blue_weight, [0, *range(lo, top + 1)], inner, inner,
                     f"G{k}")


def build_joined(n: int, ell: int, blue_weight: int, *,
                 origin_blue: bool = False) -> WeightedDag:
    """Union ``G_2 ∪ ... ∪ G_n`` on nodes ``0..2**n - 1``.

    With ``origin_blue=True`` a blue edge ``0 -> 1`` is added.  That edge
    records runs in which case 1 itself has a solution; the plain union lacks
    it, so only the ``origin_blue`` graph has exactly one path per valid set.
    It never changes the maximum path weight for nonpositive blue weights.
    """
    _check_graph_width(n)
    check_level(ell)
    top = (1 << n) - 1
    blue_srcs = range(0 if origin_blue else 1, top)
    return _assemble(ell, blue_weight, range(top + 1), blue_srcs, range(1, top),
                     f"J{n}")


# --- boxes ---------------------------------------------------------------

BOX_NAMES = ("I", "II", "III", "IV")


@dataclass(frozen=True)
class BoxBounds:
    """Node-interval boundaries of the boxes of ``G_k``.

    ``bounds[name] = (bottom, top)``, both inclusive, for ``name`` in
    ``BOX_NAMES`` (two boxes for ``ell == 1``, four for ``ell == 2``).
    """

    k: int
    ell: int
    bounds: dict[str, tuple[int, int]] = field(hash=False)

    def box(self, which: int) -> range:
        if not 1 <= which <= len(self.bounds):
            raise DomainError(f"box {which} does not exist for ell={self.ell}")
        b, t = self.bounds[BOX_NAMES[which - 1]]
        return range(b, t + 1)

    def bottom(self, name: str) -> int:
        return self.bounds[name][0]

    def top(self, name: str) -> int:
        return self.bounds[name][1]

    def tiles(self) -> bool:
        """True iff the boxes partition ``[2**(k-1) - 1, 2**k - 1]``."""
        spans = sorted(self.bounds.values())
        if spans[0][0] != (1 << (self.k - 1)) - 1 or spans[-1][1] != (1 << self.k) - 1:
            return False
        return all(b <= t for b, t in spans) and all(
            spans[i][1] + 1 == spans[i + 1][0] for i in range(len(spans) - 1))


def box_bounds(k: int, ell: int) -> BoxBounds:
    p = 1 << k
    if ell == 1:
        if k < 3:
            raise DomainError(f"ell=1 boxes need k >= 3, got {k}")
        return BoxBounds(k, 1, {
            "I": (p - (p >> 2) - 1, p - 1),
            "II": ((p >> 1) - 1, p - (p >> 2) - 2),
        })
    if ell == 2:
        if k < 4:
            raise DomainError(f"ell=2 boxes need k >= 4, got {k}")
        q, e, s = p >> 2, p >> 3, p >> 4
        return BoxBounds(k, 2, {
            "I": (p - q - 1, p - 1),
            "II": (p - q - s - 1, p - q - 2),
            "III": (p - q - e - 1, p - q - s - 2),
            "IV": ((p >> 1) - 1, p - q - e - 2),
        })
    raise DomainError(f"boxes are defined for ell in {{1, 2}}, got {ell}")


def induced_box(g: WeightedDag, b: BoxBounds, which: int) -> WeightedDag:
    """Induced subgraph of ``g`` on node 0 and box number ``which``."""
    return g.induced({0, *b.box(which)}, name=f"B{which}")


# --- paths ---------------------------------------------------------------

@dataclass(frozen=True)
class GraphPath:
    """A path given by its nodes and the colour of each edge taken."""

    nodes: tuple[int, ...]
    colors: tuple[Color, ...]

    def __post_init__(self):
        if len(self.colors) != max(len(self.nodes) - 1, 0):
            raise ValueError("need exactly one colour per edge")

    @property
    def blue_count(self) -> int:
        return sum(c is BLUE for c in self.colors)

    @property
    def red_count(self) -> int:
        return sum(c is RED for c in self.colors)

    def weight(self, blue_weight: int) -> int:
        return self.red_count + blue_weight * self.blue_count

    def edges(self) -> list[tuple[int, int, Color]]:
        return list(zip(self.nodes, self.nodes[1:], self.colors))


@dataclass(frozen=True)
class PathResult:
    """Heaviest path found by :func:`max_weight_path`; ``weight is None``
    when the target cannot be reached."""

    weight: int | None
    path: GraphPath | None

    @property
    def reachable(self) -> bool:
        return self.weight is not None

    @property
    def blue_count(self) -> int:
        return self.path.blue_count if self.path else 0

    @property
    def red_count(self) -> int:
        return self.path.red_count if self.path else 0


def max_weight_path(g: WeightedDag, src: int, dst: int) -> PathResult:
    """Maximum-weight ``src -> dst`` path by DP in ascending node order.

    Ties go to the smallest predecessor node, then to the blue edge.
    """
    if src not in g.node_set or dst not in g.node_set:
        raise DomainError(f"{src} or {dst} is not a node of {g.name}")
    best: dict[int, int] = {src: 0}
    parent: dict[int, Edge] = {}
    in_edges = g.in_edges
    for v in g.nodes:
        if v <= src or v > dst:
            continue
        top_w = top_e = None
        for e in in_edges[v]:
            bu = best.get(e.src)
            if bu is None:
                continue
            cand = bu + e.weight
            if (top_e is None or cand > top_w
                    or (cand == top_w and (e.src, e.color.value) < (top_e.src, top_e.color.value))):
                top_w, top_e = cand, e
        if top_e is not None:
            best[v] = top_w
            parent[v] = top_e
    if dst not in best:
        return PathResult(None, None)
    nodes, colors = [dst], []
    v = dst
    while v != src:
        e = parent[v]
        nodes.append(e.src)
        colors.append(e.color)
        v = e.src
    return PathResult(best[dst], GraphPath(tuple(reversed(nodes)), tuple(reversed(colors))))


def joined_max_weight(n: int, ell: int, blue_weight: int) -> int:
    """Max ``0 -> 2**n - 1`` weight in the joined graph without materialising it.

    Each node ``m >= 1`` has at most two predecessors, ``m - 1`` (blue,
    ``m >= 2``) and ``prune(m)`` (red, ``m < top``), so one pass over the
    nodes suffices.
    """
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    check_level(ell)
    top = (1 << n) - 1
    neg = float("-inf")
    best = [neg] * (top + 1)
    best[0] = 0
    for m in range(1, top + 1):
        w = best[m - 1] + blue_weight if m >= 2 else neg
        if m < top:
            w = max(w, best[prune(m, ell)] + 1)
        best[m] = w
    return int(best[top])


def count_paths(g: WeightedDag, src: int, dst: int) -> int:
    """Number of distinct directed ``src -> dst`` paths (parallel edges count
    separately)."""
    if src not in g.node_set or dst not in g.node_set:
        raise DomainError(f"{src} or {dst} is not a node of {g.name}")
    ways = {src: 1}
    for v in g.nodes:
        if v <= src or v > dst:
            continue
        total = sum(ways.get(e.src, 0) for e in g.in_edges[v])
        if total:
            ways[v] = total
    return ways.get(dst, 0)


def all_paths(g: WeightedDag, src: int, dst: int) -> Iterable[GraphPath]:
    """Enumerate every ``src -> dst`` path.  Exponential; for small graphs."""
    out: dict[int, list[Edge]] = {}
    for e in g.edges:
        out.setdefault(e.src, []).append(e)
    stack = [(src, (src,), ())]
    while stack:
        v, nodes, colors = stack.pop()
        if v == dst:
            yield GraphPath(nodes, colors)
            continue
        for e in out.get(v, ()):
            if e.dst <= dst:
                stack.append((e.dst, nodes + (e.dst,), colors + (e.color,)))


def run_to_path(outcome: RunOutcome, ell: int) -> GraphPath:
    """Reverse a run's trace into a ``0 -> top`` path of the run graph."""
    if not outcome.valid:
        raise InvalidPathError(
            f"run found {outcome.R} of {outcome.size} solutions; "
            "only valid sets map to paths")
    nodes = (0, *reversed(outcome.trace))
    colors = tuple(BLUE if hit else RED for hit in reversed(outcome.found))
    path = GraphPath(nodes, colors)
    _check_run_path(path, len(outcome.trace) and outcome.trace[0].bit_length(), ell)
    return path


def _check_run_path(path: GraphPath, n: int, ell: int) -> None:
    top = (1 << n) - 1
    if not path.nodes or path.nodes[0] != 0 or path.nodes[-1] != top:
        raise InvalidPathError(f"path must run from 0 to {top}")
    for u, v, color in path.edges():
        if color is BLUE:
            ok = u == v - 1
        else:
            ok = v < top and u == prune(v, ell)
        if not ok:
            raise InvalidPathError(f"no {color} edge {u} -> {v}")


def path_to_solution_set(path: GraphPath | Sequence[int], n: int, ell: int) -> SolutionSet:
    """Solution set whose run traces ``path``: the targets of its blue edges.

    A bare node list is accepted; where both a blue and a red edge join the
    same pair of nodes, the blue edge is assumed.
    """
    if not isinstance(path, GraphPath):
        nodes = tuple(path)
        colors = tuple(BLUE if u == v - 1 else RED for u, v in zip(nodes, nodes[1:]))
        path = GraphPath(nodes, colors)
    _check_run_path(path, n, ell)
    members = [v for _, v, c in path.edges() if c is BLUE]
    if not members:
        raise InvalidPathError("path has no blue edge")
    return SolutionSet.of(n, members)


# --- structure propositions -----------------------------------------------

@dataclass
class StructureCheck:
    proposition: str
    ell: int
    k: int
    missing: list[tuple] = field(default_factory=list)
    extra: list[tuple] = field(default_factory=list)
    node_diff: list[int] = field(default_factory=list)
    note: str = ""

    @property
    def passed(self) -> bool:
        return not (self.missing or self.extra or self.node_diff or self.note)


def _diff(name, ell, k, actual: Counter, expected: Counter,
          actual_nodes: set, expected_nodes: set) -> StructureCheck:
    return StructureCheck(
        name, ell, k,
        missing=sorted((expected - actual).elements(), key=_edge_key),
        extra=sorted((actual - expected).elements(), key=_edge_key),
        node_diff=sorted(actual_nodes ^ expected_nodes),
    )


def _edge_key(e):
    return (e[0], e[1], str(e[2]))


def _box_claim(name, ell, k, big: WeightedDag, box_nodes: set[int], edited: set[int],
               small: WeightedDag, small_nodes: set[int], relabel,
               remove=(), add=()) -> StructureCheck:
    """Compare part of ``G_{k+1}`` against a relabelled, edited part of ``G_k``.

    The actual side is the subgraph of ``big`` induced on ``box_nodes`` and 0,
    plus every edge entering a node of ``edited`` from outside.  The expected
    side is ``small`` induced on ``small_nodes`` and 0, with ``relabel``
    applied to nonzero nodes, ``remove`` taken out and ``add`` put in.
    """
    inside = box_nodes | {0}
    actual = big.induced(inside).edge_counter()
    actual_nodes = set(inside)
    for v in edited:
        for e in big.in_edges[v]:
            if e.src not in inside:
                actual[(e.src, e.dst, e.color)] += 1
                actual_nodes.add(e.src)

    def lab(m):
        return relabel(m) if m else 0

    expected = Counter()
    for (u, v, c), cnt in small.induced(small_nodes | {0}).edge_counter().items():
        expected[(lab(u), lab(v), c)] += cnt
    expected_nodes = {lab(m) for m in small_nodes} | {0}
    note = []
    for e in remove:
        if expected[e] < 1:
            note.append(f"edge {e} to be replaced is absent")
        expected[e] -= 1
    expected += Counter()  # drop nonpositive counts
    for e in add:
        expected[e] += 1
        expected_nodes.update(e[:2])
    check = _diff(name, ell, k, actual, expected, actual_nodes, expected_nodes)
    check.note = "; ".join(note)
    return check


def _span(b: int, t: int) -> set[int]:
    return set(range(b, t + 1))


def _p1_box1(k):
    big, small = build_gk(k + 1, 1, -1), build_gk(k, 1, -1)
    b = box_bounds(k + 1, 1)
    Ib, IIt, IIb = b.bottom("I"), b.top("II"), b.bottom("II")
    return _box_claim(
        "box1", 1, k, big, _span(Ib, b.top("I")), {Ib},
        small, set(small.nodes) - {0}, lambda m: m + (1 << k),
        remove=[(0, Ib, RED)], add=[(IIt, Ib, BLUE), (IIb, Ib, RED)])


def _p1_box2(k):
    big, small = build_gk(k + 1, 1, -1), build_gk(k, 1, -1)
    b = box_bounds(k + 1, 1)
    return _box_claim(
        "box2", 1, k, big, _span(b.bottom("II"), b.top("II")), set(),
        small, _span((1 << (k - 1)) - 1, (1 << k) - 2), lambda m: m + (1 << (k - 1)))


def _p1_zero_edge(k):
    g = build_gk(k, 1, -1)
    actual = Counter((e.src, e.dst, e.color) for e in g.out_edges(0))
    expected = Counter({(0, (1 << (k - 1)) - 1, RED): 1})
    return _diff("zero-edge", 1, k, actual, expected, set(), set())


def _p1_box2_to_box1(k):
    g = build_gk(k, 1, -1)
    b = box_bounds(k, 1)
    II, I = _span(*b.bounds["II"]), _span(*b.bounds["I"])
    actual = Counter((e.src, e.dst, e.color) for e in g.edges
                     if e.src in II and e.dst in I)
    Ib = b.bottom("I")
    expected = Counter({(b.top("II"), Ib, BLUE): 1, (b.bottom("II"), Ib, RED): 1})
    return _diff("box2-to-box1", 1, k, actual, expected, set(), set())


def _p2_box1(k):
    big, small = build_gk(k + 1, 2, -1), build_gk(k, 2, -1)
    b = box_bounds(k + 1, 2)
    Ib = b.bottom("I")
    return _box_claim(
        "box1", 2, k, big, _span(Ib, b.top("I")), {Ib},
        small, set(small.nodes) - {0}, lambda m: m + (1 << k),
        add=[(b.top("II"), Ib, BLUE)])


def _p2_box2(k):
    big, small = build_gk(k + 1, 2, -1), build_gk(k, 2, -1)
    bb, bs = box_bounds(k + 1, 2), box_bounds(k, 2)
    IIIb, IIt, IVb = bs.bottom("III"), bs.top("II"), bs.bottom("IV")
    shift = 3 << (k - 2)

    def relabel(m):
        return m + (1 << (k - 1)) if m == IVb else m + shift

    return _box_claim(
        "box2", 2, k, big, _span(*bb.bounds["II"]) | {bb.bottom("IV")}, set(),
        small, _span(IIIb, IIt) | {IVb}, relabel)


def _p2_box3(k):
    big, small = build_gk(k + 1, 2, -1), build_gk(k, 2, -1)
    bb, bs = box_bounds(k + 1, 2), box_bounds(k, 2)
    IIIb = bb.bottom("III")
    return _box_claim(
        "box3", 2, k, big, _span(*bb.bounds["III"]), {IIIb},
        small, _span(*bs.bounds["IV"]), lambda m: m + (3 << (k - 2)),
        remove=[(0, IIIb, RED)],
        add=[(bb.bottom("IV"), IIIb, RED), (bb.top("IV"), IIIb, BLUE)])


def _p2_box4(k):
    big, small = build_gk(k + 1, 2, -1), build_gk(k, 2, -1)
    bb, bs = box_bounds(k + 1, 2), box_bounds(k, 2)
    return _box_claim(
        "box4", 2, k, big, _span(*bb.bounds["IV"]), set(),
        small, _span(bs.bottom("IV"), bs.top("II")), lambda m: m + (1 << (k - 1)))


def _p2_zero_edge(k):
    g = build_gk(k, 2, -1)
    b = box_bounds(k, 2)
    lower = _span(b.bottom("IV"), b.top("II"))
    actual = Counter((e.src, e.dst, e.color) for e in g.out_edges(0) if e.dst in lower)
    expected = Counter({(0, b.bottom("IV"), RED): 1})
    return _diff("zero-edge", 2, k, actual, expected, set(), set())


def _p2_box1_outside(k):
    g = build_gk(k, 2, -1)
    b = box_bounds(k, 2)
    I = _span(*b.bounds["I"])
    actual = Counter((e.src, e.dst, e.color) for e in g.edges
                     if e.dst in I and e.src not in I | {0})
    expected = Counter({(b.top("II"), b.bottom("I"), BLUE): 1})
    return _diff("box1-outside", 2, k, actual, expected, set(), set())


# (ell, id) -> (minimum k, checker)
PROPOSITIONS = {
    (1, "box1"): (2, _p1_box1),
    (1, "box2"): (2, _p1_box2),
    (1, "zero-edge"): (2, _p1_zero_edge),
    (1, "box2-to-box1"): (3, _p1_box2_to_box1),
    (2, "box1"): (3, _p2_box1),
    (2, "box2"): (4, _p2_box2),
    (2, "box3"): (4, _p2_box3),
    (2, "box4"): (4, _p2_box4),
    (2, "zero-edge"): (4, _p2_zero_edge),
    (2, "box1-outside"): (4, _p2_box1_outside),
}


def propositions(ell: int) -> list[str]:
    return [name for (l, name) in PROPOSITIONS if l == ell]


def verify_structure(k: int, ell: int, which: str) -> StructureCheck:
    """Check one structural proposition at digit count ``k``.

    The box propositions (``box1`` ... ``box4``) relate ``G_{k+1}`` to
    ``G_k``; the others are statements about ``G_k`` alone.
    """
    try:
        k_min, checker = PROPOSITIONS[(ell, which)]
    except KeyError:
        raise DomainError(f"no proposition {which!r} for ell={ell}") from None
    if k < k_min:
        raise DomainError(f"proposition {which!r} (ell={ell}) needs k >= {k_min}, got {k}")
    return checker(k)


def verify_in_degrees(k: int, ell: int) -> bool:
    """In-degree pattern of ``G_k``: 0 has none, the bottom node one red,
    interior nodes one blue and one red, the top one blue."""
    g = build_gk(k, ell, -1)
    lo, top = (1 << (k - 1)) - 1, (1 << k) - 1
    for v in g.nodes:
        colors = sorted(e.color.value for e in g.in_edges[v])
        if v == 0:
            want = []
        elif v == lo:
            want = ["red"]
        elif v == top:
            want = ["blue"]
        else:
            want = ["blue", "red"]
        if colors != want:
            return False
    return True


def minimal_f(n: int, ell: int, f_max: int) -> int | None:
    """Smallest integer ``f`` for which the heaviest 0 -> top path of the
    joined graph with blue weight ``-(f - 1)`` is nonpositive."""
    if f_max < 2:
        raise DomainError(f"f_max must be >= 2, got {f_max}")
    top = (1 << n) - 1
    if n > IMPLICIT_DP_THRESHOLD:
        weigh = lambda w: joined_max_weight(n, ell, w)  # noqa: E731
    else:
        g = build_joined(n, ell, 0)
        weigh = lambda w: max_weight_path(g.with_blue_weight(w), 0, top).weight  # noqa: E731
    for f in range(1, f_max + 1):
        if weigh(-(f - 1)) <= 0:
            return f
    return None


# --- DOT export ----------------------------------------------------------

def to_dot(g: WeightedDag) -> str:
    """Graphviz rendering: nodes ascending, edges sorted by (src, dst, color)."""
    lines = [f"digraph {g.name} {{"]
    lines += [f'  {v} [label="{v}"];' for v in g.nodes]
    lines += [f'  {e.src} -> {e.dst} [color={e.color.value}, label="{e.weight}"];'
              for e in g.sorted_edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"
