"""The input pair (A, B), its edge multigraph, and graph-theoretic conditions.

Vertices are 1-based everywhere.  An edge of the multigraph is a triple
``(i, j, n)`` with ``1 <= n <= A[i][j]``; the n-component distinguishes the
``A[i][j]`` parallel edges from i to j.  All arithmetic is exact integer
arithmetic; nothing in this package touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import StructuralError

Edge = tuple[int, int, int]


def _as_int(value) -> int:
    # bool is an int subclass; reject it so JSON `true` cannot sneak in as 1
    if isinstance(value, bool) or not isinstance(value, int):
        raise StructuralError(f"matrix entry {value!r} is not an integer")
    return value


@dataclass(frozen=True)
class MatrixPair:
    """A size-N pair: A with nonnegative integer entries, B with integer entries."""

    n: int
    a: tuple[tuple[int, ...], ...]
    b: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_rows(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> "MatrixPair":
        n = len(a)
        if n == 0:
            raise StructuralError("A is empty")
        for name, m in (("A", a), ("B", b)):
            if len(m) != n or any(len(row) != n for row in m):
                raise StructuralError(f"{name} is not a square matrix of size {n}")
        ta = tuple(tuple(_as_int(x) for x in row) for row in a)
        tb = tuple(tuple(_as_int(x) for x in row) for row in b)
        for i, row in enumerate(ta):
            for j, x in enumerate(row):
                if x < 0:
                    raise StructuralError(f"A[{i + 1}][{j + 1}] = {x} is negative")
        return MatrixPair(n, ta, tb)

    def a_at(self, i: int, j: int) -> int:
        return self.a[i - 1][j - 1]

    def b_at(self, i: int, j: int) -> int:
        return self.b[i - 1][j - 1]

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def out_vertices(self, i: int) -> tuple[int, ...]:
        """The row section of the support at i."""
        return tuple(j for j in self.vertices if self.a_at(i, j) >= 1)

    def support(self) -> set[tuple[int, int]]:
        return {(i, j) for i in self.vertices for j in self.out_vertices(i)}

    def edges(self) -> list[Edge]:
        return [
            (i, j, n)
            for i in self.vertices
            for j in self.out_vertices(i)
            for n in range(1, self.a_at(i, j) + 1)
        ]

    def has_edge(self, edge: Edge) -> bool:
        i, j, n = edge
        return (
            1 <= i <= self.n
            and 1 <= j <= self.n
            and 1 <= n <= self.a_at(i, j)
        )

    def b_row_is_zero(self, i: int) -> bool:
        return all(x == 0 for x in self.b[i - 1])

    def ratio(self, i: int, j: int) -> Fraction:
        """B[i][j] / A[i][j] for a support arc; the step factor of the integrality trace."""
        return Fraction(self.b_at(i, j), self.a_at(i, j))


@dataclass(frozen=True)
class GraphEA:
    """The edge multigraph of a pair: one edge (i, j, n) per unit of A[i][j]."""

    n: int
    edges: tuple[Edge, ...]


def graph_of(pair: MatrixPair) -> GraphEA:
    return GraphEA(pair.n, tuple(pair.edges()))


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(pair: MatrixPair) -> ValidationReport:
    """Check the standing requirement on (A, B): no zero row in A, and B
    supported inside the support of A.  Reports every violation."""
    problems = []
    for i in pair.vertices:
        if not pair.out_vertices(i):
            problems.append(f"row {i} of A is zero")
    for i in pair.vertices:
        for j in pair.vertices:
            if pair.a_at(i, j) == 0 and pair.b_at(i, j) != 0:
                problems.append(f"B[{i}][{j}] is nonzero but A[{i}][{j}] = 0")
    return ValidationReport(tuple(problems))


def require_valid(pair: MatrixPair) -> None:
    report = validate(pair)
    if not report.ok:
        raise StructuralError("invalid pair: " + "; ".join(report.violations))


def satisfies_condition_e(pair: MatrixPair) -> bool:
    """B vanishes exactly off the support of A: B[i][j] != 0 wherever A[i][j] >= 1."""
    require_valid(pair)
    return all(pair.b_at(i, j) != 0 for i in pair.vertices for j in pair.out_vertices(i))


def _reachable_from(pair: MatrixPair, start: int) -> set[int]:
    """Vertices reachable from `start` by paths of length >= 1 over the support."""
    seen: set[int] = set()
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for w in pair.out_vertices(v):
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def is_irreducible(pair: MatrixPair) -> bool:
    """True iff the support digraph is strongly connected (a positive-length
    path between every ordered pair of vertices)."""
    require_valid(pair)
    return all(
        set(pair.vertices) <= _reachable_from(pair, i) for i in pair.vertices
    )


def satisfies_condition_l(pair: MatrixPair) -> bool:
    """Every cycle of the edge graph has an exit.

    A cycle is exit-free exactly when each of its vertices has a single
    outgoing arc in the support carrying A-entry 1, so it suffices to look
    for a cycle inside the sub-digraph of such deterministic vertices.
    """
    require_valid(pair)
    succ: dict[int, int] = {}
    for i in pair.vertices:
        outs = pair.out_vertices(i)
        if len(outs) == 1 and pair.a_at(i, outs[0]) == 1:
            succ[i] = outs[0]
    # cycle detection in the partial functional graph `succ`
    state: dict[int, int] = {}  # 0 = on stack, 1 = done
    for root in succ:
        if state.get(root) == 1:
            continue
        chain = []
        v = root
        while v in succ and v not in state:
            state[v] = 0
            chain.append(v)
            v = succ[v]
        if v in state and state[v] == 0:
            return False  # closed a deterministic unit cycle: exit-free
        for u in chain:
            state[u] = 1
    return True


def _count_return_paths(pair: MatrixPair, v: int, cap: int = 2) -> int:
    """Number of edge paths v -> v whose interior avoids v, saturated at `cap`.

    Counts parallel edges separately.  If the viable part of the graph
    contains a cycle the count is infinite and `cap` is returned.
    """
    # viable = vertices (!= v) from which v can be re-entered without passing v
    viable: set[int] = set()
    frontier = [v]
    seen = {v}
    # reverse reachability to v over arcs whose source is not v
    preds: dict[int, list[int]] = {u: [] for u in pair.vertices}
    for i in pair.vertices:
        if i == v:
            continue
        for j in pair.out_vertices(i):
            preds[j].append(i)
    while frontier:
        nxt = []
        for w in frontier:
            for u in preds[w]:
                if u not in seen:
                    seen.add(u)
                    viable.add(u)
                    nxt.append(u)
        frontier = nxt

    allowed = viable | {v}
    # nodes of interest: reachable from v while staying viable
    reach: set[int] = set()
    frontier = [v]
    while frontier:
        nxt = []
        for u in frontier:
            for w in pair.out_vertices(u):
                if w in allowed and w != v and w not in reach:
                    reach.add(w)
                    nxt.append(w)
        frontier = nxt

    # a cycle among viable reachable vertices pumps infinitely many returns
    color: dict[int, int] = {}

    def has_cycle(u: int) -> bool:
        color[u] = 0
        for w in pair.out_vertices(u):
            if w == v or w not in reach:
                continue
            c = color.get(w)
            if c == 0:
                return True
            if c is None and has_cycle(w):
                return True
        color[u] = 1
        return False

    for u in sorted(reach):
        if u not in color and has_cycle(u):
            return cap

    # acyclic: count weighted paths u -> v by memoized DFS
    memo: dict[int, int] = {}

    def paths_to_v(u: int) -> int:
        if u in memo:
            return memo[u]
        total = 0
        for w in pair.out_vertices(u):
            mult = pair.a_at(u, w)
            if w == v:
                total += mult
            elif w in reach:
                total += mult * paths_to_v(w)
            total = min(total, cap)
        memo[u] = total
        return total

    total = 0
    for w in pair.out_vertices(v):
        mult = pair.a_at(v, w)
        if w == v:
            total += mult
        elif w in reach:
            total += mult * paths_to_v(w)
        total = min(total, cap)
    return total


def satisfies_condition_k(pair: MatrixPair) -> bool:
    """Every vertex lying on a cycle is the base of at least two distinct cycles."""
    require_valid(pair)
    for v in pair.vertices:
        count = _count_return_paths(pair, v, cap=2)
        if count == 1:
            return False
    return True


def simple_vertex_cycles(pair: MatrixPair, max_len: int | None = None) -> list[tuple[int, ...]]:
    """Vertex-simple cycles of the support digraph as vertex tuples, one per
    rotation class, rooted at their minimal vertex."""
    require_valid(pair)
    cap = pair.n if max_len is None else min(max_len, pair.n)
    out: list[tuple[int, ...]] = []

    def extend(root: int, path: list[int]) -> None:
        u = path[-1]
        for w in pair.out_vertices(u):
            if w == root:
                out.append(tuple(path))
            elif w > root and w not in path and len(path) < cap:
                path.append(w)
                extend(root, path)
                path.pop()

    for root in pair.vertices:
        extend(root, [root])
    return out


def enumerate_simple_cycles(pair: MatrixPair, max_len: int) -> list[tuple[Edge, ...]]:
    """All vertex-simple edge cycles of length <= max_len, each listed once,
    rotated to start at its minimal vertex (the lexicographically least
    rotation of the edge sequence)."""
    if max_len < 1:
        raise StructuralError("max_len must be >= 1")
    cycles: list[tuple[Edge, ...]] = []
    for verts in simple_vertex_cycles(pair, max_len):
        arcs = [(verts[t], verts[(t + 1) % len(verts)]) for t in range(len(verts))]
        choices: list[tuple[Edge, ...]] = [()]
        for i, j in arcs:
            choices = [
                prefix + ((i, j, n),)
                for prefix in choices
                for n in range(1, pair.a_at(i, j) + 1)
            ]
        cycles.extend(choices)
    cycles.sort()
    return cycles


@dataclass(frozen=True)
class Cycle:
    """A closed edge path: consecutive endpoints match and it returns to its start."""

    edges: tuple[Edge, ...]

    def __post_init__(self):
        if not self.edges:
            raise StructuralError("a cycle has at least one edge")
        for (_, j, _), (i2, _, _) in zip(self.edges, self.edges[1:]):
            if j != i2:
                raise StructuralError("cycle edges do not chain")
        if self.edges[-1][1] != self.edges[0][0]:
            raise StructuralError("cycle is not closed")

    def vertex_set(self) -> set[int]:
        return {i for (i, _, _) in self.edges}


def is_transitory(pair: MatrixPair, cycle: Cycle) -> bool:
    """True iff no exit edge of the cycle starts a path returning to the cycle."""
    require_valid(pair)
    for e in cycle.edges:
        if not pair.has_edge(e):
            raise StructuralError(f"edge {e} is not an edge of the pair's graph")
    on_cycle = cycle.vertex_set()
    cycle_edges = set(cycle.edges)
    for u in sorted(on_cycle):
        for w in pair.out_vertices(u):
            for n in range(1, pair.a_at(u, w) + 1):
                if (u, w, n) in cycle_edges:
                    continue
                if w in on_cycle or _reachable_from(pair, w) & on_cycle:
                    return False
    return True


def every_path_extends_to_cycle(pair: MatrixPair) -> bool:
    """True iff reachability is symmetric: whenever j is reachable from i,
    i is reachable from j (so any finite path closes up into a cycle)."""
    require_valid(pair)
    reach = {i: _reachable_from(pair, i) for i in pair.vertices}
    return all(i in reach[j] for i in pair.vertices for j in reach[i])
