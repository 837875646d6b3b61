"""k-colorability by candidate-set propagation plus branching.

The search keeps a candidate color set per vertex.  Deciding a vertex
sweeps its color out of all neighboring sets; sets that shrink to a
single color cascade, and an emptied set kills the branch.  Case
distinctions copy the whole candidate table (an explicit stack, no trail
undo), so the peak number of simultaneously open branches is directly
observable.  Symmetry is broken by pre-assigning colors 0..c-1 to a
maximal clique: the quadruple {1, 3, 8, 120} when present at shift 1,
otherwise a clique collected greedily along the branch order.

A "colorable" verdict always carries an assignment that has been checked
against every edge before being returned.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graph import DiophGraph, remove_vertex
from .witnesses import K4_WITNESS

__all__ = [
    "ColorState",
    "ColorStats",
    "ColoringResult",
    "MinimalityReport",
    "chromatic_number",
    "initial_state",
    "k_colorable",
    "minimality_check",
    "mod4_coloring_shift2",
    "sweep",
]


@dataclass
class ColorStats:
    """branches: case distinctions opened; peak_open: most copies alive
    at once; propagation_steps: candidate colors deleted by sweeping."""

    branches: int = 0
    peak_open: int = 0
    propagation_steps: int = 0


@dataclass
class ColorState:
    """Candidate-set table over a graph.  Decided vertices are exactly
    those with singleton candidate sets; they appear in `assignment`."""

    graph: DiophGraph
    candidates: dict[int, frozenset[int]]
    assignment: dict[int, int]
    propagation_steps: int = 0

    @property
    def contradictory(self) -> bool:
        return any(not c for c in self.candidates.values())


def initial_state(G: DiophGraph, k: int, decided: dict[int, int] | None = None) -> ColorState:
    """Fresh state with all k colors open everywhere, minus any explicit
    pre-decisions."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    full = frozenset(range(k))
    cands = {v: full for v in G.vertices}
    assignment: dict[int, int] = {}
    for v, c in (decided or {}).items():
        if v not in cands:
            raise ValueError(f"vertex {v} not in graph")
        if c not in full:
            raise ValueError(f"color {c} out of range for k={k}")
        cands[v] = frozenset({c})
        assignment[v] = c
    return ColorState(G, cands, assignment)


def sweep(state: ColorState, rng: random.Random | None = None) -> ColorState:
    """Unit-propagate to fixpoint: each decided color is deleted from all
    neighboring candidate sets, cascading on new singletons.

    A contradiction (an emptied set) is a normal outcome, returned as a
    state whose `contradictory` flag is set.  The fixpoint is independent
    of processing order; `rng` shuffles it for exactly that property.
    """
    cands = dict(state.candidates)
    assignment = dict(state.assignment)
    steps = state.propagation_steps
    # re-broadcasting an already-swept singleton is a no-op, so every
    # singleton can safely seed the queue
    queue = [v for v, c in cands.items() if len(c) == 1]
    for v in queue:
        assignment.setdefault(v, next(iter(cands[v])))
    while queue:
        i = rng.randrange(len(queue)) if rng else 0
        v = queue.pop(i)
        color = assignment[v]
        for u in state.graph.neighbors(v):
            cu = cands[u]
            if color in cu:
                cu = cu - {color}
                cands[u] = cu
                steps += 1
                if not cu:
                    return ColorState(state.graph, cands, assignment, steps)
                if len(cu) == 1 and u not in assignment:
                    assignment[u] = next(iter(cu))
                    queue.append(u)
    return ColorState(state.graph, cands, assignment, steps)


@dataclass
class ColoringResult:
    colorable: bool
    assignment: dict[int, int] | None
    stats: ColorStats = field(default_factory=ColorStats)


def _symmetry_clique(G: DiophGraph, order: list[int]) -> list[int]:
    if G.shift == 1 and all(v in G.adjacency for v in K4_WITNESS):
        return list(K4_WITNESS)
    clique: list[int] = []
    for v in order:
        if all(G.has_edge(v, u) for u in clique):
            clique.append(v)
    return clique


def _verify_coloring(G: DiophGraph, assignment: dict[int, int]) -> None:
    for a in G.vertices:
        ca = assignment[a]
        for b in G.adjacency[a]:
            if assignment[b] == ca:
                raise RuntimeError(
                    f"engine returned an improper coloring: {a} and {b} share {ca}"
                )


def k_colorable(
    G: DiophGraph,
    k: int,
    branch_order: list[int] | None = None,
    prefix: list[tuple[int, int]] | None = None,
) -> ColoringResult:
    """Decide k-colorability; sound and complete for the fixed k.

    Branching follows `branch_order` (default: the graph's vertex order),
    assigning candidate colors in increasing numeric order, with a sweep
    after every decision.  `prefix` restricts the search to the subtree
    under the given (vertex, color) decisions, which is what a
    distributed driver would shard on.
    """
    order = list(branch_order) if branch_order is not None else list(G.vertices)
    if sorted(order) != list(G.vertices):
        raise ValueError("branch_order must be a permutation of the vertices")
    stats = ColorStats()
    n = len(order)
    if n == 0:
        return ColoringResult(True, {}, stats)
    if k <= 0:
        return ColoringResult(False, None, stats)

    index = {v: i for i, v in enumerate(order)}
    adj = [tuple(index[u] for u in G.adjacency[v]) for v in order]

    clique = _symmetry_clique(G, order)
    if len(clique) > k:
        return ColoringResult(False, None, stats)

    full = (1 << k) - 1
    cand = [full] * n
    for color, v in enumerate(clique):
        cand[index[v]] = 1 << color

    def run_sweep(table: list[int], decided: int, queue: list[int]) -> tuple[bool, int]:
        while queue:
            v = queue.pop()
            mask = table[v]
            for u in adj[v]:
                cu = table[u]
                if cu & mask:
                    cu &= ~mask
                    stats.propagation_steps += 1
                    if not cu:
                        return False, decided
                    table[u] = cu
                    if cu & (cu - 1) == 0 and not (decided >> u) & 1:
                        decided |= 1 << u
                        queue.append(u)
        return True, decided

    decided = 0
    seeds = []
    for i in range(n):
        if cand[i] & (cand[i] - 1) == 0:
            decided |= 1 << i
            seeds.append(i)
    ok, decided = run_sweep(cand, decided, seeds)
    if not ok:
        return ColoringResult(False, None, stats)

    for v, color in prefix or []:
        if v not in index:
            raise ValueError(f"prefix vertex {v} not in graph")
        if not 0 <= color < k:
            raise ValueError(f"prefix color {color} out of range for k={k}")
        i = index[v]
        bit = 1 << color
        if not cand[i] & bit:
            return ColoringResult(False, None, stats)
        if not (decided >> i) & 1:
            cand[i] = bit
            decided |= 1 << i
            ok, decided = run_sweep(cand, decided, [i])
            if not ok:
                return ColoringResult(False, None, stats)

    stack: list[tuple[list[int], int, int]] = [(cand, decided, 0)]
    stats.peak_open = 1
    while stack:
        table, decided, pos = stack.pop()
        while pos < n and table[pos] & (table[pos] - 1) == 0:
            pos += 1
        if pos == n:
            assignment = {order[i]: table[i].bit_length() - 1 for i in range(n)}
            _verify_coloring(G, assignment)
            return ColoringResult(True, assignment, stats)
        mask = table[pos]
        bits = []
        while mask:
            low = mask & -mask
            bits.append(low)
            mask ^= low
        stats.branches += len(bits)
        for bit in reversed(bits):  # smallest color explored first
            child = table.copy()
            child[pos] = bit
            ok, child_decided = run_sweep(child, decided | (1 << pos), [pos])
            if ok:
                stack.append((child, child_decided, pos + 1))
        if len(stack) > stats.peak_open:
            stats.peak_open = len(stack)
    return ColoringResult(False, None, stats)


def chromatic_number(G: DiophGraph) -> int:
    """Smallest k admitting a proper coloring, searched upward from the
    clique-number lower bound."""
    from .graph import _clique_number

    if G.n == 0:
        return 0
    k = max(1, _clique_number(G))
    while not k_colorable(G, k).colorable:
        k += 1
    return k


@dataclass
class MinimalityReport:
    """Vertices whose single removal makes the graph k-colorable; the
    graph is minimal when that is all of them."""

    k: int
    removable: tuple[int, ...]
    minimal: bool


def minimality_check(
    G: DiophGraph, k: int, branch_order: list[int] | None = None
) -> MinimalityReport:
    """For a graph that is not k-colorable, test every single-vertex
    deletion for k-colorability."""
    order = list(branch_order) if branch_order is not None else list(G.vertices)
    if k_colorable(G, k, order).colorable:
        raise ValueError(f"graph is already {k}-colorable; minimality undefined")
    removable = []
    for v in order:
        sub_order = [u for u in order if u != v]
        if k_colorable(remove_vertex(G, v), k, sub_order).colorable:
            removable.append(v)
    return MinimalityReport(k, tuple(removable), len(removable) == G.n)


def mod4_coloring_shift2(G: DiophGraph) -> dict[int, int]:
    """Three-coloring of a shift-2 graph by residue class: evens get 0,
    numbers 1 mod 4 get 1, numbers 3 mod 4 get 2.

    Proper because a*b + 2 is 2 or 3 mod 4 when a and b share a class,
    while squares are 0 or 1 mod 4.  Verified edge-by-edge anyway; a
    violation would be a fatal defect.
    """
    if G.shift != 2:
        raise ValueError(f"mod4 coloring applies to shift-2 graphs, got shift {G.shift}")
    coloring = {v: 0 if v % 2 == 0 else (1 if v % 4 == 1 else 2) for v in G.vertices}
    for a in G.vertices:
        for b in G.adjacency[a]:
            if coloring[a] == coloring[b]:
                raise RuntimeError(
                    f"mod4 coloring is improper on edge ({a}, {b}); "
                    "this contradicts squares being 0 or 1 mod 4"
                )
    return coloring
