"""Density amplification by low-degree pruning, the root-count vertex
heuristic, omega-distribution statistics, and the Hamiltonian path/cycle
analysis of range graphs.

The heuristic ranks a by S(a)/sqrt(a), where S(a) counts the roots of
x^2 = 1 (mod a): a vertex a of the range graph on {1..N} has about
sqrt(N/a) * S(a) neighbors (S(a) root classes, sqrt-many multipliers
each), so dividing out the common sqrt(N) leaves S(a)/sqrt(a) as the
expected-degree score.  Its maximum over [1, 10^6] sits at a = 24.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, log

import numpy as np

from .graph import DiophGraph, GraphStats, edge_test, remove_vertex, stats
from .numtheory import count_unit_roots

__all__ = [
    "HamiltonPathResult",
    "OmegaDistribution",
    "PruneStep",
    "PruneTrace",
    "hamiltonian_cycle_exists",
    "hamiltonian_path_exists",
    "heuristic_score",
    "heuristic_top",
    "mod4_neighbor_premise",
    "near_hamiltonian_path",
    "omega_distribution",
    "prune_low_degree",
]


# ---------------------------------------------------------------------------
# Low-degree pruning
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PruneStep:
    vertex: int
    degree: int
    density_before: Fraction
    density_after: Fraction


@dataclass
class PruneTrace:
    steps: tuple[PruneStep, ...]
    initial: GraphStats
    final: GraphStats


def prune_low_degree(G: DiophGraph) -> tuple[DiophGraph, PruneTrace]:
    """Repeatedly remove a minimum-degree vertex while its degree is
    strictly below the edge density e/n (ties broken by smallest label).
    Every removal strictly increases the density."""
    initial = stats(G)
    cur = G
    steps: list[PruneStep] = []
    while cur.n:
        e = cur.edge_count
        n = cur.n
        v = min(cur.vertices, key=lambda u: (cur.degree(u), u))
        d = cur.degree(v)
        if d * n >= e:  # degree >= density: removal no longer helps
            break
        before = Fraction(e, n)
        after = Fraction(e - d, n - 1)
        if after <= before:
            raise RuntimeError("pruning failed to increase density")
        steps.append(PruneStep(v, d, before, after))
        cur = remove_vertex(cur, v)
    return cur, PruneTrace(tuple(steps), initial, stats(cur))


# ---------------------------------------------------------------------------
# Root-count heuristic and omega statistics
# ---------------------------------------------------------------------------


def _omega_values(N: int) -> np.ndarray:
    """omega(a) for a in [0, N] (omega(0) = omega(1) = 0)."""
    omega = np.zeros(N + 1, dtype=np.uint8)
    composite = np.zeros(N + 1, dtype=bool)
    for p in range(2, N + 1):
        if not composite[p]:
            omega[p::p] += 1
            composite[p * p :: p] = True
    return omega


def _root_counts(N: int) -> np.ndarray:
    """S(a) for a in [0, N] via the closed form (S(0) is meaningless)."""
    omega = _omega_values(N)
    s = np.left_shift(np.int64(1), omega.astype(np.int64))
    idx = np.arange(N + 1)
    s[idx % 4 == 2] >>= 1
    mask8 = (idx % 8 == 0) & (idx > 0)
    s[mask8] <<= 1
    if N >= 1:
        s[1] = 1
    return s


def heuristic_score(a: int) -> float:
    """S(a)/sqrt(a), the expected-degree score of a."""
    if a < 1:
        raise ValueError(f"a must be positive, got {a}")
    return count_unit_roots(a) / (a**0.5)


def heuristic_top(N: int, count: int) -> list[int]:
    """The `count` integers in [1, N] with the largest S(a)/sqrt(a),
    ties broken by smaller a.  Ranking is exact: S(a)^2 * b vs S(b)^2 * a
    is compared in integers on the float-preselected slice."""
    if count < 1 or count > N:
        raise ValueError(f"need 1 <= count <= N, got count={count}, N={N}")
    s = _root_counts(N)
    score = s.astype(np.float64) ** 2
    score[1:] /= np.arange(1, N + 1, dtype=np.float64)
    score[0] = -1.0
    take = min(N, count + 256)
    cands = np.argpartition(-score, take - 1)[:take]
    ranked = sorted(
        (int(a) for a in cands),
        key=lambda a: (Fraction(-int(s[a]) ** 2, a), a),
    )
    return ranked[:count]


@dataclass
class OmegaDistribution:
    """counts[k] is the number of a <= x with exactly k distinct prime
    factors; the optional tail check compares sum(k > C*loglog x) with
    x * (log x)^(C - C*log(C) - 1)."""

    x: int
    counts: tuple[int, ...]
    C: float | None = None
    tail_sum: int | None = None
    bound_value: float | None = None
    within_bound: bool | None = None

    def count(self, k: int) -> int:
        return self.counts[k] if 0 <= k < len(self.counts) else 0


def omega_distribution(x: int, C: float | None = None) -> OmegaDistribution:
    if x < 1:
        raise ValueError(f"x must be positive, got {x}")
    omega = _omega_values(x)
    counts = tuple(int(c) for c in np.bincount(omega[1 : x + 1]))
    if C is None:
        return OmegaDistribution(x, counts)
    if C <= 1:
        raise ValueError(f"C must exceed 1, got {C}")
    if x < 3:
        raise ValueError("tail check needs x >= 3")
    threshold = C * log(log(x))
    tail = sum(c for k, c in enumerate(counts) if k > threshold)
    bound = x * log(x) ** (C - C * log(C) - 1)
    return OmegaDistribution(x, counts, C, tail, bound, tail <= bound)


# ---------------------------------------------------------------------------
# Hamiltonian structure of range graphs
# ---------------------------------------------------------------------------


def near_hamiltonian_path(N: int) -> list[int]:
    """Explicit long path in the graph on {1..N}: descend the odds to 1,
    hop 1-8, run 8, 6, 4, 2, then 12 and the evens upward.  Covers all
    of {1..N} except 10 (and everything when N < 10).

    When N = 16k^2 a rearranged pattern covers 10 as well, giving a full
    Hamiltonian path: odds below 4k^2 descending, odds from 16k^2-1 down
    to 4k^2+1, then 16k^2 and the evens descending.
    """
    if N < 8:
        raise ValueError(f"need N >= 8, got {N}")
    k = isqrt(N // 16)
    if 16 * k * k == N and k >= 1:
        path = list(range(4 * k * k - 1, 0, -2))
        path += list(range(16 * k * k - 1, 4 * k * k, -2))
        path += list(range(16 * k * k, 0, -2))
    else:
        top_odd = N if N % 2 else N - 1
        path = list(range(top_odd, 0, -2)) + [8, 6, 4, 2]
        if N >= 12:
            path += list(range(12, N + 1, 2))
    if len(set(path)) != len(path):
        raise RuntimeError("constructed path repeats a vertex")
    for a, b in zip(path, path[1:]):
        if not edge_test(a, b, 1):
            raise RuntimeError(f"constructed path breaks at ({a}, {b})")
    return path


@dataclass
class HamiltonPathResult:
    """exists is None when the size cap was hit without a shortcut."""

    exists: bool | None
    path: tuple[int, ...] | None
    method: str


def _mod4_path_refutation(G: DiophGraph) -> bool:
    """True when the residue-class count argument rules out a Hamiltonian
    path: vertices 2 mod 4 only neighbor multiples of 4, so m2 <= m0 + 1
    is necessary, with equality only in an alternating path without odds."""
    if G.shift != 1:
        return False
    m2 = sum(1 for v in G.vertices if v % 4 == 2)
    m0 = sum(1 for v in G.vertices if v % 4 == 0)
    if m2 > m0 + 1:
        return True
    return m2 == m0 + 1 and m2 + m0 < G.n


def hamiltonian_path_exists(G: DiophGraph, cap: int = 40) -> HamiltonPathResult:
    """Decide Hamiltonian-path existence: the mod-4 counting shortcut
    refutes without search where it applies; otherwise exhaustive
    backtracking with disconnect and degree-1 pruning, up to `cap`
    vertices."""
    n = G.n
    if n <= 1:
        return HamiltonPathResult(True, tuple(G.vertices), "trivial")
    if _mod4_path_refutation(G):
        return HamiltonPathResult(False, None, "mod4-counting")
    if n > cap:
        return HamiltonPathResult(None, None, "cap-exceeded")

    verts = list(G.vertices)
    index = {v: i for i, v in enumerate(verts)}
    adj = [0] * n
    for v in verts:
        for u in G.adjacency[v]:
            adj[index[v]] |= 1 << index[u]
    full = (1 << n) - 1

    if any(adj[i] == 0 for i in range(n)):
        return HamiltonPathResult(False, None, "exhaustive")
    degree_one = [i for i in range(n) if adj[i].bit_count() == 1]
    if len(degree_one) > 2:
        return HamiltonPathResult(False, None, "exhaustive")

    path: list[int] = []

    def reachable(start_bit: int, allowed: int) -> int:
        reach = start_bit
        frontier = start_bit
        while frontier:
            nxt = 0
            fb = frontier
            while fb:
                low = fb & -fb
                nxt |= adj[low.bit_length() - 1]
                fb ^= low
            nxt &= allowed & ~reach
            reach |= nxt
            frontier = nxt
        return reach

    def dfs(v: int, visited: int) -> bool:
        if visited == full:
            return True
        unvisited = full & ~visited
        cand = adj[v] & unvisited
        if not cand:
            return False
        if reachable(1 << v, unvisited) & unvisited != unvisited:
            return False
        # vertices with at most one live connection must be the final one
        finals = 0
        ub = unvisited
        vbit = 1 << v
        while ub:
            low = ub & -ub
            i = low.bit_length() - 1
            ub ^= low
            c = (adj[i] & unvisited).bit_count() + (1 if adj[i] & vbit else 0)
            if c == 0:
                return False
            if c <= 1:
                finals += 1
                if finals > 1:
                    return False
        nbrs = []
        cb = cand
        while cb:
            low = cb & -cb
            i = low.bit_length() - 1
            cb ^= low
            nbrs.append(i)
        nbrs.sort(key=lambda i: (adj[i] & unvisited).bit_count())
        for u in nbrs:
            path.append(u)
            if dfs(u, visited | (1 << u)):
                return True
            path.pop()
        return False

    starts = degree_one if degree_one else list(range(n))
    for s in starts:
        path.clear()
        path.append(s)
        if dfs(s, 1 << s):
            return HamiltonPathResult(
                True, tuple(verts[i] for i in path), "exhaustive"
            )
    return HamiltonPathResult(False, None, "exhaustive")


def mod4_neighbor_premise(G: DiophGraph) -> bool:
    """Every neighbor of a vertex 2 mod 4 is divisible by 4."""
    for v in G.vertices:
        if v % 4 == 2:
            if any(u % 4 != 0 for u in G.adjacency[v]):
                return False
    return True


def _cycle_search(G: DiophGraph) -> list[int] | None:
    """Exhaustive Hamiltonian-cycle search (small graphs only)."""
    n = G.n
    verts = list(G.vertices)
    index = {v: i for i, v in enumerate(verts)}
    adj = [0] * n
    for v in verts:
        for u in G.adjacency[v]:
            adj[index[v]] |= 1 << index[u]
    full = (1 << n) - 1
    path = [0]

    def dfs(v: int, visited: int) -> bool:
        if visited == full:
            return bool(adj[v] & 1)  # close back to vertex 0
        cand = adj[v] & ~visited
        while cand:
            low = cand & -cand
            u = low.bit_length() - 1
            cand ^= low
            path.append(u)
            if dfs(u, visited | low):
                return True
            path.pop()
        return False

    if n >= 3 and dfs(0, 1):
        return [verts[i] for i in path]
    return None


def hamiltonian_cycle_exists(G: DiophGraph, exhaustive_limit: int = 16) -> bool:
    """Always False on range graphs {1..N}, N >= 3: vertices 2 mod 4 only
    neighbor multiples of 4, and the former class is at least as large,
    so a cycle would have to alternate the two classes and exclude every
    odd number.  Confirmed exhaustively for n <= exhaustive_limit."""
    N = G.n
    if G.shift != 1 or G.vertices != tuple(range(1, N + 1)):
        raise ValueError("cycle analysis applies to shift-1 graphs on {1..N}")
    if N < 3:
        raise ValueError(f"need N >= 3, got {N}")
    if not mod4_neighbor_premise(G):
        raise RuntimeError("mod-4 neighbor premise violated; squares mod 4 broke")
    m2 = sum(1 for v in G.vertices if v % 4 == 2)
    m0 = sum(1 for v in G.vertices if v % 4 == 0)
    if m2 < m0 or m2 < 1:
        raise RuntimeError("mod-4 class counting premise violated on a range")
    if N <= exhaustive_limit:
        witness = _cycle_search(G)
        if witness is not None:
            raise RuntimeError(f"exhaustive search found a Hamiltonian cycle: {witness}")
    return False
