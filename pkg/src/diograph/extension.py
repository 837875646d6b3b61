"""Constructive vertex extensions, common-neighbor solvers, regular
quadruple extensions, parametrized families, and representation search
for small abstract graphs.

The three extension modes attach a new integer w to a witness set V so
that w is adjacent to nobody (isolated), to exactly one chosen element
(pendant), or to exactly two chosen elements with different square-free
parts (double).  All three over-generate candidates from their CRT/Pell
constructions and filter by direct square tests; every returned w is
re-verified post hoc, never trusted.  Square-free-part freshness is
checked via the product test (x and y share a square-free part iff x*y
is a perfect square), which stays exact for orbit elements far beyond
factoring range.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd, isqrt

from .graph import build_set, edge_test
from .numtheory import (
    crt_combine,
    is_square,
    iter_primes,
    same_square_free_part,
    square_free_part,
)
from .pell import PellInstance, PellUnit, fundamental_unit, unit_order_mod

__all__ = [
    "ExtensionRequest",
    "PendantPlan",
    "RegularTriple",
    "RepresentResult",
    "WitnessSet",
    "common_neighbors_bounded",
    "common_neighbors_equal_sqfree",
    "extend_double",
    "extend_isolated",
    "extend_pendant",
    "family_k5_minus_edge",
    "pendant_plan",
    "regular_extensions",
    "represent_graph",
]

# Consecutive candidate rejections before the generators give up; the
# constructions succeed infinitely often, so hitting this is a defect.
_GENERATOR_STALL_LIMIT = 512


def _validate_witness(V) -> list[int]:
    vs = [int(v) for v in V]
    if any(v < 1 for v in vs):
        raise ValueError("witness elements must be positive")
    if len(set(vs)) != len(vs):
        raise ValueError("witness elements must be distinct")
    return vs


def _fresh_against(w: int, others) -> bool:
    return all(not same_square_free_part(w, v) for v in others)


@dataclass
class ExtensionRequest:
    """One extension job: attach `count` new vertices to V in the given
    mode (isolated, pendant to index i, or double to indices i and j)."""

    V: tuple[int, ...]
    mode: str
    count: int
    i: int | None = None
    j: int | None = None

    def __post_init__(self) -> None:
        if self.mode not in ("isolated", "pendant", "double"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.count < 1:
            raise ValueError("count must be positive")
        n = len(self.V)
        if self.mode == "pendant" and not (self.i is not None and 0 <= self.i < n):
            raise ValueError("pendant mode needs a valid index i")
        if self.mode == "double":
            if self.i is None or self.j is None:
                raise ValueError("double mode needs indices i and j")
            if not (0 <= self.i < n and 0 <= self.j < n) or self.i == self.j:
                raise ValueError("double mode needs distinct valid indices")
            if same_square_free_part(self.V[self.i], self.V[self.j]):
                raise ValueError(
                    "double mode needs endpoints with different square-free parts"
                )

    def run(self) -> list[int]:
        if self.mode == "isolated":
            return extend_isolated(self.V, self.count)
        if self.mode == "pendant":
            return extend_pendant(self.V, self.i, self.count)
        return extend_double(self.V, self.i, self.j, self.count)


def _distinct_primes_avoiding(values: list[int]) -> tuple[list[int], int]:
    """Pairwise distinct primes p_i with p_i not dividing v_i (smallest
    admissible, in index order), plus the smallest prime q coprime to
    every v and distinct from all p_i."""
    used: set[int] = set()
    ps: list[int] = []
    for v in values:
        for p in iter_primes():
            if p not in used and v % p != 0:
                ps.append(p)
                used.add(p)
                break
    for q in iter_primes():
        if q not in used and all(v % q != 0 for v in values):
            return ps, q
    raise AssertionError("unreachable")


def extend_isolated(V, count: int) -> list[int]:
    """Integers w joined to nothing in V, with square-free parts fresh
    against V and pairwise distinct among the returned values.

    Construction: solve v_i*x + 1 = p_i (mod p_i^2) for distinct primes
    p_i not dividing v_i, plus x = q (mod q^2) for a prime q coprime to
    everything.  Then v_i*w + 1 is divisible by p_i exactly once (so not
    a square) and q divides w exactly once (so its square-free part is
    new).  Each candidate is still verified directly.
    """
    vs = _validate_witness(V)
    if count < 1:
        raise ValueError("count must be positive")
    ps, q = _distinct_primes_avoiding(vs)
    congruences = []
    for v, p in zip(vs, ps):
        p2 = p * p
        congruences.append((((p - 1) * pow(v, -1, p2)) % p2, p2))
    congruences.append((q, q * q))
    x0, M = crt_combine(congruences)
    out: list[int] = []
    w = x0 if x0 >= 1 else x0 + M
    stall = 0
    while len(out) < count:
        if w not in vs and _fresh_against(w, out):
            for v in vs:
                if is_square(v * w + 1):
                    raise RuntimeError(
                        f"constructed isolated extension {w} is adjacent to {v}"
                    )
                if same_square_free_part(w, v):
                    raise RuntimeError(
                        f"constructed isolated extension {w} shares a "
                        f"square-free part with {v}"
                    )
            out.append(w)
            stall = 0
        else:
            stall += 1
            if stall > _GENERATOR_STALL_LIMIT:
                raise RuntimeError("isolated extension generator stalled")
        w += M
    return out


@dataclass(frozen=True)
class PendantPlan:
    """The congruence data behind a pendant extension: the auxiliary
    prime q, the fundamental solution (z0, y0) of z^2 - q*v_i*y^2 = 1
    with y0 = q^t * y1, the combined modulus M = q^(2t+2) * v_i, and the
    base residue x0."""

    v_i: int
    q: int
    z0: int
    y0: int
    t: int
    modulus: int
    x0: int


def pendant_plan(V, i: int) -> PendantPlan:
    vs = _validate_witness(V)
    if not 0 <= i < len(vs):
        raise ValueError(f"index {i} out of range")
    v_i = vs[i]
    for q in iter_primes():
        if all(v % q != 0 for v in vs):
            break
    unit = fundamental_unit(q * v_i)
    z0, y0 = unit.mu, unit.nu
    t = 0
    y1 = y0
    while y1 % q == 0:
        y1 //= q
        t += 1
    qpow = q ** (2 * t + 2)
    x0, M = crt_combine([(1, v_i), (z0, qpow)])
    return PendantPlan(v_i=v_i, q=q, z0=z0, y0=y0, t=t, modulus=M, x0=x0)


def extend_pendant(V, i: int, count: int) -> list[int]:
    """Integers w joined to v_i and nothing else in V.

    Candidates come from x = 1 (mod v_i), x = z0 (mod q^(2t+2)) with
    w = (x^2 - 1)/v_i: then v_i*w + 1 = x^2 and q divides the square-free
    part of w, so freshness against V is automatic.  Adjacency to the
    other elements is killed by filtering (only O(log X) candidates up to
    X can fail, so the filter passes infinitely often).
    """
    vs = _validate_witness(V)
    if count < 1:
        raise ValueError("count must be positive")
    plan = pendant_plan(vs, i)
    v_i, q, M = plan.v_i, plan.q, plan.modulus
    others = [v for idx, v in enumerate(vs) if idx != i]
    out: list[int] = []
    x = plan.x0
    if x <= 1:
        x += M
    stall = 0
    while len(out) < count:
        w, rem = divmod(x * x - 1, v_i)
        if rem:
            raise RuntimeError(f"candidate x={x} is not 1 mod {v_i}")
        if w >= 1:
            if not is_square(v_i * w + 1):
                raise RuntimeError(f"pendant candidate {w} lost its square")
            val_q = 0
            ww = w
            while ww % q == 0:
                ww //= q
                val_q += 1
            if val_q % 2 != 1:
                raise RuntimeError(
                    f"pendant candidate {w} has even q-valuation {val_q}"
                )
            if not _fresh_against(w, vs):
                raise RuntimeError(
                    f"pendant candidate {w} shares a square-free part with V"
                )
            if (
                w not in vs
                and all(not is_square(v * w + 1) for v in others)
                and _fresh_against(w, out)
            ):
                out.append(w)
                stall = 0
            else:
                stall += 1
        else:
            stall += 1
        if stall > _GENERATOR_STALL_LIMIT:
            raise RuntimeError("pendant extension generator stalled")
        x += M
    return out


def extend_double(V, i: int, j: int, count: int) -> list[int]:
    """Integers w joined to v_i and v_j (of different square-free parts)
    and to nothing else in V.

    Write v_i = d*vi', v_j = d*vj' with d = gcd.  Solutions of the pair
    of squares v_i*w + 1 = Y^2, v_j*w + 1 = (X/vi')^2 correspond to
    solutions of X^2 - vi'*vj'*Y^2 = vi'*(vi' - vj'), seeded by
    (X, Y) = (vi', 1) and stepped by the fundamental unit.  Stepping by
    the unit's order t0 modulo v_i keeps Y = 1 (mod v_i), so
    w = (Y^2 - 1)/v_i is integral.  Adjacency to other elements and
    square-free freshness are filtered; both exclusions are finite.
    """
    vs = _validate_witness(V)
    if count < 1:
        raise ValueError("count must be positive")
    n = len(vs)
    if not (0 <= i < n and 0 <= j < n) or i == j:
        raise ValueError("need distinct valid indices i, j")
    v_i, v_j = vs[i], vs[j]
    if same_square_free_part(v_i, v_j):
        raise ValueError(
            f"{v_i} and {v_j} share a square-free part; only finitely many "
            "common neighbors exist (use common_neighbors_equal_sqfree)"
        )
    if v_j < v_i:
        # the adjacency contract is symmetric; anchoring the orbit at the
        # smaller value keeps the unit order (and the orbit elements) small
        v_i, v_j = v_j, v_i
        i, j = j, i
    d = gcd(v_i, v_j)
    vi_, vj_ = v_i // d, v_j // d
    D = vi_ * vj_
    instance = PellInstance(D, vi_ * (vi_ - vj_))
    unit = fundamental_unit(D)
    t0 = unit_order_mod(unit, D, v_i)
    step = _unit_power(unit, D, t0)
    others = [v for idx, v in enumerate(vs) if idx not in (i, j)]
    out: list[int] = []
    X, Y = vi_, 1
    stall = 0
    while len(out) < count:
        X, Y = X * step.mu + Y * step.nu * D, X * step.nu + Y * step.mu
        if instance.residual(X, Y) != 0:
            raise RuntimeError("orbit left the Pell conic")
        w, rem = divmod(Y * Y - 1, v_i)
        if rem:
            raise RuntimeError(f"Y={Y} is not 1 mod {v_i} despite stepping by t0={t0}")
        if w >= 1:
            if not (is_square(v_i * w + 1) and is_square(v_j * w + 1)):
                raise RuntimeError(f"double candidate {w} lost a square")
            if (
                w not in vs
                and all(not is_square(v * w + 1) for v in others)
                and _fresh_against(w, vs)
                and _fresh_against(w, out)
            ):
                out.append(w)
                stall = 0
            else:
                stall += 1
        else:
            stall += 1
        if stall > _GENERATOR_STALL_LIMIT:
            raise RuntimeError("double extension generator stalled")
    return out


def _unit_power(unit: PellUnit, D: int, t: int) -> PellUnit:
    """(mu + nu*sqrt(D))^t by binary exponentiation on coefficient pairs."""
    rx, ry = 1, 0
    bx, by = unit.mu, unit.nu
    while t:
        if t & 1:
            rx, ry = rx * bx + ry * by * D, rx * by + ry * bx
        bx, by = bx * bx + by * by * D, 2 * bx * by
        t >>= 1
    return PellUnit(rx, ry)


def common_neighbors_equal_sqfree(a: int, b: int) -> list[int]:
    """All w >= 1 adjacent to both a and b when a and b share a
    square-free part.  Exact and finite, no search bound.

    With a = g*alpha^2, b = g*beta^2 and A = beta/delta, B = alpha/delta
    (delta = gcd), the squares a*w + 1 = r^2, b*w + 1 = t^2 force
    (A*r)^2 - (B*t)^2 = A^2 - B^2, a fixed nonzero difference, so all
    solutions come from its divisor pairs.
    """
    if a == b:
        raise ValueError("need two distinct integers")
    if a < 1 or b < 1:
        raise ValueError("inputs must be positive")
    if not same_square_free_part(a, b):
        raise ValueError(
            "square-free parts differ; use common_neighbors_bounded instead"
        )
    g = square_free_part(a)
    alpha = isqrt(a // g)
    beta = isqrt(b // g)
    delta = gcd(alpha, beta)
    A, B = beta // delta, alpha // delta
    diff = A * A - B * B
    out: set[int] = set()
    for p in range(1, isqrt(abs(diff)) + 1):
        if abs(diff) % p:
            continue
        qq = abs(diff) // p
        if (p + qq) % 2:
            continue
        u, wv = (p + qq) // 2, (qq - p) // 2
        # diff > 0: u = A*r, wv = B*t; diff < 0: roles swap
        ar, bt = (u, wv) if diff > 0 else (wv, u)
        r, rem_r = divmod(ar, A)
        t, rem_t = divmod(bt, B)
        if rem_r or rem_t or r < 1 or t < 1:
            continue
        w, rem_w = divmod(r * r - 1, a)
        if rem_w or w < 1:
            continue
        if not (is_square(a * w + 1) and is_square(b * w + 1)):
            raise RuntimeError(f"divisor-pair solution w={w} failed verification")
        out.add(w)
    return sorted(out)


def common_neighbors_bounded(S, bound: int) -> list[int]:
    """All w <= bound adjacent to every element of S, found by walking
    the square progression of the smallest element and filtering."""
    values = sorted(_validate_witness(S))
    if not values:
        raise ValueError("S must be nonempty")
    if bound < 1:
        raise ValueError("bound must be positive")
    m = values[0]
    rest = values[1:]
    sset = set(values)
    out = []
    for r in range(2, isqrt(m * bound + 1) + 1):
        w, rem = divmod(r * r - 1, m)
        if rem or w < 1 or w > bound or w in sset:
            continue
        if all(is_square(v * w + 1) for v in rest):
            out.append(w)
    return out


@dataclass(frozen=True)
class RegularTriple:
    """A Diophantine triple a, b, c together with the square roots
    r, s, t of ab+1, ac+1, bc+1."""

    a: int
    b: int
    c: int
    r: int
    s: int
    t: int

    @classmethod
    def from_values(cls, a: int, b: int, c: int) -> "RegularTriple":
        if len({a, b, c}) != 3 or min(a, b, c) < 1:
            raise ValueError("need three distinct positive integers")
        r, s, t = isqrt(a * b + 1), isqrt(a * c + 1), isqrt(b * c + 1)
        if r * r != a * b + 1 or s * s != a * c + 1 or t * t != b * c + 1:
            raise ValueError(f"({a}, {b}, {c}) is not a Diophantine triple")
        return cls(a, b, c, r, s, t)


def regular_extensions(triple: RegularTriple) -> tuple[int, int]:
    """The two regular quadruple extensions d-+ = a+b+c+2abc -+ 2rst.

    Every nonzero d distinct from a, b, c is verified to complete a
    Diophantine quadruple by three direct square tests.
    """
    a, b, c, r, s, t = triple.a, triple.b, triple.c, triple.r, triple.s, triple.t
    base = a + b + c + 2 * a * b * c
    d_minus, d_plus = base - 2 * r * s * t, base + 2 * r * s * t
    if d_minus < 0 or d_plus <= max(a, b, c):
        raise RuntimeError(f"regular extensions out of order: {d_minus}, {d_plus}")
    for d in (d_minus, d_plus):
        if d > 0 and d not in (a, b, c):
            for v in (a, b, c):
                if not is_square(v * d + 1):
                    raise RuntimeError(
                        f"regular extension {d} of ({a}, {b}, {c}) fails at {v}"
                    )
    return d_minus, d_plus


def family_k5_minus_edge(k: int) -> tuple[int, int, int, int, int]:
    """Member k of the parametrized 5-tuple family realizing K5 minus
    one edge: the quadruple (k-1, k+1, 4k, 16k^3-4k) plus the upper
    regular extension of its three largest elements."""
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    values = (
        k - 1,
        k + 1,
        4 * k,
        16 * k**3 - 4 * k,
        256 * k**5 + 256 * k**4 - 32 * k**3 - 64 * k**2 + k + 3,
    )
    g = build_set(values)
    non_edges = [
        (a, b)
        for idx, a in enumerate(g.vertices)
        for b in g.vertices[idx + 1 :]
        if not g.has_edge(a, b)
    ]
    if len(non_edges) != 1:
        raise RuntimeError(
            f"family member k={k} is not K5 minus one edge: "
            f"{len(non_edges)} edges missing"
        )
    return values


# ---------------------------------------------------------------------------
# Representation search for small abstract graphs
# ---------------------------------------------------------------------------


@dataclass
class WitnessSet:
    """Integers claimed to represent an abstract graph, with the vertex
    mapping and the outcome of the edge-for-edge verification."""

    values: tuple[int, ...]
    mapping: dict
    verified: bool


@dataclass
class RepresentResult:
    status: str  # "found" | "unknown"
    witness: WitnessSet | None
    known_impossible: bool
    nodes_searched: int


def _contains_k5(vertices: list, edge_set: set) -> bool:
    if len(vertices) < 5:
        return False
    for combo in combinations(vertices, 5):
        if all(
            frozenset((u, v)) in edge_set for u, v in combinations(combo, 2)
        ):
            return True
    return False


def _verify_mapping(vertices: list, edge_set: set, mapping: dict) -> bool:
    for u, v in combinations(vertices, 2):
        want = frozenset((u, v)) in edge_set
        if edge_test(mapping[u], mapping[v]) != want:
            return False
    return True


def _search_core(
    vertices: list, edge_set: set, pool_bound: int, budget: list[int]
) -> dict | None:
    """Backtracking assignment of integers to a min-degree >= 3 core.

    Vertices are ordered to maximize assigned neighbors; candidates for a
    vertex with an assigned neighbor m come from m's square progression,
    all filtered for full adjacency/non-adjacency consistency.
    """
    order: list = []
    remaining = set(vertices)
    degree = {v: sum(1 for u in vertices if frozenset((u, v)) in edge_set) for v in vertices}
    while remaining:
        if order:
            key = lambda v: (
                -sum(1 for u in order if frozenset((u, v)) in edge_set),
                -degree[v],
                vertices.index(v),
            )
        else:
            key = lambda v: (-degree[v], vertices.index(v))
        nxt = min(remaining, key=key)
        order.append(nxt)
        remaining.discard(nxt)

    assignment: dict = {}
    used: set[int] = set()

    def candidates_for(v) -> list[int]:
        anchors = [u for u in order if u in assignment and frozenset((u, v)) in edge_set]
        if not anchors:
            return list(range(1, pool_bound + 1))
        m = min(assignment[u] for u in anchors)
        cands = []
        for r in range(2, isqrt(m * pool_bound + 1) + 1):
            w, rem = divmod(r * r - 1, m)
            if not rem and 1 <= w <= pool_bound:
                cands.append(w)
        return cands

    def consistent(v, w: int) -> bool:
        if w in used:
            return False
        for u, wu in assignment.items():
            want = frozenset((u, v)) in edge_set
            if wu == w or edge_test(wu, w) != want:
                return False
        return True

    def backtrack(pos: int) -> bool:
        if pos == len(order):
            return True
        v = order[pos]
        for w in candidates_for(v):
            budget[0] -= 1
            if budget[0] <= 0:
                return False
            if consistent(v, w):
                assignment[v] = w
                used.add(w)
                if backtrack(pos + 1):
                    return True
                del assignment[v]
                used.discard(w)
        return False

    if backtrack(0):
        return dict(assignment)
    return None


def represent_graph(
    vertices,
    edges,
    node_budget: int = 2_000_000,
    pool_bound: int = 500,
) -> RepresentResult:
    """Find a witness realizing the given abstract graph (at most eight
    vertices), or report "unknown".

    Vertices of degree at most two are peeled recursively and rebuilt
    with the isolated/pendant/double extension generators; a leftover
    core of minimum degree three or more goes to a budgeted brute-force
    search.  A target containing K5 is flagged as known impossible (no
    Diophantine quintuples exist) and reported without searching.
    """
    verts = list(vertices)
    if len(verts) > 8:
        raise ValueError("representation search is limited to 8 vertices")
    if len(set(verts)) != len(verts):
        raise ValueError("duplicate target vertices")
    edge_set = set()
    for a, b in edges:
        if a == b or a not in verts or b not in verts:
            raise ValueError(f"bad edge ({a}, {b})")
        edge_set.add(frozenset((a, b)))

    if _contains_k5(verts, edge_set):
        return RepresentResult("unknown", None, True, 0)

    # Peel min-degree <= 2 vertices, smallest label first on ties.
    active = list(verts)
    peeled: list[tuple[object, list]] = []
    while active:
        degs = {
            v: [u for u in active if frozenset((u, v)) in edge_set] for v in active
        }
        low = [v for v in active if len(degs[v]) <= 2]
        if not low:
            break
        v = min(low, key=lambda v: (len(degs[v]), v))
        peeled.append((v, degs[v]))
        active.remove(v)

    nodes = [node_budget]
    mapping: dict = {}
    if active:
        core = _search_core(active, edge_set, pool_bound, nodes)
        if core is None:
            return RepresentResult("unknown", None, False, node_budget - nodes[0])
        mapping.update(core)

    for v, nbrs in reversed(peeled):
        values = [mapping[u] for u in mapping]
        if len(nbrs) == 0:
            w = extend_isolated(values, 1)[0]
        elif len(nbrs) == 1:
            w = extend_pendant(values, values.index(mapping[nbrs[0]]), 1)[0]
        else:
            wa, wb = mapping[nbrs[0]], mapping[nbrs[1]]
            if same_square_free_part(wa, wb):
                # Lemma's precondition broken by the core assignment;
                # report honestly rather than claim a negative.
                return RepresentResult("unknown", None, False, node_budget - nodes[0])
            w = extend_double(values, values.index(wa), values.index(wb), 1)[0]
        mapping[v] = w

    ok = _verify_mapping(verts, edge_set, mapping)
    witness = WitnessSet(tuple(mapping[v] for v in verts), dict(mapping), ok)
    if not ok:
        raise RuntimeError("constructed representation failed verification")
    return RepresentResult("found", witness, False, node_budget - nodes[0])
