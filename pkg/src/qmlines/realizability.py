"""Deciding whether a betweenness relation is realized by a quasi-metric,
a metric, a bounded-integer-distance space, or a digraph.

The rational variants reduce to exact slack maximization: the constraint
system is homogeneous, so after normalizing the distance sum to 1, the
relation is realizable iff the shared strictness margin has a positive
optimum.  The integer and digraph variants are exhaustive searches.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .core import (
    Betweenness,
    DistanceMatrix,
    betweenness_of,
    consistency_check,
    default_labels,
    validate_quasi_metric,
)
from .encoding import apply_bit_map, ordered_triples, permutation_bit_maps
from .lp import (
    EPS_VAR,
    Constraint,
    FeasibilityOutcome,
    LinearSystem,
    maximize_slack,
    pair_var,
)

VARIANTS = ("quasi", "metric")


class InconsistentRelationError(ValueError):
    """The relation violates the membership exclusion rule and cannot come
    from any quasi-metric."""


def _require_consistent(b: Betweenness) -> None:
    if not consistency_check(b):
        raise InconsistentRelationError(
            "relation contains a triple together with one of its excluded companions"
        )


def build_realization_system(b: Betweenness, variant: str = "quasi") -> LinearSystem:
    """The linear feasibility system whose strict solutions are exactly the
    (quasi-)metrics with betweenness b.

    Members force distance equalities, non-members force slack-strict
    triangle inequalities, all distances are slack-positive, and the metric
    variant adds symmetry.  The distance sum is normalized to 1.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    _require_consistent(b)
    n = b.n
    one = Fraction(1)
    cons = []
    for i in range(n):
        for j in range(n):
            if i != j:
                cons.append(Constraint({EPS_VAR: one, pair_var(i, j): -one}, "<=", 0))
    for (x, y, z) in ordered_triples(n):
        coeffs = {pair_var(x, z): one, pair_var(x, y): -one, pair_var(y, z): -one}
        if (x, y, z) in b:
            cons.append(Constraint(coeffs, "=", 0))
        else:
            coeffs[EPS_VAR] = one
            cons.append(Constraint(coeffs, "<=", 0))
    if variant == "metric":
        for i in range(n):
            for j in range(i + 1, n):
                cons.append(Constraint({pair_var(i, j): one, pair_var(j, i): -one}, "=", 0))
    cons.append(
        Constraint({pair_var(i, j): one for i in range(n) for j in range(n) if i != j}, "=", 1)
    )
    return LinearSystem(n, tuple(cons))


def verify_witness(m: DistanceMatrix, b: Betweenness) -> bool:
    """True iff m is a valid quasi-metric whose betweenness equals b exactly."""
    if m.n != b.n:
        return False
    return validate_quasi_metric(m).ok and betweenness_of(m) == b


def realize(b: Betweenness, variant: str = "quasi") -> FeasibilityOutcome:
    """Decide realizability of b by a quasi-metric (or metric) space.

    Any returned witness is re-verified against b before being handed out.
    """
    outcome = maximize_slack(build_realization_system(b, variant))
    if outcome.witness is not None and not verify_witness(outcome.witness, b):
        raise RuntimeError(
            f"solver produced an invalid witness for {b}; this is a bug"
        )
    return outcome


def _orbit_masks(b: Betweenness) -> frozenset[int]:
    """All encodings isomorphic to b (the relabeling orbit)."""
    return frozenset(
        apply_bit_map(b.mask, bit_map) for bit_map in permutation_bit_maps(b.n)
    )


def realize_bounded_integer(b: Betweenness, kmax: int) -> DistanceMatrix | None:
    """Search all quasi-metrics with off-diagonal distances in 1..kmax for one
    whose betweenness is isomorphic to b; None if the exhaustive search fails.

    "Distances in {0..kmax}" places 0 on the diagonal only, since d(x,y) = 0
    forces x = y.
    """
    _require_consistent(b)
    if kmax < 1:
        raise ValueError(f"kmax must be at least 1, got {kmax}")
    n = b.n
    entries = kernels.find_integer_witness(n, kmax, _orbit_masks(b))
    if entries is None:
        return None
    return _matrix_from_flat(n, entries)


def _matrix_from_flat(n: int, flat) -> DistanceMatrix:
    it = iter(flat)
    rows = tuple(
        tuple(Fraction(0) if i == j else Fraction(next(it)) for j in range(n))
        for i in range(n)
    )
    return DistanceMatrix(default_labels(n), rows)


@dataclass(frozen=True)
class Digraph:
    """A loopless directed graph; induces a quasi-metric by shortest paths
    once strongly connected."""

    n: int
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self):
        arcs = frozenset((int(i), int(j)) for (i, j) in self.arcs)
        for (i, j) in arcs:
            if i == j:
                raise ValueError(f"loop arc ({i},{i}) not allowed")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"arc ({i},{j}) out of range for n={self.n}")
        object.__setattr__(self, "arcs", arcs)


def is_strongly_connected(g: Digraph) -> bool:
    out_adj = {i: set() for i in range(g.n)}
    in_adj = {i: set() for i in range(g.n)}
    for (i, j) in g.arcs:
        out_adj[i].add(j)
        in_adj[j].add(i)

    def reaches_all(adj):
        seen = {0}
        frontier = [0]
        while frontier:
            v = frontier.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return len(seen) == g.n

    return reaches_all(out_adj) and reaches_all(in_adj)


def digraph_distances(g: Digraph) -> DistanceMatrix:
    """Unweighted shortest-path distance matrix of a strongly connected digraph."""
    if not is_strongly_connected(g):
        raise ValueError("digraph is not strongly connected; distances would be infinite")
    n = g.n
    inf = n + 1
    d = [[0 if i == j else inf for j in range(n)] for i in range(n)]
    for (i, j) in g.arcs:
        d[i][j] = 1
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return DistanceMatrix(
        default_labels(n), tuple(tuple(Fraction(v) for v in row) for row in d)
    )


def _arcs_from_mask(n: int, arc_mask: int) -> frozenset[tuple[int, int]]:
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    return frozenset(p for k, p in enumerate(pairs) if arc_mask >> k & 1)


def realize_digraph(b: Betweenness) -> Digraph | None:
    """Search all strongly connected digraphs on b.n vertices for one whose
    shortest-path betweenness is isomorphic to b; None if none exists.

    Exhaustive over 2^(n(n-1)) arc sets, so n is capped at 5.
    """
    _require_consistent(b)
    if b.n > 5:
        raise ValueError(f"digraph search is exhaustive; n={b.n} exceeds the cap of 5")
    arc_mask = kernels.find_digraph_witness(b.n, _orbit_masks(b))
    if arc_mask is None:
        return None
    return Digraph(b.n, _arcs_from_mask(b.n, arc_mask))
