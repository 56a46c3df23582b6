"""Graph edit distance under unit costs, exact and anytime.

Costs: node/edge insertion and deletion are 1; node substitution is 1
when labels differ, else 0; edges are unlabeled so edge substitution is
free.  ``ged_exact`` is a small-scale exhaustive oracle; ``ged_anytime``
is a depth-first branch-and-bound that can be stopped at a deadline and
always returns an upper bound on the true distance.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass

from .graph import CircuitGraph

ORACLE_MAX_NODES = 8


@dataclass(frozen=True)
class GedResult:
    ged: int
    optimal: bool
    score: float


def _score(ged: int, g1: CircuitGraph, g2: CircuitGraph) -> float:
    denom = max(g1.node_count, g2.node_count) + max(g1.edge_count, g2.edge_count)
    if denom == 0:
        return 1.0
    return min(1.0, max(0.0, 1.0 - ged / denom))


def ged_score(g_gen: CircuitGraph, g_ref: CircuitGraph, timeout_seconds: float = 60.0) -> GedResult:
    """Anytime GED normalized to [0, 1]; 1.0 means label-isomorphic."""
    return ged_anytime(g_gen, g_ref, timeout_seconds)


def ged_lower_bound(g1: CircuitGraph, g2: CircuitGraph) -> int:
    """Admissible bound from label multisets and edge counts alone."""
    c1 = Counter(g1.labels())
    c2 = Counter(g2.labels())
    matched = sum(min(c1[label], c2[label]) for label in c1)
    node_bound = max(g1.node_count, g2.node_count) - matched
    edge_bound = abs(g1.edge_count - g2.edge_count)
    return node_bound + edge_bound


def ged_exact(g1: CircuitGraph, g2: CircuitGraph) -> int:
    """Exact GED by exhaustive search over node mappings.

    Intended as an oracle: both graphs must have at most
    ``ORACLE_MAX_NODES`` nodes.  Every injective partial mapping from one
    node set to the other is enumerated (a branch is abandoned only once
    its accumulated cost already reaches the best complete mapping seen).
    """
    if g1.node_count > ORACLE_MAX_NODES or g2.node_count > ORACLE_MAX_NODES:
        raise ValueError(f"ged_exact is limited to {ORACLE_MAX_NODES} nodes per graph")
    if g1.node_count > g2.node_count:
        g1, g2 = g2, g1

    # Enumerate high-degree nodes first and cheap assignments first; this
    # only reorders the exhaustive enumeration so complete mappings are
    # abandoned sooner once they cannot beat the best one found.
    order = sorted(range(g1.node_count), key=lambda v: (-sum(1 for e in g1.edges if v in e), v))
    labels1 = [g1.labels()[v] for v in order]
    labels2 = g2.labels()
    adj1_full = g1.adjacency_counts()
    adj1 = [[adj1_full[order[i]][order[k]] for k in range(len(order))] for i in range(len(order))]
    adj2 = g2.adjacency_counts()
    n1, n2 = g1.node_count, g2.node_count
    total_e2 = g2.edge_count

    best = n1 + n2 + g1.edge_count + total_e2  # delete everything, insert everything
    mapping = [-1] * n1
    used = [False] * n2

    def leaf_tail(cost: int) -> int:
        # Insert every unused g2 node and every g2 edge touching one.
        covered = 0
        for j in range(n2):
            if not used[j]:
                cost += 1
            else:
                for j2 in range(j):
                    if used[j2]:
                        covered += adj2[j][j2]
        return cost + (total_e2 - covered)

    def explore(i: int, cost: int) -> None:
        nonlocal best
        if cost >= best:
            return
        if i == n1:
            best = min(best, leaf_tail(cost))
            return
        row1 = adj1[i]
        steps = []
        for j in range(n2):
            if used[j]:
                continue
            step = 0 if labels1[i] == labels2[j] else 1
            row2 = adj2[j]
            for k in range(i):
                m = mapping[k]
                step += abs(row1[k] - (row2[m] if m >= 0 else 0))
            steps.append((step, j))
        steps.sort()
        for step, j in steps:
            used[j] = True
            mapping[i] = j
            explore(i + 1, cost + step)
            used[j] = False
        mapping[i] = -1
        step = 1
        for k in range(i):
            step += row1[k]
        explore(i + 1, cost + step)

    explore(0, 0)
    return best


def _degrees(g: CircuitGraph) -> list[int]:
    degree = [0] * g.node_count
    for a, b in g.edges:
        degree[a] += 1
        degree[b] += 1
    return degree


def _connected_order(g: CircuitGraph, degree: list[int]) -> list[int]:
    """Max-adjacency order: every node enters next to already-placed ones,
    so edge costs constrain the search as early as possible."""
    n = g.node_count
    adj = g.adjacency_counts()
    placed: list[int] = []
    attached = [0] * n
    remaining = set(range(n))
    while remaining:
        best_node = max(remaining, key=lambda v: (attached[v], degree[v], -v))
        placed.append(best_node)
        remaining.discard(best_node)
        for u in remaining:
            attached[u] += adj[best_node][u]
    return placed


def _refine_colors(
    graphs: tuple[CircuitGraph, CircuitGraph], rounds: int = 3
) -> tuple[list[int], list[int]]:
    """Neighborhood color refinement shared across both graphs; nodes with
    equal colors are locally indistinguishable, which makes them the
    preferred mapping candidates."""
    adjs = [g.adjacency_counts() for g in graphs]
    palette: dict[object, int] = {}

    def intern(key: object) -> int:
        return palette.setdefault(key, len(palette))

    colors = [[intern(("label", label)) for label in g.labels()] for g in graphs]
    for _ in range(rounds):
        colors = [
            [
                intern(
                    (
                        colors[gi][v],
                        tuple(sorted(
                            (colors[gi][u], adjs[gi][v][u])
                            for u in range(len(colors[gi]))
                            if adjs[gi][v][u]
                        )),
                    )
                )
                for v in range(len(colors[gi]))
            ]
            for gi in range(2)
        ]
    return colors[0], colors[1]


def ged_anytime(g1: CircuitGraph, g2: CircuitGraph, timeout_seconds: float = 60.0) -> GedResult:
    """Depth-first branch-and-bound over node edit paths.

    Children are visited cheapest-first (ties broken toward candidates
    with matching refinement colors and degrees), so the first completed
    path is a greedy edit path; it is always finished even with a zero
    deadline.  The wall-clock deadline is checked at every node
    expansion, and the returned cost is an upper bound on the true GED
    (tight when ``optimal`` is True).
    """
    labels1 = g1.labels()
    labels2 = g2.labels()
    n1, n2 = g1.node_count, g2.node_count
    total_e2 = g2.edge_count

    degree = _degrees(g1)
    degree2 = _degrees(g2)
    order = _connected_order(g1, degree)
    color1, color2 = _refine_colors((g1, g2))

    adj1_full = g1.adjacency_counts()
    adj2 = g2.adjacency_counts()
    # Row i in processing order, columns also in processing order.
    adj1 = [[adj1_full[order[i]][order[k]] for k in range(n1)] for i in range(n1)]

    # Suffix label multisets of g1 and the count of g1 edges not yet
    # costed at each depth (an edge is costed at its later endpoint).
    suffix_labels: list[Counter[str]] = [Counter() for _ in range(n1 + 1)]
    for i in range(n1 - 1, -1, -1):
        suffix_labels[i] = suffix_labels[i + 1].copy()
        suffix_labels[i][labels1[order[i]]] += 1
    pos = [0] * n1
    for i, v in enumerate(order):
        pos[v] = i
    e1_rem = [0] * (n1 + 2)
    for a, b in g1.edges:
        e1_rem[max(pos[a], pos[b])] += 1
    for i in range(n1 - 1, -1, -1):
        e1_rem[i] += e1_rem[i + 1]

    deadline = time.monotonic() + timeout_seconds
    best = n1 + n2 + g1.edge_count + total_e2
    have_leaf = False
    timed_out = False

    mapping = [-1] * n1
    used = [False] * n2
    unused_labels = Counter(labels2)
    e2_covered = 0

    def label_bound(i: int) -> int:
        r1 = n1 - i
        r2 = n2 - sum(used)
        matched = sum(min(count, unused_labels[label]) for label, count in suffix_labels[i].items())
        return max(r1, r2) - matched

    def leaf_tail(cost: int) -> int:
        return cost + (n2 - sum(used)) + (total_e2 - e2_covered)

    def explore(i: int, cost: int) -> None:
        nonlocal best, have_leaf, timed_out, e2_covered
        if timed_out:
            return
        if have_leaf and time.monotonic() >= deadline:
            timed_out = True
            return
        if i == n1:
            total = leaf_tail(cost)
            if total < best:
                best = total
            have_leaf = True
            return
        if cost + label_bound(i) + abs(e1_rem[i] - (total_e2 - e2_covered)) >= best and have_leaf:
            return

        node1 = order[i]
        row1 = adj1[i]
        label1 = labels1[node1]
        candidates: list[tuple[int, int, int, int]] = []
        for j in range(n2):
            if used[j]:
                continue
            step = 0 if label1 == labels2[j] else 1
            row2 = adj2[j]
            for k in range(i):
                m = mapping[k]
                step += abs(row1[k] - (row2[m] if m >= 0 else 0))
            mismatch = 0 if color1[node1] == color2[j] else 1
            candidates.append((step, mismatch, abs(degree[node1] - degree2[j]), j))
        delete_step = 1
        for k in range(i):
            delete_step += row1[k]
        candidates.append((delete_step, 2, 0, -1))
        candidates.sort()

        for step, _, _, j in candidates:
            is_delete = j < 0
            if timed_out:
                return
            if have_leaf and cost + step >= best:
                continue
            if is_delete:
                mapping[i] = -1
                explore(i + 1, cost + step)
            else:
                used[j] = True
                mapping[i] = j
                unused_labels[labels2[j]] -= 1
                covered_delta = 0
                row2 = adj2[j]
                for k in range(i):
                    m = mapping[k]
                    if m >= 0:
                        covered_delta += row2[m]
                e2_covered += covered_delta
                explore(i + 1, cost + step)
                e2_covered -= covered_delta
                unused_labels[labels2[j]] += 1
                used[j] = False
        mapping[i] = -1

    explore(0, 0)
    return GedResult(best, optimal=not timed_out, score=_score(best, g1, g2))
