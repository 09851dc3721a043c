"""Minimal transversal enumeration: an exhaustive oracle and a branching tree.

The branching enumerator follows a fixed descendant rule (unit reduction,
then cases 1, 2.1, 2.2 and 3 on a pivot vertex of part S).  Leaves of the
tree bound the number of minimal transversals; every branch records the
measure drop it guarantees so that the guarantee can be audited exactly.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

from .h3io import serialize
from .hypergraph import (
    ALPHA,
    Condition,
    TripartiteHypergraph,
    apply_condition,
    measure,
)

ORACLE_MAX_VERTICES = 24
CASE_LABELS = ("case1", "case2_1", "case2_2", "case3", "unit_reduction")
REPORT_KEYS = {
    "case1": "case1",
    "case2_1": "case2_1",
    "case2_2": "case2_2",
    "case3": "case3",
    "unit_reduction": "unit",
}


class OracleTooLargeError(ValueError):
    pass


class TransversalSet:
    """An immutable set of vertex sets with a canonical ordering."""

    def __init__(self, sets: Iterable[Iterable[str]] = ()):
        self._sets = frozenset(frozenset(s) for s in sets)
        self._sorted = tuple(sorted(tuple(sorted(s)) for s in self._sets))

    def __len__(self):
        return len(self._sets)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self._sorted)

    def __contains__(self, t):
        return frozenset(t) in self._sets

    def __eq__(self, other):
        if isinstance(other, TransversalSet):
            return self._sets == other._sets
        return NotImplemented

    def __hash__(self):
        return hash(self._sets)

    def __repr__(self):
        return f"TransversalSet({len(self)} sets)"

    @property
    def sets(self) -> frozenset:
        return self._sets

    def listing(self) -> str:
        """One transversal per line, members sorted, lines sorted."""
        return "".join(" ".join(t) + "\n" for t in self._sorted)


def is_transversal(h: TripartiteHypergraph, t: Iterable[str]) -> bool:
    if h.dead:
        return False
    t = frozenset(t)
    return all(e & t for e in h.edges)


def is_minimal_transversal(h: TripartiteHypergraph, t: Iterable[str]) -> bool:
    """Transversal in which every member is the sole member of some edge."""
    t = frozenset(t)
    if not is_transversal(h, t):
        return False
    private = set()
    for e in h.edges:
        hit = e & t
        if len(hit) == 1:
            private |= hit
    return private == t


def enumerate_oracle(
    h: TripartiteHypergraph, max_vertices: int = ORACLE_MAX_VERTICES
) -> TransversalSet:
    """All minimal transversals by scanning every vertex subset."""
    n = h.order
    if n > max_vertices:
        raise OracleTooLargeError(
            f"{n} vertices exceeds the oracle limit of {max_vertices}; "
            "use the branching enumerator instead"
        )
    if h.dead:
        return TransversalSet()
    names = sorted(h.vertices)
    bit = {v: 1 << i for i, v in enumerate(names)}
    edge_masks = [sum(bit[v] for v in e) for e in h.edges]
    found = []
    chunk = 1 << 20
    for start in range(0, 1 << n, chunk):
        masks = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        covers = np.ones(masks.shape, dtype=bool)
        private = np.zeros_like(masks)
        for em in edge_masks:
            hit = masks & em
            covers &= hit != 0
            private |= np.where((hit & (hit - 1)) == 0, hit, 0)
        for m in masks[covers & (private == masks)]:
            m = int(m)
            found.append([names[i] for i in range(n) if m >> i & 1])
    return TransversalSet(found)


@dataclass(frozen=True)
class Branch:
    """One condition of a descendant family with its guaranteed measure drop."""

    condition: Condition
    case: str
    claimed_drop: Fraction


def _smallest_unit_edge(h):
    units = sorted(next(iter(e)) for e in h.edges if len(e) == 1)
    return units[0] if units else None


def descendant(h: TripartiteHypergraph, alpha=ALPHA) -> list[Branch]:
    """Complete family of conditions for a non-empty, live hypergraph."""
    if h.dead or not h.edges:
        raise ValueError("descendant is defined only for non-empty, live hypergraphs")
    alpha = Fraction(alpha)
    one = Fraction(1)

    unit = _smallest_unit_edge(h)
    if unit is not None:
        return [Branch(Condition({unit}), "unit_reduction", one - alpha)]

    s = h.s_vertices
    if not s or any(not e & s for e in h.edges):
        raise RuntimeError(
            f"part S={h.s_part} is not a transversal of the current hypergraph:\n"
            + serialize(h)
        )
    partners = {a: [] for a in s}
    threes = {a: [] for a in s}
    for e in h.canonical_edges:
        (a,) = e & s
        rest = tuple(sorted(e - {a}))
        (partners if len(e) == 2 else threes)[a].append(rest)
    a = min(s, key=lambda v: (-len(partners[v]), v))
    two = sorted(p[0] for p in partners[a])

    if len(two) >= 2:
        b, c = two[0], two[1]
        return [
            Branch(Condition({b, c}), "case1", 2 - 2 * alpha),
            Branch(Condition({a, b}, {c}), "case1", 3 - 3 * alpha),
            Branch(Condition({a}, {b}), "case1", 2 - 2 * alpha),
        ]
    if len(two) == 1:
        (b,) = two
        # 3-edges through both a and b are supersets of ab and never decide.
        others = [r for r in threes[a] if b not in r]
        if not others:
            return [
                Branch(Condition({b}, {a}), "case2_1", 2 - alpha),
                Branch(Condition({a}, {b}), "case2_1", 2 - alpha),
            ]
        c, d = others[0]
        return [
            Branch(Condition({b, c}), "case2_2", 2 - 2 * alpha),
            Branch(Condition({b, d}, {c}), "case2_2", 3 - 3 * alpha),
            Branch(Condition({a, b}, {c, d}), "case2_2", 4 - 3 * alpha),
            Branch(Condition({a}, {b}), "case2_2", 2 - alpha),
        ]
    b, c = threes[a][0]
    return [
        Branch(Condition({b}), "case3", one),
        Branch(Condition({c}, {b}), "case3", 2 * one),
        Branch(Condition({a}, {b, c}), "case3", 3 * one),
    ]


@dataclass(frozen=True)
class BranchNode:
    """A tree edge: the parent hypergraph and the branch taken from it."""

    case_label: str
    condition_applied: Condition
    measure_before: Fraction
    measure_after: Fraction
    claimed_drop: Fraction
    depth: int
    hypergraph: TripartiteHypergraph = field(repr=False, compare=False)

    @property
    def drop(self) -> Fraction:
        return self.measure_before - self.measure_after


@dataclass
class BranchReport:
    leaf_count: int = 0
    dead_leaf_count: int = 0
    height: int = 0
    non_s_height: int = 0
    candidates: set = field(default_factory=set)
    case_histogram: Counter = field(default_factory=Counter)
    nodes: list = field(default_factory=list, repr=False)

    def lines(self) -> list[str]:
        out = [
            f"leaves={self.leaf_count}",
            f"dead_leaves={self.dead_leaf_count}",
            f"height={self.height}",
        ]
        for label in CASE_LABELS:
            out.append(f"{REPORT_KEYS[label]}={self.case_histogram.get(label, 0)}")
        return out


def branch_enumerate(h: TripartiteHypergraph, alpha=ALPHA):
    """Run the branching tree; return the minimal transversals and a report.

    Live leaves contribute the union of the forced-in sets along their path
    as a candidate; candidates are kept only if they are minimal
    transversals of ``h`` itself.
    """
    alpha = Fraction(alpha)
    report = BranchReport()
    root_s = h.s_vertices

    def visit(g, forced, mu, depth, non_s_depth):
        report.height = max(report.height, depth)
        report.non_s_height = max(report.non_s_height, non_s_depth)
        if g.dead:
            report.leaf_count += 1
            report.dead_leaf_count += 1
            return
        if not g.edges:
            report.leaf_count += 1
            report.candidates.add(forced)
            return
        family = descendant(g, alpha)
        report.case_histogram[family[0].case] += 1
        for br in family:
            child = apply_condition(g, br.condition)
            mu_child = measure(child, alpha)
            report.nodes.append(
                BranchNode(br.case, br.condition, mu, mu_child, br.claimed_drop, depth, g)
            )
            touches = bool(br.condition.vertices - root_s)
            visit(
                child,
                forced | br.condition.a_plus,
                mu_child,
                depth + 1,
                non_s_depth + touches,
            )

    visit(h, frozenset(), measure(h, alpha), 0, 0)
    found = TransversalSet(t for t in report.candidates if is_minimal_transversal(h, t))
    return found, report


def validate_complete_family(h: TripartiteHypergraph, family) -> bool:
    """Every minimal transversal of ``h`` satisfies some condition of ``family``."""
    conditions = [getattr(f, "condition", f) for f in family]
    if not conditions:
        return False
    if any(not (c.a_plus or c.a_minus) for c in conditions):
        return False
    return all(
        any(c.satisfied_by(t) for c in conditions) for t in enumerate_oracle(h)
    )


@dataclass
class AuditReport:
    nodes_checked: int = 0
    unit_reductions: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        out = [
            f"nodes_checked={self.nodes_checked}",
            f"violations={len(self.violations)}",
            f"unit={self.unit_reductions}",
        ]
        if self.unit_reductions:
            out.append("note=unit_reduction is a forced step added to the case analysis")
        for v in self.violations:
            out.append(f"violation={v['case']} condition={v['condition']} "
                       f"drop={v['drop']} claimed={v['claimed']}")
            out.extend("  " + line for line in v["hypergraph"].splitlines())
        return out


def audit_measure_drops(h: TripartiteHypergraph, alpha=ALPHA) -> AuditReport:
    """Check the exact drop of every tree edge against its claimed bound."""
    _, report = branch_enumerate(h, alpha)
    audit = AuditReport()
    for node in report.nodes:
        audit.nodes_checked += 1
        audit.unit_reductions += node.case_label == "unit_reduction"
        if node.drop < node.claimed_drop:
            audit.violations.append({
                "case": node.case_label,
                "condition": str(node.condition_applied),
                "drop": node.drop,
                "claimed": node.claimed_drop,
                "hypergraph": serialize(node.hypergraph),
            })
    return audit
