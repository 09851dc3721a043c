"""Tripartite hypergraphs of rank at most 3.

Vertices are identified by their display names (whitespace-free tokens);
each name belongs to exactly one of three parts.  Edges are frozensets of
names.  All objects are immutable once built.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "ALPHA",
    "Condition",
    "RejectedConditionError",
    "TripartiteHypergraph",
    "ValidationReport",
    "VertexId",
    "apply_condition",
    "degree2",
    "degree3",
    "disjoint_union",
    "max_2edge_matching",
    "measure",
    "validate",
]

ALPHA = Fraction(145785, 1000000)

Edge = frozenset  # of vertex names, 1 to 3 members


class VertexId(NamedTuple):
    part: int
    index: int
    name: str


class RejectedConditionError(ValueError):
    """A condition that cannot be applied to the given hypergraph."""


@dataclass(frozen=True)
class Condition:
    """Forced inclusion (``a_plus``) and exclusion (``a_minus``) of vertices."""

    a_plus: frozenset = frozenset()
    a_minus: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "a_plus", frozenset(self.a_plus))
        object.__setattr__(self, "a_minus", frozenset(self.a_minus))
        if self.a_plus & self.a_minus:
            raise ValueError(
                f"condition sets overlap on {sorted(self.a_plus & self.a_minus)}"
            )
        if not (self.a_plus or self.a_minus):
            raise ValueError("trivial condition (both sets empty)")

    @property
    def vertices(self) -> frozenset:
        return self.a_plus | self.a_minus

    def satisfied_by(self, t: Iterable[str]) -> bool:
        t = set(t)
        return self.a_plus <= t and not (t & self.a_minus)

    def __str__(self):
        plus = "".join(f"+{v}" for v in sorted(self.a_plus))
        minus = "".join(f"-{v}" for v in sorted(self.a_minus))
        return plus + minus


def _edge_key(e: Iterable[str]) -> tuple:
    return tuple(sorted(e))


@dataclass(frozen=True, eq=False)
class TripartiteHypergraph:
    """Three ordered vertex lists, an edge tuple and the index of part S.

    ``s_part=None`` picks the largest part that is a transversal (lowest
    index on ties).  ``dead`` marks a hypergraph in which some edge was
    emptied; such a hypergraph has no transversal.
    """

    parts: tuple
    edges: tuple
    s_part: int | None = None
    dead: bool = False

    def __post_init__(self):
        parts = tuple(tuple(p) for p in self.parts)
        if len(parts) != 3:
            raise ValueError(f"expected 3 parts, got {len(parts)}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "edges", tuple(frozenset(e) for e in self.edges))
        seen = {}
        for i, part in enumerate(parts):
            for name in part:
                if name in seen:
                    raise ValueError(
                        f"vertex {name!r} declared in parts {seen[name]} and {i}"
                    )
                seen[name] = i
        for e in self.edges:
            unknown = [v for v in e if v not in seen]
            if unknown:
                raise ValueError(f"edge uses undeclared vertices {sorted(unknown)}")
        if self.s_part is None:
            object.__setattr__(self, "s_part", self._default_s_part())
        elif self.s_part not in (0, 1, 2):
            raise ValueError(f"s_part must be 0, 1 or 2, got {self.s_part}")

    def _default_s_part(self) -> int:
        order = sorted(range(3), key=lambda i: (-len(self.parts[i]), i))
        for i in order:
            members = set(self.parts[i])
            if all(e & members for e in self.edges):
                return i
        return order[0]

    @cached_property
    def part_of(self) -> dict:
        return {v: i for i, part in enumerate(self.parts) for v in part}

    @cached_property
    def vertices(self) -> frozenset:
        return frozenset(self.part_of)

    @property
    def s_vertices(self) -> frozenset:
        return frozenset(self.parts[self.s_part])

    @property
    def order(self) -> int:
        return len(self.part_of)

    def vertex(self, name: str) -> VertexId:
        try:
            part = self.part_of[name]
        except KeyError:
            raise KeyError(f"unknown vertex {name!r}") from None
        return VertexId(part, self.parts[part].index(name), name)

    @cached_property
    def canonical_edges(self) -> tuple:
        return tuple(sorted(self.edges, key=_edge_key))

    def is_empty(self) -> bool:
        return not self.edges and not self.dead

    def is_uniform(self) -> bool:
        return all(len(e) == 3 for e in self.edges)

    def _key(self):
        return (
            tuple(frozenset(p) for p in self.parts),
            tuple(_edge_key(e) for e in self.canonical_edges),
            self.s_part,
            self.dead,
        )

    def __eq__(self, other):
        if not isinstance(other, TripartiteHypergraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        sizes = tuple(len(p) for p in self.parts)
        flag = ", dead" if self.dead else ""
        return (
            f"TripartiteHypergraph(parts={sizes}, edges={len(self.edges)}, "
            f"s_part={self.s_part}{flag})"
        )

    def with_dead(self, dead: bool) -> "TripartiteHypergraph":
        if dead == self.dead:
            return self
        return TripartiteHypergraph(self.parts, self.edges, self.s_part, dead)

    @classmethod
    def from_edges(cls, edges, part_of, s_part=None) -> "TripartiteHypergraph":
        """Build from edges and a name -> part mapping; V is the union of edges."""
        edges = [frozenset(e) for e in edges]
        used = set().union(*edges) if edges else set()
        parts = [[], [], []]
        for v in sorted(used):
            parts[part_of[v]].append(v)
        return cls(parts, edges, s_part)


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def validate(h: TripartiteHypergraph, strict_uniform: bool = False) -> ValidationReport:
    """Collect structural violations; never raises."""
    report = ValidationReport()
    seen = set()
    for e in h.canonical_edges:
        names = " ".join(_edge_key(e))
        if not e:
            report.violations.append("empty edge")
            continue
        if len(e) > 3:
            report.violations.append(f"edge {{{names}}} has arity {len(e)} > 3")
        parts = [h.part_of[v] for v in e]
        if len(set(parts)) != len(parts):
            report.violations.append(f"edge {{{names}}} has two vertices in one part")
        if strict_uniform and len(e) != 3:
            report.violations.append(f"edge {{{names}}} has arity {len(e)}, expected 3")
        if e in seen:
            report.violations.append(f"duplicate edge {{{names}}}")
        seen.add(e)
    covered = set().union(*h.edges) if h.edges else set()
    for v in sorted(h.vertices - covered):
        report.violations.append(f"orphan vertex {v} (in no edge)")
    s = h.s_vertices
    for e in h.canonical_edges:
        if e and not e & s:
            report.violations.append(
                f"edge {{{' '.join(_edge_key(e))}}} misses part S={h.s_part}"
            )
    if h.dead:
        report.violations.append("hypergraph is dead (contains an emptied edge)")
    return report


def apply_condition(
    h: TripartiteHypergraph, a: Condition, remove_supersets: bool = False
) -> TripartiteHypergraph:
    """Return the hypergraph left after forcing ``a``.

    Edges meeting ``a.a_plus`` are deleted, ``a.a_minus`` is removed from the
    remaining edges, and duplicate edges are merged.  If an edge becomes
    empty the result is flagged dead and the empty edge is dropped.
    ``remove_supersets`` additionally discards edges containing another edge;
    measure audits never use it.
    """
    outside = a.vertices - h.vertices
    if outside:
        raise RejectedConditionError(f"condition uses unknown vertices {sorted(outside)}")
    s_minus = a.a_minus & h.s_vertices
    if s_minus:
        for e in h.canonical_edges:
            if e & s_minus and not e & a.a_plus:
                raise RejectedConditionError(
                    f"edge {{{' '.join(_edge_key(e))}}} loses S-vertex "
                    f"{sorted(e & s_minus)[0]} without meeting A+"
                )
    kept = []
    seen = set()
    dead = h.dead
    for e in h.canonical_edges:
        if e & a.a_plus:
            continue
        e = e - a.a_minus
        if not e:
            dead = True
            continue
        if e not in seen:
            seen.add(e)
            kept.append(e)
    if remove_supersets:
        kept = [e for e in kept if not any(f < e for f in kept)]
    return TripartiteHypergraph.from_edges(kept, h.part_of, h.s_part).with_dead(dead)


def _degree(h: TripartiteHypergraph, v: str, arity: int) -> int:
    if v not in h.part_of:
        raise KeyError(f"unknown vertex {v!r}")
    return sum(1 for e in h.edges if len(e) == arity and v in e)


def degree2(h: TripartiteHypergraph, v: str) -> int:
    """Number of 2-edges containing ``v``."""
    return _degree(h, v, 2)


def degree3(h: TripartiteHypergraph, v: str) -> int:
    """Number of 3-edges containing ``v``."""
    return _degree(h, v, 3)


def max_2edge_matching(h: TripartiteHypergraph) -> int:
    """Exact size of a maximum set of pairwise disjoint 2-edges."""
    pairs = sorted({_edge_key(e) for e in h.edges if len(e) == 2})
    return _max_matching(tuple(pairs))


def _max_matching(pairs: Sequence[tuple]) -> int:
    # Branch on the smallest edge; a pendant endpoint means taking it is safe.
    if not pairs:
        return 0
    u, v = pairs[0]
    take = tuple(p for p in pairs if u not in p and v not in p)
    with_edge = 1 + _max_matching(take)
    if len(pairs) - len(take) == 1:
        return with_edge
    deg_u = sum(1 for p in pairs if u in p)
    deg_v = sum(1 for p in pairs if v in p)
    if deg_u == 1 or deg_v == 1:
        return with_edge
    without = _max_matching(pairs[1:])
    return max(with_edge, without)


def measure(h: TripartiteHypergraph, alpha: Fraction = ALPHA) -> Fraction:
    """|V(h)| - alpha * m(h), as an exact rational."""
    alpha = Fraction(alpha)
    if not 0 <= alpha <= 1:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    return h.order - alpha * max_2edge_matching(h)


def disjoint_union(h1: TripartiteHypergraph, h2: TripartiteHypergraph) -> TripartiteHypergraph:
    """Part-wise concatenation of two hypergraphs.

    Names are kept when the vertex sets are disjoint; otherwise every vertex
    is renamed ``<part>_<index>`` by its position in the concatenated part.
    """
    shared = h1.vertices & h2.vertices
    parts = [list(p1) + list(p2) for p1, p2 in zip(h1.parts, h2.parts)]
    edges = list(h1.edges) + list(h2.edges)
    if shared:
        rename1, rename2 = {}, {}
        for i in range(3):
            for j, v in enumerate(h1.parts[i]):
                rename1[v] = f"{i}_{j}"
            offset = len(h1.parts[i])
            for j, v in enumerate(h2.parts[i]):
                rename2[v] = f"{i}_{offset + j}"
        parts = [[f"{i}_{j}" for j in range(len(p))] for i, p in enumerate(parts)]
        edges = [frozenset(rename1[v] for v in e) for e in h1.edges] + [
            frozenset(rename2[v] for v in e) for e in h2.edges
        ]
    s_part = h1.s_part if h1.s_part == h2.s_part else None
    return TripartiteHypergraph(parts, edges, s_part, h1.dead or h2.dead)
