"""Constructions: disjoint matchings, cyclic Latin squares, H15 and its copies."""

from __future__ import annotations

from .hypergraph import TripartiteHypergraph, disjoint_union

GREEK = ("alpha", "beta", "gamma", "delta", "epsilon")
H15_NAMES = (GREEK, ("1", "2", "3", "4", "5"), ("a", "b", "c", "d", "e"))


def _relabel(h: TripartiteHypergraph, names) -> TripartiteHypergraph:
    rename = {}
    for i, part in enumerate(h.parts):
        if len(names[i]) != len(part):
            raise ValueError(f"name map for part {i} has {len(names[i])} names, need {len(part)}")
        rename.update(zip(part, names[i]))
    parts = [[rename[v] for v in part] for part in h.parts]
    edges = [frozenset(rename[v] for v in e) for e in h.edges]
    return TripartiteHypergraph(parts, edges, h.s_part)


def gen_matching(k: int) -> TripartiteHypergraph:
    """``k`` pairwise disjoint 3-edges ``{0_i, 1_i, 2_i}``."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    parts = [[f"{p}_{i}" for i in range(k)] for p in range(3)]
    edges = [{f"0_{i}", f"1_{i}", f"2_{i}"} for i in range(k)]
    return TripartiteHypergraph(parts, edges)


def gen_cyclic_latin(k: int, names=None) -> TripartiteHypergraph:
    """Edges ``{0_i, 1_j, 2_((i + j) mod k)}`` for all ``i, j < k``.

    ``names`` optionally maps the three parts to display names by index.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    parts = [[f"{p}_{i}" for i in range(k)] for p in range(3)]
    edges = [
        {f"0_{i}", f"1_{j}", f"2_{(i + j) % k}"} for i in range(k) for j in range(k)
    ]
    h = TripartiteHypergraph(parts, edges)
    return _relabel(h, names) if names is not None else h


def gen_h15(letter_names: bool = False) -> TripartiteHypergraph:
    """The 15-vertex, 25-edge hypergraph with 428 minimal transversals.

    With ``letter_names`` the parts are named alpha..epsilon, 1..5 and a..e;
    Greek letter ``g`` and digit ``r`` share an edge with letter ``g + r``
    (0-based, mod 5).
    """
    return gen_cyclic_latin(5, H15_NAMES if letter_names else None)


def split_order(n: int) -> tuple[int, int]:
    """``(k, r)`` with ``n = 3 * (5k + r)`` and ``0 <= r <= 4``."""
    if n < 3 or n % 3:
        raise ValueError(f"n must be a positive multiple of 3, got {n}")
    return divmod(n // 3, 5)


def gen_theorem1(n: int) -> TripartiteHypergraph:
    """``k`` copies of H15 plus ``r`` disjoint 3-edges, for ``n = 3(5k + r)``."""
    k, r = split_order(n)
    pieces = [gen_h15() for _ in range(k)]
    if r:
        pieces.append(gen_matching(r))
    h = pieces[0]
    for piece in pieces[1:]:
        h = disjoint_union(h, piece)
    return h
