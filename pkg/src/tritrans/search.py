"""Searching small tripartite 3-uniform hypergraphs for many minimal transversals."""

from __future__ import annotations

import itertools
import logging
import random
import time
from dataclasses import dataclass
from pathlib import Path

from .enumeration import ORACLE_MAX_VERTICES, enumerate_oracle
from .h3io import parse, serialize
from .hypergraph import TripartiteHypergraph
from .tau import upper_bound

log = logging.getLogger(__name__)

STRATEGIES = ("exhaustive", "random", "hillclimb", "latin")
EXHAUSTIVE_MAX_TRIPLES = 30
PLATEAU_CAP = 50
DENSITIES = (0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8)


@dataclass(frozen=True)
class SearchConfig:
    part_sizes: tuple
    strategy: str
    seed: int = 0
    iterations: int = 1000
    time_budget: float | None = None
    catalog: str | None = None

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.part_sizes)
        object.__setattr__(self, "part_sizes", sizes)
        if len(sizes) != 3 or min(sizes) < 1:
            raise ValueError(f"part sizes must be three positive integers, got {sizes}")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}; choose from {STRATEGIES}")
        if self.iterations < 1:
            raise ValueError("iterations must be positive")
        if sum(sizes) > ORACLE_MAX_VERTICES:
            raise ValueError(
                f"{sum(sizes)} vertices exceeds the oracle limit of {ORACLE_MAX_VERTICES}"
            )
        if self.strategy == "exhaustive":
            p, q, r = sizes
            if p * q * r > EXHAUSTIVE_MAX_TRIPLES:
                raise ValueError(
                    f"exhaustive search needs p*q*r <= {EXHAUSTIVE_MAX_TRIPLES}, got {p * q * r}"
                )


@dataclass(frozen=True)
class SearchRecord:
    hypergraph: str  # canonical H3 text
    mt_count: int
    strategy: str
    seed: int
    iterations_used: int
    anomaly: bool = False

    def to_text(self) -> str:
        return (
            self.hypergraph
            + f"# mt_count={self.mt_count}\n"
            + f"# strategy={self.strategy}\n"
            + f"# seed={self.seed}\n"
            + f"# iterations={self.iterations_used}\n"
        )

    @classmethod
    def from_text(cls, text: str) -> "SearchRecord":
        """Parse a stored record and re-count its minimal transversals."""
        meta = {}
        for line in text.splitlines():
            if line.startswith("#") and "=" in line:
                key, _, value = line[1:].strip().partition("=")
                meta[key.strip()] = value.strip()
        h = parse(text)
        count = len(enumerate_oracle(h))
        stored = int(meta["mt_count"])
        if count != stored:
            raise ValueError(f"record claims {stored} minimal transversals, oracle finds {count}")
        return cls(serialize(h), count, meta["strategy"], int(meta["seed"]),
                   int(meta.get("iterations", 0)))


def baseline(part_sizes) -> int:
    """Count of the largest disjoint 3-edge matching that fits the parts."""
    return 3 ** min(part_sizes)


def _triples(sizes):
    p, q, r = sizes
    return list(itertools.product(range(p), range(q), range(r)))


def _build(sizes, triples) -> TripartiteHypergraph:
    part_of = {f"{i}_{j}": i for i, n in enumerate(sizes) for j in range(n)}
    edges = [{f"0_{x}", f"1_{y}", f"2_{z}"} for x, y, z in triples]
    return TripartiteHypergraph.from_edges(edges, part_of)


class _Evaluator:
    def __init__(self, sizes):
        self.sizes = sizes
        self.cache = {}

    def __call__(self, chosen: frozenset) -> tuple[int, str]:
        if chosen not in self.cache:
            h = _build(self.sizes, sorted(chosen))
            self.cache[chosen] = (len(enumerate_oracle(h)), serialize(h))
        return self.cache[chosen]


def _better(a, b):
    """Higher count wins; equal counts go to the smaller canonical text."""
    return b is None or a[0] > b[0] or (a[0] == b[0] and a[1] < b[1])


def _exhaustive(cfg, evaluate):
    grid = _triples(cfg.part_sizes)
    best, used = None, 0
    for mask in range(1 << len(grid)):
        chosen = frozenset(t for i, t in enumerate(grid) if mask >> i & 1)
        cand = evaluate(chosen)
        used += 1
        if _better(cand, best):
            best = cand
    return best, used


def _random_set(rng, grid, density):
    return frozenset(t for t in grid if rng.random() < density)


def _deadline(cfg):
    if cfg.time_budget is None:
        return None
    return time.monotonic() + cfg.time_budget


def _expired(deadline):
    return deadline is not None and time.monotonic() > deadline


def _random(cfg, evaluate):
    rng = random.Random(cfg.seed)
    grid = _triples(cfg.part_sizes)
    deadline = _deadline(cfg)
    best = None
    for i in range(cfg.iterations):
        if _expired(deadline):
            return best, i
        cand = evaluate(_random_set(rng, grid, DENSITIES[i % len(DENSITIES)]))
        if _better(cand, best):
            best = cand
    return best, cfg.iterations


def _hillclimb(cfg, evaluate):
    rng = random.Random(cfg.seed)
    grid = _triples(cfg.part_sizes)
    current = _random_set(rng, grid, 0.5)
    score = evaluate(current)
    best = score
    plateau = 0
    deadline = _deadline(cfg)
    for i in range(cfg.iterations):
        if _expired(deadline):
            return best, i
        move = rng.choice(grid)
        nxt = current ^ {move}
        cand = evaluate(nxt)
        if cand[0] > score[0]:
            current, score, plateau = nxt, cand, 0
        elif cand[0] == score[0]:
            current, score = nxt, cand
            plateau += 1
        if _better(score, best):
            best = score
        if plateau >= PLATEAU_CAP:
            current = _random_set(rng, grid, rng.choice(DENSITIES))
            score, plateau = evaluate(current), 0
    return best, cfg.iterations


def read_catalog(path) -> list[list[list[int]]]:
    """Latin squares as blank-line separated blocks of whitespace-separated rows."""
    blocks, rows = [], []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line.startswith("#"):
            continue
        if not line:
            if rows:
                blocks.append(rows)
                rows = []
            continue
        rows.append([int(x) for x in line.split()])
    if rows:
        blocks.append(rows)
    return blocks


def _latin(cfg, evaluate):
    k = min(cfg.part_sizes)
    if k < 2:
        raise ValueError("latin strategy needs every part of size >= 2")
    squares = [[[(i + j) % k for j in range(k)] for i in range(k)]]
    if cfg.catalog:
        squares += read_catalog(cfg.catalog)
    best = None
    for square in squares:
        columns = [sorted(col) for col in zip(*square)]
        if (len(square) != k or any(sorted(row) != list(range(k)) for row in square)
                or any(col != list(range(k)) for col in columns)):
            raise ValueError(f"catalog entry is not a {k}x{k} Latin square: {square}")
        chosen = frozenset((i, j, square[i][j]) for i in range(k) for j in range(k))
        cand = evaluate(chosen)
        if _better(cand, best):
            best = cand
    return best, len(squares)


def search(config: SearchConfig) -> SearchRecord:
    evaluate = _Evaluator(config.part_sizes)
    runner = {
        "exhaustive": _exhaustive,
        "random": _random,
        "hillclimb": _hillclimb,
        "latin": _latin,
    }[config.strategy]
    (count, text), used = runner(config, evaluate)
    limit = upper_bound(sum(config.part_sizes))
    anomaly = count > limit
    if anomaly:
        log.warning("mt_count %d exceeds the upper bound %.10g: likely a bug", count, limit)
    return SearchRecord(text, count, config.strategy, config.seed, used, anomaly)


def save_record(record: SearchRecord, directory) -> Path:
    """Append ``record`` to a records directory without touching existing files."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    text = record.to_text()
    stem = f"{record.strategy}-seed{record.seed}-mt{record.mt_count}"
    for n in itertools.count():
        path = directory / (f"{stem}.h3" if n == 0 else f"{stem}-{n}.h3")
        if path.exists():
            if path.read_text(encoding="utf-8") == text:
                return path
            continue
        path.write_text(text, encoding="utf-8")
        return path
