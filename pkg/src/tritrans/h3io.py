"""Reading and writing the line-oriented H3 hypergraph format.

::

    # comment
    part 0 x1 x2
    part 1 y1
    part 2 z1
    edge x1 y1 z1

Canonical output lists ``part`` lines first (ascending part, sorted names),
then ``edge`` lines ordered by their sorted member names.
"""

from __future__ import annotations

from .hypergraph import TripartiteHypergraph


class H3ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def parse(text: str, s_part: int | None = None) -> TripartiteHypergraph:
    parts = [[], [], []]
    part_of = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        kind, args = tokens[0], tokens[1:]
        if kind == "part":
            if not args or args[0] not in ("0", "1", "2"):
                raise H3ParseError(lineno, "expected 'part <0|1|2> <name>...'")
            p = int(args[0])
            if len(args) < 2:
                raise H3ParseError(lineno, "part line declares no vertices")
            for name in args[1:]:
                if name in part_of:
                    raise H3ParseError(
                        lineno, f"vertex {name!r} already declared in part {part_of[name]}"
                    )
                part_of[name] = p
                parts[p].append(name)
        elif kind == "edge":
            if not 1 <= len(args) <= 3:
                raise H3ParseError(lineno, f"edge needs 1 to 3 vertices, got {len(args)}")
            if len(set(args)) != len(args):
                raise H3ParseError(lineno, "edge repeats a vertex")
            for name in args:
                if name not in part_of:
                    raise H3ParseError(lineno, f"vertex {name!r} used before declaration")
            if len({part_of[v] for v in args}) != len(args):
                raise H3ParseError(lineno, "edge has two vertices in one part")
            edges.append(frozenset(args))
        else:
            raise H3ParseError(lineno, f"unknown directive {kind!r}")
    return TripartiteHypergraph(parts, edges, s_part)


def serialize(h: TripartiteHypergraph) -> str:
    lines = []
    for i, part in enumerate(h.parts):
        if part:
            lines.append(" ".join(["part", str(i), *sorted(part)]))
    for e in h.canonical_edges:
        lines.append(" ".join(["edge", *sorted(e)]))
    return "".join(line + "\n" for line in lines)


def read(path) -> TripartiteHypergraph:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def write(h: TripartiteHypergraph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(h))
