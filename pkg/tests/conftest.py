import itertools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tritrans import TripartiteHypergraph, gen_h15  # noqa: E402


def brute_minimal_transversals(h):
    """Definition-level scan: transversal, and no strict subset is one."""
    names = sorted(h.vertices)

    def hits_all(t):
        return all(e & t for e in h.edges)

    found = set()
    for r in range(len(names) + 1):
        for combo in itertools.combinations(names, r):
            t = frozenset(combo)
            if hits_all(t) and not any(
                hits_all(frozenset(sub))
                for k in range(len(t))
                for sub in itertools.combinations(sorted(t), k)
            ):
                found.add(t)
    return found


def make(edges, parts, s_part=None):
    """Hypergraph from edge strings like "ab" over single-letter names."""
    part_of = {v: i for i, p in enumerate(parts) for v in p}
    return TripartiteHypergraph.from_edges([set(e) for e in edges], part_of, s_part)


@pytest.fixture(scope="session")
def h15():
    return gen_h15()


ACCEPTANCE_RESULTS = {}


def record_criterion(number, title, ok, detail=""):
    ACCEPTANCE_RESULTS[number] = (title, ok, detail)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, ok, detail = ACCEPTANCE_RESULTS[number]
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] {number:2d}. {title}: {detail}")
