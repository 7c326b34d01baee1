"""Shared graph builders and the acceptance-criteria reporter."""
from __future__ import annotations

from vectorcolor import Graph, KneserSpec, generate_kneser

_acceptance_lines: list[str] = []


def record_acceptance_line(line: str) -> None:
    """Collect a criterion pass/fail line for the terminal summary (so the
    lines show up even when pytest captures stdout)."""
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


def complete_graph(q: int) -> Graph:
    return Graph(q, [(i, j) for i in range(q) for j in range(i + 1, q)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(n: int) -> Graph:
    """K_{1,n-1}: vertex 0 is the center."""
    return Graph(n, [(0, i) for i in range(1, n)])


def petersen_graph() -> Graph:
    return generate_kneser(KneserSpec(5, 2, 1))
