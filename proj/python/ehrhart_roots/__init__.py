"""Exact Ehrhart polynomials, delta-vectors and root locations for lattice polytopes.

Polynomials are coefficient lists in ascending order of powers, with
``fractions.Fraction`` entries. Delta-vectors are lists of ``int``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Sequence

from . import _core
from ._core import (
    ArithmeticError,
    EhrhartError,
    GeometryError,
    GraphError,
    SolverError,
)

__all__ = [
    "ArithmeticError",
    "EhrhartError",
    "GeometryError",
    "GraphError",
    "SolverError",
    "DEFAULT_SEED",
    "ehrhart_polynomial",
    "delta_vector",
    "ehrhart_from_delta",
    "roots",
    "certify_critical_line",
    "family_polytope",
    "family_ehrhart",
    "family_report",
    "polytope_report",
    "lemma_polynomial",
    "critical_line_roots",
    "symmetric_edge_polytope",
    "graph_report",
    "connected_graphs",
    "scan",
]

DEFAULT_SEED: int = _core.DEFAULT_SEED

Edges = Sequence[tuple[int, int]]


def _to_str(values: Iterable) -> list[str]:
    out = []
    for v in values:
        if isinstance(v, float):
            raise TypeError("floats are not accepted; use int, Fraction or a 'p/q' string")
        out.append(str(Fraction(v)))
    return out


def _to_frac(values: Iterable[str]) -> list[Fraction]:
    return [Fraction(v) for v in values]


def _vertices(vertices) -> list[list[int]]:
    return [[int(x) for x in v] for v in vertices]


def _report(raw: tuple[str, int]) -> dict:
    text, code = raw
    report = json.loads(text)
    report["exit_code"] = code
    return report


def ehrhart_polynomial(vertices, jobs: int = 1) -> list[Fraction]:
    """Ehrhart polynomial of the convex hull of integer ``vertices``."""
    return _to_frac(_core.ehrhart_polynomial(_vertices(vertices), jobs))


def delta_vector(coefficients, d: int) -> list[int]:
    """Delta-vector of a degree-``d`` Ehrhart polynomial."""
    return [int(x) for x in _core.delta_from_ehrhart(_to_str(coefficients), d)]


def ehrhart_from_delta(delta: Sequence[int]) -> list[Fraction]:
    return _to_frac(_core.ehrhart_from_delta([str(int(x)) for x in delta]))


def roots(coefficients, seed: int = DEFAULT_SEED) -> list[complex]:
    """All complex roots, sorted by real part then imaginary part."""
    return _core.find_roots(_to_str(coefficients), seed)


def certify_critical_line(coefficients, known_real_roots=()) -> dict:
    """Exact check that all roots other than ``known_real_roots`` lie on Re = -1/2 and are distinct."""
    cert = _core.certify_critical_line(_to_str(coefficients), _to_str(known_real_roots))
    cert["quotient"] = _to_frac(cert["quotient"])
    cert["even_part"] = _to_frac(cert["even_part"])
    return cert


def family_polytope(d: int, k: int) -> list[list[int]]:
    return _core.family_polytope(d, k)


def family_ehrhart(d: int, k: int) -> list[Fraction]:
    return _to_frac(_core.family_ehrhart(d, k))


def family_report(d: int, k: int, verify: bool = False, seed: int = DEFAULT_SEED, jobs: int = 1) -> dict:
    """Full root analysis of the family member (d, k), as the ``family`` CLI command reports it."""
    return _report(_core.family_report(d, k, verify, seed, jobs))


def polytope_report(vertices, verify: bool = False, seed: int = DEFAULT_SEED, jobs: int = 1) -> dict:
    return _report(_core.polytope_report(_vertices(vertices), verify, seed, jobs))


def lemma_polynomial(gammas) -> list[Fraction]:
    return _to_frac(_core.lemma_polynomial(_to_str(gammas)))


def critical_line_roots(gammas, tol: float = 1e-12) -> list[float]:
    """Imaginary parts of the roots -1/2 + bi, found by bisection."""
    return _core.critical_line_roots(_to_str(gammas), tol)


def symmetric_edge_polytope(n_vertices: int, edges: Edges) -> list[list[int]]:
    return _core.symmetric_edge_polytope(n_vertices, list(edges))


def graph_report(n_vertices: int, edges: Edges, verify: bool = False, seed: int = DEFAULT_SEED, jobs: int = 1) -> dict:
    return _report(_core.graph_report(n_vertices, list(edges), verify, seed, jobs))


def connected_graphs(n_vertices: int) -> list[list[tuple[int, int]]]:
    """One representative edge list per isomorphism class of connected graphs."""
    return [list(map(tuple, g)) for g in _core.connected_graphs(n_vertices)]


def scan(max_vertices: int, seed: int = DEFAULT_SEED, jobs: int = 0) -> tuple[list[dict], dict]:
    """Analyze every connected graph on 2..max_vertices vertices; returns (records, summary)."""
    text, _ = _core.scan(max_vertices, seed, jobs)
    lines = [json.loads(line) for line in text.splitlines() if line.strip()]
    return lines[:-1], lines[-1]["summary"]
