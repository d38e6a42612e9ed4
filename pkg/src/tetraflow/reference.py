"""Checked-in reference tables and the conventions tying them together.

Four data files accompany the package:

* ``trivector_lhs_39.txt``    -- the tri-vector [[P, Q_{1:6}(P)]] at
  a = 1/4, b = 3/2: 39 graphs on 3 sinks and 5 internal vertices.
* ``skew_orbits_9.txt``       -- the same tri-vector collected into 9
  skew-symmetric orbit representatives.
* ``leibniz_solution_27.txt`` -- the factorizing operator as 27 Leibniz
  graphs (placeholder encoding).
* ``expansion_201.txt``       -- its raw expansion into 201 Kontsevich
  graph terms.

The orbit table and the solution table are normalized PRESENTATION_SCALE
times the reduced tri-vector: summing (c/PRESENTATION_SCALE) * alternation
over the orbit rows, or expanding the solution rows with coefficients
divided by PRESENTATION_SCALE, reproduces the 39-graph table exactly.
"""

from __future__ import annotations

from fractions import Fraction
from importlib import resources

from .graphs import GraphSum, read_graph_lines, read_graph_sum
from .leibniz import LeibnizGraph, read_leibniz_file

PRESENTATION_SCALE = 4


def _read(name: str) -> str:
    return resources.files("tetraflow").joinpath("data", name).read_text()


def lhs_table_text() -> str:
    return _read("trivector_lhs_39.txt")


def lhs_table() -> GraphSum:
    return read_graph_sum(_read("trivector_lhs_39.txt"))


def lhs_table_rows():
    return read_graph_lines(_read("trivector_lhs_39.txt"))


def skew_orbit_rows():
    return read_graph_lines(_read("skew_orbits_9.txt"))


def solution_rows_printed() -> list[tuple[LeibnizGraph, Fraction]]:
    """The 27 Leibniz graphs with the coefficients of the reference table."""
    return read_leibniz_file(_read("leibniz_solution_27.txt"), placeholder=True)


def solution_rows() -> list[tuple[LeibnizGraph, Fraction]]:
    """The factorizing operator in artifact units: expanding these pairs
    reduces to the 39-graph tri-vector table exactly."""
    return [(L, c / PRESENTATION_SCALE) for L, c in solution_rows_printed()]


def expansion_rows():
    return read_graph_lines(_read("expansion_201.txt"))
