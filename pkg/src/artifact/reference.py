"""Worked reference instances: 1/19(1,11) and a three-branch star with d = 6."""

from __future__ import annotations

from .graph import PResolution, chain_graph
from .incidence import IncidenceMatrix

N19, Q19 = 19, 11
CHAIN_19_11 = [2, 4, 3]
DUAL_19_11 = [3, 2, 3, 2]
K_19_11 = {(1, 2, 2, 1), (3, 1, 2, 2), (2, 1, 3, 1)}

# integrated NPP matrices in the documented triangle order
NPP_19_11 = {
    (1, 2, 2, 1): [[1, 0, 0, 1, 1, 0, 0], [0, 1, 0, 1, 1, 0, 0], [0, 0, 1, 1, 1, 1, 0], [0, 0, 0, 1, 1, 1, 1]],
    (3, 1, 2, 2): [[1, 1, 1, 0, 0], [0, 1, 1, 1, 0], [1, 0, 1, 1, 1], [1, 1, 0, 1, 1]],
    (2, 1, 3, 1): [[1, 0, 1, 1, 0, 0], [0, 0, 1, 1, 1, 0], [1, 1, 0, 1, 1, 0], [1, 0, 0, 1, 1, 1]],
}

# matrices produced by the MMP on the three P-resolutions
MMP_19_11 = {
    "minimal": [[1, 1, 1, 0, 0, 0, 0], [1, 1, 0, 1, 0, 0, 0], [1, 1, 0, 0, 1, 1, 0], [1, 1, 0, 0, 1, 0, 1]],
    "[4]": [[1, 1, 1, 0, 0, 0], [1, 1, 0, 1, 0, 0], [1, 0, 1, 1, 1, 0], [1, 0, 1, 1, 0, 1]],
    "[2,5]+[4]": [[1, 1, 1, 0, 0], [1, 1, 0, 1, 0], [1, 0, 1, 1, 1], [0, 1, 1, 1, 1]],
}

TRIANGULATION_KS = [(1, 2, 2, 1), (3, 1, 2, 2), (1, 3, 1, 2), (2, 1, 3, 1), (2, 2, 1, 3)]


def presolutions_19_11() -> dict[str, PResolution]:
    g = chain_graph(CHAIN_19_11)
    ident = {v: v for v in g.weights}
    g3, e = g.blow_up_edge("A2", "A3", "E1")
    return {
        "minimal": PResolution(g, [], dict(ident), "minimal"),
        "[4]": PResolution(g, [("A2",)], dict(ident), "[4]"),
        "[2,5]+[4]": PResolution(g3, [("A1", "A2"), ("A3",)], {**ident, e: None}, "[2,5]+[4]"),
    }


STAR_D = 6
STAR_FRACTIONS = [(3, 5), (9, 13), (7, 10)]
STAR_BRANCHES = [[2, 3], [2, 2, 5], [2, 2, 4]]
STAR_ROWS = ["C1,1", "C1,2", "C2,1", "C2,2", "C2,3", "C2,4", "C3,1", "C3,2", "C3,3", "D1", "D2"]


def _grid(lines: list[str]) -> list[list[int]]:
    return [[0 if x == "." else int(x) for x in ln.split()] for ln in lines]


CASE_A = _grid([
    "1 1 1 1 0 . . . . . . . . . . . .",
    "1 1 1 0 1 . . . . . . . . . . . .",
    "1 . . . . 1 1 1 1 0 . . . . . . .",
    "1 . . . . 1 1 1 0 1 . . . . . . .",
    "1 . . . . 1 1 0 1 1 . . . . . . .",
    "1 . . . . 1 0 1 1 1 . . . . . . .",
    "1 . . . . . . . . . 1 1 1 1 0 . .",
    "1 . . . . . . . . . 1 1 1 0 1 . .",
    "1 . . . . . . . . . 1 1 0 1 1 . .",
    "1 . . . . . . . . . . . . . . 1 0",
    "1 . . . . . . . . . . . . . . 0 1",
])

CASE_A_BLOCKS = {
    1: [[1, 1, 1, 0], [1, 1, 0, 1]],
    2: [[1, 1, 1, 1, 0], [1, 1, 1, 0, 1], [1, 1, 0, 1, 1], [1, 0, 1, 1, 1]],
    3: [[1, 1, 1, 1, 0], [1, 1, 1, 0, 1], [1, 1, 0, 1, 1]],
}
# marked weight sequences expected on each branch (listed from the centre outwards)
CASE_A_MARKS = [[2, 5], [4]]

CASE_B = _grid([
    ". 1 1 1 1 0 . . . . . . .",
    ". 1 1 1 0 1 . . . . . . .",
    "1 . . 1 . . 1 1 1 0 . . .",
    "1 . . 1 . . 1 1 0 1 . . .",
    "1 . . 1 . . 1 0 1 1 . . .",
    "1 . . 1 . . 0 1 1 1 . . .",
    "1 . . . 1 1 . . . . 1 1 0",
    "1 . . . 1 1 . . . . 1 0 1",
    "1 . . . 1 1 . . . . 0 1 1",
    "1 1 0 . . . . . . . . . .",
    "1 0 1 . . . . . . . . . .",
])
CASE_B_MARKS = [[3, 2, 6, 2], [4], [2, 5]]

# the d = t+2 instance with four [2] branches
T2_D = 6
T2_BRANCHES = [[2], [2], [2], [2]]
T2_ROWS = ["C1,1", "C2,1", "C3,1", "C4,1", "D1"]
T2_UNBALANCED = [
    [1, 0, 1, 1, 0, 0],
    [1, 0, 0, 0, 1, 1],
    [0, 1, 1, 0, 1, 0],
    [0, 1, 0, 1, 0, 0],
    [1, 1, 0, 0, 0, 1],
]
# this version cannot satisfy the equations (row C4 has two entries);
# moving the last entry of D1 onto C4 gives the valid matrix intended
T2_CORRECTED = [
    [1, 0, 1, 1, 0, 0],
    [1, 0, 0, 0, 1, 1],
    [0, 1, 1, 0, 1, 0],
    [0, 1, 0, 1, 0, 1],
    [1, 1, 0, 0, 0, 0],
]


def star_matrix(data: list[list[int]], rows: list[str] | None = None) -> IncidenceMatrix:
    return IncidenceMatrix.from_rows(rows or STAR_ROWS, data, "reference")
