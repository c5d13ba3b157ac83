"""Bundled matrices, shifts and codes, addressable by name from the command line."""

from __future__ import annotations

from .exact_linalg import IntMatrix

# the 3x3 pair: B = A + 2I commutes with A, det B = 1
CUBIC_A = IntMatrix(((0, 1, 1), (2, 1, 0), (1, 0, -1)))
CUBIC_B = IntMatrix(((2, 1, 1), (2, 3, 0), (1, 0, 1)))
# commutant basis used when writing B as (1, 0, 1)
CUBIC_BASIS = (
    IntMatrix(((1, 1, 1), (2, 2, 0), (1, 0, 0))),     # I + A
    IntMatrix(((2, 2, 0), (4, 3, 2), (0, 1, 0))),     # -I + A + A^2
    IntMatrix.identity(3),
)

CAT = IntMatrix(((2, 1), (1, 1)))
FIBONACCI = IntMatrix(((1, 1), (1, 0)))

MATRICES = {
    "cubic-A": CUBIC_A,
    "cubic-B": CUBIC_B,
    "cat": CAT,
    "fibonacci": FIBONACCI,
}

TRANSITIONS = {
    "full2": ((1, 1), (1, 1)),
    "full3": ((1, 1, 1), (1, 1, 1), (1, 1, 1)),
    "golden": ((1, 1), (1, 0)),
    "cycle2": ((0, 1), (1, 0)),
}

CODES = {
    "identity": {"radius": 0, "rule": {"0": "0", "1": "1"}},
    "swap": {"radius": 0, "rule": {"0": "1", "1": "0"}},
    "shift": {"radius": 1, "rule": {w: w[2] for w in ("000", "001", "010", "011", "100", "101", "110", "111")}},
    "shift-inverse": {"radius": 1, "rule": {w: w[0] for w in ("000", "001", "010", "011", "100", "101", "110", "111")}},
}

MEASURES = {
    "bernoulli-half": {"pi": ["1/2", "1/2"], "P": [["1/2", "1/2"], ["1/2", "1/2"]]},
    "bernoulli-2-1": {"pi": ["2/3", "1/3"], "P": [["2/3", "1/3"], ["2/3", "1/3"]]},
}
