"""Regression values derived independently by tools/derive_oracles.py.

The oracle uses dense rational matrices and naive elimination, sharing no
code with the package; these numbers were frozen from its output.  Do not
edit by hand: rerun the oracle and paste its FROZEN dict if the corpus
changes.
"""

FROZEN = {
    "shuffle_2_1_count": 3,
    "hh": {
        "Q": [1, 0, 0, 0],
        "dualnum": [2, 1, 1, 1],
        "Qx3": [3, 2, 2, 2],
        "QZ2": [2, 0, 0, 0],
        "upper2": [2, 0, 0, 0],
        "m2var": [3, 3, 5, 8],
    },
    "hc": {
        "Q": [1, 0, 1, 0],
        "dualnum": [2, 0, 2, 0],
        "Qx3": [3, 0, 3, 0],
        "QZ2": [2, 0, 2, 0],
        "upper2": [2, 0, 2, 0],
        "m2var": [3, 1, 5, 4],
    },
    "hd": {
        "Q": [1, 0, 0, 0, 1],
        "dualnum": [2, 0, 0, 0, 2],
        "Qx3": [3, 0, 0, 0],
        "QZ2": [2, 0, 0, 0],
    },
    "hh_lambda": {
        "dualnum": {0: [2], 1: [1], 2: [1, 0], 3: [0, 1, 0]},
        "m2var": {0: [3], 1: [3], 2: [4, 1], 3: [1, 7, 0]},
    },
    "hc_lambda": {
        "dualnum": {0: [2], 1: [0, 0], 2: [0, 2, 0], 3: [0, 0, 0, 0]},
    },
    "omega": {
        "dualnum": [2, 1, 0, 0],
        "Qx3": [3, 2, 0, 0],
        "QZ2": [2, 0, 0, 0],
        "m2var": [3, 3, 1, 0],
    },
    "de_rham": {
        "dualnum": [1, 0, 0],
        "Qx3": [1, 0, 0],
        "QZ2": [2, 0, 0],
        "m2var": [1, 0, 0],
    },
    "hc0_M2Q": 1,
    "trace_rank": 1,
    "hh_M2Q_low": [1, 0, 0],
}
