"""
Published labelling of the two-component link 8_8^2 and small fixtures shared by the tests.
"""

import os

from src.equations import Polynomial, PrintedRegion, ReferenceRegion

DATASETS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "datasets")

FIGURE_EIGHT_PD = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"
TREFOIL_PD = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"
KINKED_PD = "X[1,4,2,5] X[3,8,4,1] X[5,2,6,3] X[7,6,8,7]"

FIGURE_EIGHT_VOLUME = 2.0298832128193
REGULAR_TETRAHEDRON_VOLUME = 1.0149416064096536


def _t(sign, name=None, shift=0):
    return (sign, name, shift)


# side translations and corner labels of the eight regions, in walk order
REFERENCE_8_8_2 = (
    ReferenceRegion((_t(-1, None, 1), _t(1, "u6"), _t(1, "u4")), ("w1", "w6", "w1")),
    ReferenceRegion((_t(-1, "u4", 1), _t(1, "u5", 1), _t(1, "u3", 1)), ("w1", "w5", "w6")),
    ReferenceRegion((_t(1, "u12", 1), _t(1, "u2", 1), _t(1, "u11", 1)), ("w5", "w4", "w3")),
    ReferenceRegion((_t(1, "u3"), _t(1, "u1"), _t(-1, "u2")), ("w6", "w4", "w5")),
    ReferenceRegion((_t(1, "u10"), _t(1, "u9"), _t(-1, "u11")), ("w2", "w3", "w4")),
    ReferenceRegion((_t(-1, None, 1), _t(1, "u8", 1), _t(1, "u9", 1)), ("w2", "w3", "w2")),
    ReferenceRegion((_t(1, "u6", 1), _t(-1, "u7", 1), _t(1, None, 1), _t(-1, "u10", 1), _t(-1, "u1", 1)),
                    ("w1", "w2", "w2", "w4", "w6")),
    ReferenceRegion((_t(1, "u7"), _t(-1, None, 1), _t(1, "u5"), _t(-1, "u12"), _t(1, "u8")),
                    ("w1", "w1", "w5", "w3", "w2")),
)

# two-digit published values; u5 is printed as -0.85+0.78i, which w1 + (u4+1)(u5+1) = 0 rules out
DECIMALS_8_8_2 = {
    "w1": 0.37 - 0.52j, "w2": -0.37 - 0.52j, "w3": -0.13 + 0.39j,
    "w4": 0.19 + 0.34j, "w5": -0.19 + 0.34j, "w6": -0.13 - 0.39j,
    "u1": -0.08 + 0.63j, "u2": -0.5 + 0.36j, "u3": -0.58 + 0.27j, "u4": -0.37 + 0.52j,
    "u5": -0.94 + 0.78j, "u6": -0.37 + 0.52j, "u7": -0.5 + 1.9j, "u8": -0.63 + 0.52j,
    "u9": -0.63 + 0.52j, "u10": -0.05 + 0.78j, "u11": -0.42 + 0.27j, "u12": -0.92 + 0.63j,
}

# PD edge label -> published edge variable
EDGE_NAMES_8_8_2 = {1: "u1", 2: "u11", 3: "u8", 5: "u9", 6: "u12", 7: "u3", 8: "u6",
                    10: "u4", 11: "u2", 12: "u10", 14: "u7", 16: "u5"}

# PD crossing index -> published crossing variable
CROSSING_NAMES_8_8_2 = {0: "w4", 1: "w3", 2: "w2", 3: "w2", 4: "w5", 5: "w6", 6: "w1", 7: "w1"}


def published_values(system):
    """The published decimals in the variable order of a generated system."""
    values = [0j] * len(system.variables)
    for crossing, name in CROSSING_NAMES_8_8_2.items():
        values[system.allocation.crossing_var[crossing]] = DECIMALS_8_8_2[name]
    for label, name in EDGE_NAMES_8_8_2.items():
        values[system.allocation.edge_var[label]] = DECIMALS_8_8_2[name]
    return values


def published_mapping(system):
    """Published variable name -> generated variable name."""
    names = system.names
    mapping = {name: names[system.allocation.crossing_var[c]] for c, name in CROSSING_NAMES_8_8_2.items()}
    mapping.update({name: names[system.allocation.edge_var[label]] for label, name in EDGE_NAMES_8_8_2.items()})
    return mapping


PRINTED_NAMES = [f"w{i}" for i in range(1, 7)] + [f"u{i}" for i in range(1, 13)]
_p = {name: Polynomial.variable(i) for i, name in enumerate(PRINTED_NAMES)}
w1, w2, w3, w4, w5, w6 = (_p[f"w{i}"] for i in range(1, 7))
u1, u2, u3, u4, u5, u6, u7, u8, u9, u10, u11, u12 = (_p[f"u{i}"] for i in range(1, 13))

# the printed relations: six triangle groups, then the inner and outer 5-gon corner fractions
PRINTED_8_8_2 = (
    PrintedRegion(relations=(w1 + u6, w6 - u6 * u4, w1 + u4)),
    PrintedRegion(relations=(w1 + (u4 + 1) * (u5 + 1), w5 - (u5 + 1) * (u3 + 1), w6 + (u4 + 1) * (u3 + 1))),
    PrintedRegion(relations=(w5 - (u12 + 1) * (u2 + 1), w4 - (u2 + 1) * (u11 + 1), w3 - (u11 + 1) * (u12 + 1))),
    PrintedRegion(relations=(w6 - u3 * u1, w4 + u2 * u1, w5 + u2 * u3)),
    PrintedRegion(relations=(w2 - u10 * u9, w3 + u11 * u9, w4 + u10 * u11)),
    PrintedRegion(relations=(w2 + u8 + 1, w3 - (u8 + 1) * (u9 + 1), w2 + u9 + 1)),
    PrintedRegion(fractions=((-w1, (u6 + 1) * (u7 + 1)), (-w2, u7 + 1), (-w2, u10 + 1),
                             (w4, (u1 + 1) * (u10 + 1)), (-w6, (u1 + 1) * (u6 + 1)))),
    PrintedRegion(fractions=((-w1, u7), (w2, u7 * u8), (-w3, u12 * u8), (-w5, u12 * u5), (w1, -u5))),
)
