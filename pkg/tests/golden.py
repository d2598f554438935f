"""Golden classification rows shared by the unit and acceptance tests.

Each row: label, q, (a, b, c) as exact spirals, expected tag name, family,
scalar group (kind, n) or None, and whether the row is symmetry-derived.
"""

from conftest import sp

H = "1/2"

THEOREM_ROWS = [
    ("C1 generic", 0.3, (sp("0.3"), sp("0.7"), sp("0.4")), "C1", "GL2", None, False),
    ("C1 abq/c in q^Z", 0.3, (sp("0.2"), sp("0.3"), sp("1.5")), "C1", "SL2_times_scalars",
     ("FiniteCyclic", 4), False),
    ("C2 generic", 0.3, (sp("0.3"), sp("0.3", H), sp("0.5")), "C2", "GL2", None, False),
    ("C2 abq/c in q^Z", 0.3, (sp("0.25"), sp("0.25", H), sp("1.5", H)), "C2", "SL2_times_scalars",
     ("FiniteCyclic", 4), False),
    ("C3", 0.3, (sp("0.3"), sp("1.3", H), sp(1, H)), "C3", "TorusWithSwap", None, False),
    ("C4 b/c generic", 0.4, (sp(2), sp("0.3"), sp("0.9")), "C4", "LowerTriangular_full", None, False),
    ("C4 c/b in q^N*", 0.4, (sp(2), sp("0.3"), sp("1.3")), "C4", "LowerTriangular_scalars",
     ("FiniteCyclic", 10), False),
    ("C4 bq/c in q^N*", 0.4, (sp(2), sp("0.3"), sp("0.3")), "C4", "Diagonal_1_scalars",
     ("FiniteCyclic", 10), False),
    ("C5 b/c generic", 0.4, (sp(-1), sp("0.3"), sp("0.9")), "C5", "UpperTriangular_full", None, False),
    ("C5 bq/c in q^N*", 0.4, (sp(-1), sp("0.3"), sp("0.3")), "C5", "UpperTriangular_scalars",
     ("FiniteCyclic", 10), False),
    ("L1", 0.3, (sp("0.3"), sp("0.8"), sp(1)), "L1", "GL2", None, False),
    ("L2", 0.3, (sp("0.3"), sp(2), sp(1)), "L2", "UpperTriangular_Cstar_one", None, False),
    ("M1", 0.3, (sp("0.5"), sp("0.5"), sp(1)), "M1", "SL2", None, False),
    ("M2", 0.3, (sp(2), sp(2), sp(1)), "M2", "UnipotentUpper", None, False),
]

SYMMETRY_ROWS = [
    ("C4 c in bq^-1 q^-N", 0.4, (sp(2), sp("0.3"), sp("-0.7")), "C4", "Diagonal_1_scalars",
     ("FiniteCyclic", 10), False),
    ("C5 c/b in q^N*", 0.4, (sp(-1), sp("0.3"), sp("1.3")), "C5", "Diagonal_1_scalars",
     ("FiniteCyclic", 10), False),
    ("L3", 0.3, (sp("0.3"), sp(-1), sp(1)), "L3", "UpperTriangular_full", None, False),
    ("L1 ab in q^Z", 0.3, (sp("0.3"), sp("0.7"), sp(1)), "L1", "SL2", None, False),
    ("b in q^Z", 0.3, (sp("0.3"), sp(2), sp("0.4")), "SYM", "LowerTriangular_full", None, True),
    ("a/c in q^N", 0.3, (sp("2.3"), sp("0.7"), sp("0.3")), "SYM",
     "UpperTriangular_Cstar_scalars", ("FiniteCyclic", 10), True),
    ("a/c in q^-N*", 0.3, (sp("0.3"), sp("0.7"), sp("2.3")), "SYM",
     "LowerTriangular_Cstar_scalars", ("FiniteCyclic", 10), True),
    ("C3 half variant", 0.3, (sp("0.3"), sp("0.8"), sp("1.5")), "C3", "TorusWithSwap", None, True),
    ("L_sym", 0.3, (sp(2), sp("0.3"), sp(1)), "L_sym", "UpperTriangular_Cstar_one", None, True),
    ("a=b generic c", 0.3, (sp("0.4"), sp("0.4"), sp("0.3")), "L_cnotq", "GL2", None, True),
    ("a=b, a^2q/c in q^Z", 0.3, (sp("0.4"), sp("0.4"), sp("1.8")), "L_cnotq", "SL2_times_scalars",
     ("FiniteCyclic", 10), True),
    ("a=b in q^N*", 0.3, (sp(2), sp(2), sp("0.4")), "L_cnotq", "LowerTriangular_full", None, True),
    ("a=b in q^-N", 0.3, (sp(-1), sp(-1), sp("0.4")), "L_cnotq", "UpperTriangular_full", None, True),
    ("a=b, a/c in q^N", 0.3, (sp("1.4"), sp("1.4"), sp("0.4")), "L_cnotq",
     "UpperTriangular_Cstar_scalars", ("FiniteCyclic", 5), True),
    ("a=b, a/c in q^-N*", 0.3, (sp("0.4"), sp("0.4"), sp("2.4")), "L_cnotq",
     "LowerTriangular_Cstar_scalars", ("FiniteCyclic", 5), True),
]
