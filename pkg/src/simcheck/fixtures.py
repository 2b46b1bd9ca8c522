"""Reference instances used by the tests, the acceptance suite and the CLI data files."""

from fractions import Fraction
import math

import numpy as np

from .pmf import JointPMF, joint_from_marginals

# [x][y][z], in hundredths
_EXAMPLE1_HUNDREDTHS = [
    [[6, 9, 15], [36, 9, 0]],
    [[4, 6, 10], [4, 1, 0]],
]

EXAMPLE1_A = np.array([[0.1, 0.15, 0.25], [0.4, 0.1, 0.0]])
EXAMPLE1_C = np.array([[0.3, 0.2], [0.45, 0.05]])
EXAMPLE1_PINV_C = np.array([0.9762, 0.0238, 0.5952, 0.4048, 0.4524, 0.5476])
EXAMPLE1_CHANNEL = np.array([[1.0, 0.0], [0.5, 0.5], [0.5, 0.5]])
EXAMPLE1_COST = np.array([2.0, 2.0, 2.0, 1.0, 1.0, 1.0])
# as printed; the (2, 1) entry reads 0.5962 where the pseudoinverse solution has 0.5952
EXAMPLE1_ALT_CHANNEL = np.array([[0.9762, 0.0238], [0.5962, 0.4048], [0.4524, 0.5476]])
EXAMPLE1_A_BIG = np.array([
    [0.1, 0, 0.15, 0, 0.25, 0],
    [0, 0.1, 0, 0.15, 0, 0.25],
    [0.4, 0, 0.1, 0, 0, 0],
    [0, 0.4, 0, 0.1, 0, 0],
    [1, 1, 0, 0, 0, 0],
    [0, 0, 1, 1, 0, 0],
    [0, 0, 0, 0, 1, 1],
])
EXAMPLE1_C_VEC = np.array([0.3, 0.2, 0.45, 0.05, 1, 1, 1])

_S3 = math.sqrt(3.0)
EXAMPLE2_M_ZY = [(0.3, (0.0, 0.0)), (0.3, (0.5, 0.0)), (0.3, (0.25, _S3 / 4)), (0.1, (0.25, _S3 / 12))]
EXAMPLE2_M_XY = [(0.3, (0.25, 0.0)), (0.3, (0.375, _S3 / 8)), (0.3, (0.125, _S3 / 8)),
                 (0.05, (0.24, _S3 / 12)), (0.05, (0.26, _S3 / 12))]
EXAMPLE2_A_PRINTED = np.array([
    [0, 0.1500, 0.0750, 0.0250],
    [0, 0, 0.1299, 0.0144],
    [0.3000, 0.1500, 0.0951, 0.0606],
])
EXAMPLE2_C_PRINTED = np.array([
    [0.0750, 0.1125, 0.0375, 0.0120, 0.0130],
    [0, 0.0650, 0.0650, 0.0072, 0.0072],
    [0.2250, 0.1225, 0.1975, 0.0308, 0.0298],
])

EXAMPLE3_A_PRINTED = np.array([
    [0.0315, 0.0203, 0.0056, 0.0690, 0.0295, 0.0720],
    [0.0169, 0.0779, 0.1003, 0.0377, 0.0568, 0.0278],
    [0.0673, 0.0555, 0.0133, 0.0352, 0.0085, 0.1113],
    [0.0446, 0.0117, 0.0421, 0.0085, 0.0260, 0.0307],
])
EXAMPLE3_C_PRINTED = np.array([
    [0.0464, 0.0335, 0.0502, 0.0979],
    [0.0995, 0.0962, 0.0632, 0.0585],
    [0.0535, 0.0492, 0.0922, 0.0962],
    [0.0609, 0.0392, 0.0300, 0.0335],
])
EXAMPLE3_CHANNEL_PRINTED = np.array([
    [0.4979, 0.1504, 0.2038, 0.1479],
    [0.0148, 0.3751, 0.5618, 0.0483],
    [0.5210, 0.4391, 0.0254, 0.0144],
    [0.1302, 0.0917, 0.0301, 0.7481],
    [0.5638, 0.2674, 0.0161, 0.1527],
    [0.0261, 0.0622, 0.4110, 0.5006],
])


def example1_pmf():
    table = [[[Fraction(v, 100) for v in row] for row in plane] for plane in _EXAMPLE1_HUNDREDTHS]
    return JointPMF.from_exact(table, x_labels=("x1", "x2"), y_labels=("y1", "y2"),
                               z_labels=("z1", "z2", "z3"))


def matrix_from_mass_description(entries):
    """Joint PMF matrix (|V| x |U|) from ``[(P_U(u), (P_V|U(v_1|u), ..., P_V|U(v_{k-1}|u))), ...]``.

    The last conditional probability of each column is implied by normalization.
    """
    columns = []
    for weight, conditional in entries:
        cond = list(conditional)
        cond.append(1.0 - sum(cond))
        columns.append(weight * np.array(cond))
    return np.column_stack(columns)


def example2_matrices():
    """``(A, C)`` computed exactly from the mass descriptions."""
    return matrix_from_mass_description(EXAMPLE2_M_ZY), matrix_from_mass_description(EXAMPLE2_M_XY)


def match_row_sums(a, c):
    """Rescale each row of ``c`` so that its sum equals the matching row sum of ``a``.

    Repairs matrices that were rounded independently before publication.
    """
    a = np.asarray(a, dtype=float)
    c = np.asarray(c, dtype=float)
    return c * (a.sum(axis=1) / c.sum(axis=1))[:, None]


def example3_matrices():
    """Printed ``A`` with the printed ``C`` rescaled to share ``A``'s row sums."""
    return EXAMPLE3_A_PRINTED.copy(), match_row_sums(EXAMPLE3_A_PRINTED, EXAMPLE3_C_PRINTED)


def example2_pmf():
    return joint_from_marginals(*example2_matrices())


def example3_pmf():
    return joint_from_marginals(*example3_matrices())


def erasure_pmf(alpha, gamma):
    """Binary symmetric pair (X, Y) with crossover ``alpha``; Z = (X, Y) w.p. ``gamma``, else erased.

    Z symbols are ordered (x1, y1), (x2, y1), (x1, y2), (x2, y2), erasure.
    Accepts floats or ``Fraction``s; fractions are kept exact.
    """
    alpha, gamma = Fraction(alpha), Fraction(gamma)
    pxy = [[(1 - alpha) / 2, alpha / 2], [alpha / 2, (1 - alpha) / 2]]
    z_of = {(0, 0): 0, (1, 0): 1, (0, 1): 2, (1, 1): 3}
    table = [[[Fraction(0)] * 5 for _ in range(2)] for _ in range(2)]
    for x in range(2):
        for y in range(2):
            table[x][y][z_of[(x, y)]] = gamma * pxy[x][y]
            table[x][y][4] = (1 - gamma) * pxy[x][y]
    return JointPMF.from_exact(table, x_labels=("x1", "x2"), y_labels=("y1", "y2"),
                               z_labels=("x1y1", "x2y1", "x1y2", "x2y2", "erased"))
