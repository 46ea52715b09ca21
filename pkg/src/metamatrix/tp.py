"""Exact total-positivity certification and the triangular factorization of
the type-B tables.

A matrix is totally positive when every minor of every size is strictly
positive.  Two certifiers are provided: the definitional all-minors scan and
the Fekete criterion (positivity of all minors on consecutive row and column
windows implies strict total positivity); both evaluate minors exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .exactlinear import (
    Matrix,
    _bareiss_int,
    bareiss_det,
    invert,
    invert_lower_triangular,
    pascal_matrix,
    vandermonde_half_nodes,
)
from .typeb import L_matrix, scm_table

ALL_MINORS_SIZE_CAP = 12


@dataclass(frozen=True)
class MinorWitness:
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    minor: Fraction


@dataclass(frozen=True)
class TPCertificate:
    verdict: str  # "totally-positive" | "not-totally-positive"
    method: str  # "all-minors" | "fekete"
    minors_checked: int
    witness: MinorWitness | None

    @property
    def is_totally_positive(self) -> bool:
        return self.verdict == "totally-positive"


def _minor_evaluator(a: Matrix):
    """Fast exact minor evaluation; integer fast path when possible."""
    try:
        grid = a.to_int_rows()
    except ValueError:
        grid = None

    if grid is not None:

        def minor(rows, cols) -> Fraction:
            sub = [[grid[i][j] for j in cols] for i in rows]
            return Fraction(_bareiss_int(sub))

    else:

        def minor(rows, cols) -> Fraction:
            return bareiss_det(a.submatrix(rows, cols))

    return minor


def _certify(a: Matrix, method: str, index_sets) -> TPCertificate:
    minor = _minor_evaluator(a)
    checked = 0
    for rows, cols in index_sets:
        checked += 1
        value = minor(rows, cols)
        if value <= 0:
            return TPCertificate(
                verdict="not-totally-positive",
                method=method,
                minors_checked=checked,
                witness=MinorWitness(tuple(rows), tuple(cols), value),
            )
    return TPCertificate(
        verdict="totally-positive", method=method, minors_checked=checked, witness=None
    )


def all_minors_positive(a: Matrix) -> TPCertificate:
    """Definitional check: every minor of every size, lexicographic order."""
    if not a.is_square:
        raise ValueError("total positivity is defined for square matrices here")
    n = a.rows
    if n > ALL_MINORS_SIZE_CAP:
        raise ValueError(
            f"all-minors check capped at size {ALL_MINORS_SIZE_CAP}; use fekete_check"
        )

    def index_sets():
        for k in range(1, n + 1):
            for rows in combinations(range(n), k):
                for cols in combinations(range(n), k):
                    yield rows, cols

    return _certify(a, "all-minors", index_sets())


def fekete_check(a: Matrix) -> TPCertificate:
    """Fekete criterion: minors on consecutive rows and consecutive columns.

    A totally-positive verdict here implies the all-minors verdict.
    """
    if not a.is_square:
        raise ValueError("total positivity is defined for square matrices here")
    n = a.rows

    def index_sets():
        for k in range(1, n + 1):
            for i in range(n - k + 1):
                for j in range(n - k + 1):
                    yield tuple(range(i, i + k)), tuple(range(j, j + k))

    return _certify(a, "fekete", index_sets())


@dataclass(frozen=True)
class DecompositionReport:
    upper_triangular: bool
    diagonal: tuple[Fraction, ...]
    diagonal_positive: bool
    reconstructs: bool

    @property
    def ok(self) -> bool:
        return self.upper_triangular and self.diagonal_positive and self.reconstructs


def gauss_decomposition_typeb(n: int) -> tuple[Matrix, Matrix, DecompositionReport]:
    """Factor the signed-contingency table as Q * D * Q^t with Q = P^{-1} * V
    upper triangular and D positive diagonal.

    Any failed structural assertion is a fatal defect and raises.
    """
    if n < 1:
        raise ValueError("n must be positive")
    p = pascal_matrix(n)
    v = vandermonde_half_nodes(n)
    q = invert_lower_triangular(p) * v
    l_mat = L_matrix(n)
    v_inv = invert(v)
    d = v_inv * l_mat * v_inv.transpose()

    upper = q.is_upper_triangular()
    diagonal = d.is_diagonal()
    diag = tuple(d[i, i] for i in range(n + 1))
    positive = all(x > 0 for x in diag)
    reconstructs = q * d * q.transpose() == scm_table(n)
    report = DecompositionReport(
        upper_triangular=upper,
        diagonal=diag,
        diagonal_positive=positive,
        reconstructs=reconstructs,
    )
    if not (upper and diagonal and positive and reconstructs):
        raise AssertionError(f"type-B factorization failed structurally: {report}")
    return q, d, report
