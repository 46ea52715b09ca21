from fractions import Fraction

import pytest

import golden
from metamatrix.exactlinear import Matrix, bareiss_det
from metamatrix.tp import (
    ALL_MINORS_SIZE_CAP,
    all_minors_positive,
    fekete_check,
    gauss_decomposition_typeb,
)
from metamatrix.typeb import scm_table


def tp_corpus():
    yield Matrix.from_rows([[2, 1], [1, 1]])
    yield Matrix.from_rows([[1, 1, 1], [1, 2, 3], [1, 3, 6]])
    yield scm_table(3)
    yield Matrix.from_rows(golden.dihedral_metamatrix(5))
    yield Matrix.from_rows(golden.H3)


def non_tp_corpus():
    yield Matrix.identity(2)
    yield Matrix.from_rows([[1, 2], [3, 4]])
    yield Matrix.from_rows([[1, 1], [1, 1]])
    yield Matrix.from_rows([[5, 2, 1], [2, 1, 1], [1, 1, 1]])


class TestAllMinors:
    def test_2x2_positive(self):
        cert = all_minors_positive(Matrix.from_rows([[2, 1], [1, 1]]))
        assert cert.is_totally_positive
        assert cert.method == "all-minors"
        assert cert.minors_checked == 5
        assert cert.witness is None

    def test_identity_witness(self):
        cert = all_minors_positive(Matrix.identity(2))
        assert not cert.is_totally_positive
        assert cert.witness.rows == (0,)
        assert cert.witness.cols == (1,)
        assert cert.witness.minor == 0

    def test_negative_det_witness(self):
        cert = all_minors_positive(Matrix.from_rows([[1, 2], [3, 4]]))
        assert cert.witness.rows == (0, 1)
        assert cert.witness.cols == (0, 1)
        assert cert.witness.minor == -2

    def test_rational_entries(self):
        m = Matrix.from_rows(
            [[Fraction(2, 3), Fraction(1, 3)], [Fraction(1, 3), Fraction(1, 3)]]
        )
        assert all_minors_positive(m).is_totally_positive

    def test_size_cap(self):
        big = Matrix.identity(ALL_MINORS_SIZE_CAP + 1)
        with pytest.raises(ValueError, match="fekete"):
            all_minors_positive(big)

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            all_minors_positive(Matrix.from_rows([[1, 2, 3], [4, 5, 6]]))


class TestFekete:
    def test_negative_det(self):
        cert = fekete_check(Matrix.from_rows([[1, 2], [3, 4]]))
        assert not cert.is_totally_positive
        assert cert.witness.minor == -2

    def test_minor_count(self):
        # sum over k of (n-k+1)^2 windows; the H3 table is 4x4
        assert fekete_check(Matrix.from_rows(golden.H3)).minors_checked == 16 + 9 + 4 + 1
        assert fekete_check(Matrix.from_rows([[2, 1], [1, 1]])).minors_checked == 5

    @pytest.mark.parametrize("matrix", list(tp_corpus()))
    def test_agrees_on_positive(self, matrix):
        assert fekete_check(matrix).is_totally_positive
        assert all_minors_positive(matrix).is_totally_positive

    @pytest.mark.parametrize("matrix", list(non_tp_corpus()))
    def test_agrees_on_negative(self, matrix):
        assert not fekete_check(matrix).is_totally_positive
        assert not all_minors_positive(matrix).is_totally_positive

    def test_checks_fewer_minors(self):
        m = Matrix.from_rows(golden.F4)
        fekete = fekete_check(m)
        full = all_minors_positive(m)
        assert fekete.is_totally_positive and full.is_totally_positive
        assert fekete.minors_checked < full.minors_checked


class TestWitnessReevaluation:
    @pytest.mark.parametrize("matrix", list(non_tp_corpus()))
    def test_witness_is_faithful(self, matrix):
        for cert in (all_minors_positive(matrix), fekete_check(matrix)):
            w = cert.witness
            assert bareiss_det(matrix.submatrix(w.rows, w.cols)) == w.minor
            assert w.minor <= 0


class TestGaussDecomposition:
    @pytest.mark.parametrize("n", range(1, 9))
    def test_structure(self, n):
        q, d, report = gauss_decomposition_typeb(n)
        assert report.ok
        assert q.is_upper_triangular()
        assert d.is_diagonal()
        assert all(x > 0 for x in report.diagonal)
        assert q * d * q.transpose() == scm_table(n)

    def test_n1_diagonal(self):
        _, d, _ = gauss_decomposition_typeb(1)
        assert [d[i, i] for i in range(2)] == [Fraction(1, 2), Fraction(2)]

    def test_bad_rank(self):
        with pytest.raises(ValueError):
            gauss_decomposition_typeb(0)
