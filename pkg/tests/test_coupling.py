import math

import numpy as np
import pytest

from ptbox import coupling


def test_i1_is_identically_zero():
    assert coupling.overlap_i1(1, 1) == 0.0
    assert coupling.overlap_i1(3, 7) == 0.0
    assert coupling.overlap_i1(0, 4) == 0.0


def test_i1_quadrature_confirms_zero():
    # Independent check that the integrand really integrates to zero.
    assert abs(coupling.quadrature_overlap("one", 2, 5)) <= 1e-13
    assert abs(coupling.quadrature_overlap("one", 4, 9)) <= 1e-13


def test_i2_diagonal_values():
    assert coupling.overlap_i2(1, 1) == pytest.approx(-1 / (2 * math.pi), abs=1e-16)
    assert coupling.overlap_i2(5, 5) == pytest.approx(-1 / (10 * math.pi), abs=1e-16)


def test_i2_off_diagonal_against_quadrature():
    # (2, 1): brute-force quadrature, then the closed form must agree.
    q = coupling.quadrature_overlap("y", 2, 1)
    assert q == pytest.approx(-2 / (3 * math.pi), abs=1e-13)
    assert coupling.overlap_i2(2, 1) == pytest.approx(q, abs=1e-13)


def test_i2_constant_mode_row_against_quadrature():
    # Row n = 0 carries the 1/sqrt(2) mode; closed form -sqrt(2)(-1)^m/(pi m)
    # was frozen only after the oracle confirmed it.
    for m in (1, 2, 3):
        expected = -math.sqrt(2) * (-1) ** m / (math.pi * m)
        assert coupling.quadrature_overlap("y", 0, m) == pytest.approx(expected, abs=1e-13)
        assert coupling.overlap_i2(0, m) == pytest.approx(expected, abs=1e-16)


def test_i2_closed_form_matches_oracle_up_to_32():
    assert coupling.max_closed_form_discrepancy(32) <= 1e-10


def test_i2_index_validation():
    with pytest.raises(ValueError):
        coupling.overlap_i2(-1, 1)
    with pytest.raises(ValueError):
        coupling.overlap_i2(1, 0)


def test_i2_table_matches_scalar_form_and_is_frozen():
    tab = coupling.i2_table(6)
    for n in range(6):
        for m in range(1, 6):
            assert tab[n, m] == coupling.overlap_i2(n, m)
    assert np.all(tab[:, 0] == 0.0)
    assert not tab.flags.writeable
    assert coupling.i2_table(6) is tab  # cached


def test_coupling_matrix_static_wall_is_zero():
    V = coupling.coupling_matrix(10.0, 0.0, 1.0, 8)
    assert np.all(V == 0.0)


def test_coupling_matrix_diagonal_example():
    # V_11 = -i L pi (Ldot) I2_11 = -i * 10 * pi * (-1/(2 pi)) = +5i
    V = coupling.coupling_matrix(10.0, 1.0, 1.0, 4)
    assert V[1, 1] == pytest.approx(5j, abs=1e-14)


def test_coupling_matrix_is_not_anti_hermitian():
    V = coupling.coupling_matrix(10.0, 1.0, 1.0, 4)
    assert abs(V[1, 2]) != pytest.approx(abs(V[2, 1]), rel=1e-3)
    assert abs(V[1, 2] + np.conj(V[2, 1])) > 1e-3


def test_coupling_matrix_entries_are_purely_imaginary():
    V = coupling.coupling_matrix(9.3, -0.7, 2.0, 16)
    assert np.all(V.real == 0.0)


def test_coupling_matrix_scales_linearly_and_exactly():
    V1 = coupling.coupling_matrix(10.0, 0.25, 1.0, 8)
    V2 = coupling.coupling_matrix(10.0, 0.5, 1.0, 8)
    assert np.array_equal(2.0 * V1, V2)
    V3 = coupling.coupling_matrix(20.0, 0.25, 1.0, 8)
    assert np.array_equal(2.0 * V1, V3)


def test_coupling_matrix_does_not_depend_on_alpha():
    V1 = coupling.coupling_matrix(10.0, 1.0, 1.0, 8)
    V7 = coupling.coupling_matrix(10.0, 1.0, 7.0, 8)
    assert np.array_equal(V1, V7)


def test_coupling_matrix_zero_column_for_constant_mode():
    # The constant mode has zero derivative: nothing couples out of it.
    V = coupling.coupling_matrix(10.0, 1.0, 1.0, 8)
    assert np.all(V[:, 0] == 0.0)
    assert np.any(V[0, 1:] != 0.0)  # but it is fed by the others


def test_quadrature_point_floor():
    with pytest.raises(ValueError):
        coupling.quadrature_overlap("y", 1, 1, points=32)
    with pytest.raises(ValueError):
        coupling.quadrature_overlap("abs", 1, 1)


def test_converged_overlap_agrees_with_closed_form():
    assert coupling.converged_overlap("y", 3, 11) == pytest.approx(
        coupling.overlap_i2(3, 11), abs=1e-12
    )


def test_converged_overlap_raises_on_unstable_oracle(monkeypatch):
    calls = {"k": 0}

    def noisy(weight, n, m, points):
        calls["k"] += 1
        return calls["k"] * 1e-3  # never stabilizes

    monkeypatch.setattr(coupling, "quadrature_overlap", noisy)
    with pytest.raises(coupling.OracleConvergenceError):
        coupling.converged_overlap("y", 1, 1)


def test_gram_quadrature_identity():
    assert coupling.quadrature_gram(3, 3) == pytest.approx(1.0, abs=1e-13)
    assert coupling.quadrature_gram(3, 5) == pytest.approx(0.0, abs=1e-13)
    assert coupling.quadrature_gram(0, 0) == pytest.approx(1.0, abs=1e-13)
