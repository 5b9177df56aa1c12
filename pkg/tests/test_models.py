import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ritzbound.models import (
    MatrixFileModel,
    PhysicalParams,
    assemble,
    free_box,
    free_box_exact,
    lambda_from_physical,
    parse_matrix_file,
    physical_energy,
    tilted_box,
    tilted_box_element,
)
from ritzbound.symmat import eigensolve, project_leading

from conftest import truncated

PI2 = math.pi**2
index = st.integers(1, 40)


class TestTiltedBoxElement:
    def test_diagonal(self):
        assert tilted_box_element(1.0, 1, 1) == pytest.approx(5.4348022005, abs=1e-10)

    def test_even_sum_vanishes(self):
        assert tilted_box_element(1.0, 1, 3) == 0.0

    def test_off_diagonal(self):
        assert tilted_box_element(1.0, 1, 2) == pytest.approx(-16 / (9 * PI2), rel=1e-15)
        assert tilted_box_element(1.0, 1, 2) == pytest.approx(-0.1801265, abs=1e-7)

    def test_free_diagonal(self):
        assert tilted_box_element(0.0, 2, 2) == pytest.approx(19.7392088, abs=1e-7)

    def test_matches_general_formula(self):
        for i in range(1, 15):
            for j in range(1, 15):
                if i == j:
                    continue
                lam = 0.7
                expected = 4 * i * j * ((-1) ** (i + j) - 1) * lam / (PI2 * (i * i - j * j) ** 2)
                assert tilted_box_element(lam, i, j) == pytest.approx(expected, rel=1e-15, abs=0)

    @pytest.mark.parametrize("i, j", [(0, 1), (1, 0), (-2, 3)])
    def test_bad_index(self, i, j):
        with pytest.raises(ValueError):
            tilted_box_element(1.0, i, j)

    @given(st.floats(-50, 50), index, index)
    def test_symmetric(self, lam, i, j):
        assert tilted_box_element(lam, i, j) == tilted_box_element(lam, j, i)

    @given(st.floats(-10, 10), st.integers(1, 12), st.integers(1, 12))
    def test_affine_in_lambda(self, lam, i, j):
        e0 = tilted_box_element(0.0, i, j)
        slope = tilted_box_element(1.0, i, j) - e0
        scale = abs(e0) + abs(lam * slope)
        assert abs(tilted_box_element(lam, i, j) - (e0 + lam * slope)) <= 1e-15 * scale


class TestAssemble:
    def test_free_box(self):
        np.testing.assert_array_equal(assemble(free_box(), 3).array,
                                      np.diag([PI2 / 2, 2 * PI2, 9 * PI2 / 2]))

    def test_tilted_two(self):
        np.testing.assert_allclose(assemble(tilted_box(1.0), 2).array,
                                   [[5.4348022, -0.1801265], [-0.1801265, 20.2392088]], atol=1e-7)

    def test_tilted_twelve_lowest(self):
        e1 = eigensolve(assemble(tilted_box(1.0), 12)).values[0]
        assert truncated(e1, "5.432607855") == "5.432607855"

    def test_exact_symmetry(self):
        a = assemble(tilted_box(3.3), 25).array
        assert np.array_equal(a, a.T)

    def test_bad_size(self):
        with pytest.raises(ValueError):
            assemble(tilted_box(), 0)

    @pytest.mark.parametrize("lam", [0.0, 1.0, -5.0])
    def test_truncation_consistency(self, lam):
        big = assemble(tilted_box(lam), 20)
        for n in range(1, 21):
            assert assemble(tilted_box(lam), n) == project_leading(big, n)

    def test_free_box_exact_spectrum(self):
        vals = eigensolve(assemble(free_box(), 20)).values
        exact = np.array([free_box_exact(n) for n in range(1, 21)])
        np.testing.assert_allclose(vals, exact, rtol=1e-12)


class TestFreeBoxExact:
    @pytest.mark.parametrize("n, value", [(1, 4.9348022005), (2, 19.7392088022), (3, 44.4132198049)])
    def test_values(self, n, value):
        assert free_box_exact(n) == pytest.approx(value, abs=1e-10)

    def test_bad(self):
        with pytest.raises(ValueError):
            free_box_exact(0)

    def test_model_metadata(self):
        m = free_box()
        assert m.exact_eigenvalue(3) == free_box_exact(3)
        assert tilted_box(1.0).exact_eigenvalue is None


class TestPhysical:
    def test_unit(self):
        assert lambda_from_physical(PhysicalParams()) == 1.0

    def test_cubic_in_length(self):
        assert lambda_from_physical(PhysicalParams(length=2.0)) == 8.0

    def test_linear_in_field(self):
        assert lambda_from_physical(PhysicalParams(field=1e-3)) == pytest.approx(1e-3)

    def test_energy_unit(self):
        assert physical_energy(1.0, PhysicalParams()) == 1.0
        assert physical_energy(5.432607855, PhysicalParams()) == 5.432607855

    def test_energy_length(self):
        assert physical_energy(1.0, PhysicalParams(length=2.0)) == 0.25

    @pytest.mark.parametrize("field", ["mass", "charge", "field", "length", "hbar"])
    def test_positive(self, field):
        with pytest.raises(ValueError):
            PhysicalParams(**{field: 0.0})

    def test_hbar_scaling(self):
        p = PhysicalParams(mass=2.0, hbar=3.0, length=0.5)
        assert physical_energy(1.0, p) == pytest.approx(9.0 / (2.0 * 0.25))


class TestMatrixFile:
    def test_parse(self):
        m = parse_matrix_file("dim 3\n1 1 2.0\n1 2 -1.5\n3 3 4e0\n")
        np.testing.assert_array_equal(m.array, [[2.0, -1.5, 0.0], [-1.5, 0.0, 0.0], [0.0, 0.0, 4.0]])

    @pytest.mark.parametrize("text, msg", [
        ("", "empty"),
        ("size 3\n", "dim"),
        ("dim 0\n", "dimension"),
        ("dim 2\n2 1 1.0\n", "i <= j"),
        ("dim 2\n1 3 1.0\n", "i <= j"),
        ("dim 2\n1 1 1.0\n1 1 2.0\n", "duplicate"),
        ("dim 2\n1 1\n", "expected"),
        ("dim 2\n1 1 nan\n", "finite"),
        ("dim 2\n1 x 1.0\n", "parse"),
    ])
    def test_errors(self, text, msg):
        with pytest.raises(ValueError, match=msg):
            parse_matrix_file(text)

    def test_model(self, tmp_path):
        path = tmp_path / "m.txt"
        path.write_text("dim 2\n1 1 1.0\n1 2 0.5\n2 2 3.0\n", encoding="utf-8")
        model = MatrixFileModel.from_file(path)
        assert model.element(1, 2) == model.element(2, 1) == 0.5
        assert assemble(model, 2).array.tolist() == [[1.0, 0.5], [0.5, 3.0]]
        with pytest.raises(IndexError):
            model.element(3, 1)
        with pytest.raises(IndexError):
            assemble(model, 3)
