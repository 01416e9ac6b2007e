import numpy as np
import pytest

from wfamin import fock
from wfamin.aak import RationalSymbol, symbol_coefficients
from wfamin.errors import StabilityError, TruncationError
from wfamin.hankel import build_hankel, hankel_rank, HankelBlock
from wfamin.wfa import Wfa, random_stable_wfa
from wfamin.words import WordIndex


def basis_vector(basis, word):
    out = np.zeros(len(basis))
    out[basis.index_of(word)] = 1.0
    return out


class TestShifts:
    def test_left_shift_on_basis_words(self):
        basis = WordIndex(2, 3)
        out = fock.left_shift(basis, 0, basis_vector(basis, ()))
        np.testing.assert_array_equal(out, basis_vector(basis, (0,)))
        out = fock.left_shift(basis, 0, basis_vector(basis, (1, 0)))
        np.testing.assert_array_equal(out, basis_vector(basis, (0, 1, 0)))

    def test_left_shift_linear(self):
        basis = WordIndex(2, 3)
        rng = np.random.default_rng(0)
        cut = basis.first_index_of_length(basis.max_length)
        u = np.zeros(len(basis))
        v = np.zeros(len(basis))
        u[:cut] = rng.standard_normal(cut)
        v[:cut] = rng.standard_normal(cut)
        left = fock.left_shift(basis, 1, u + v)
        right = fock.left_shift(basis, 1, u) + fock.left_shift(basis, 1, v)
        np.testing.assert_array_equal(left, right)

    def test_truncation_is_loud(self):
        basis = WordIndex(2, 2)
        top = basis_vector(basis, (0, 1))
        with pytest.raises(TruncationError):
            fock.left_shift(basis, 0, top)
        with pytest.raises(TruncationError):
            fock.right_shift(basis, 0, top)

    def test_right_shift_adjoint_on_basis_words(self):
        basis = WordIndex(2, 3)
        out = fock.right_shift_adjoint(basis, 0, basis_vector(basis, (1, 0)))
        np.testing.assert_array_equal(out, basis_vector(basis, (1,)))
        out = fock.right_shift_adjoint(basis, 1, basis_vector(basis, (1, 0)))
        np.testing.assert_array_equal(out, np.zeros(len(basis)))

    def test_adjoint_matrices_are_transposes(self):
        basis = WordIndex(3, 3)
        rng = np.random.default_rng(1)
        cut = basis.first_index_of_length(basis.max_length)
        for i in range(3):
            s = fock.left_shift_matrix(basis, i)
            u = np.zeros(len(basis))
            u[:cut] = rng.standard_normal(cut)
            v = rng.standard_normal(len(basis))
            assert fock.left_shift(basis, i, u) @ v == pytest.approx(
                u @ fock.left_shift_adjoint(basis, i, v), rel=1e-12, abs=1e-13
            )
            np.testing.assert_array_equal(s.T @ v, fock.left_shift_adjoint(basis, i, v))
            r = fock.right_shift_matrix(basis, i)
            np.testing.assert_array_equal(r.T @ v, fock.right_shift_adjoint(basis, i, v))

    def test_shifts_are_isometric_with_orthogonal_ranges(self):
        # S*_i S_j = delta_ij on the interior, exhaustively over basis vectors
        for d in (1, 2, 3):
            for degree in (2, 3, 4):
                basis = WordIndex(d, degree)
                cut = basis.first_index_of_length(degree)
                mats = [fock.left_shift_matrix(basis, i) for i in range(d)]
                for i in range(d):
                    for j in range(d):
                        product = (mats[i].T @ mats[j])[:cut, :cut]
                        expected = np.eye(cut) if i == j else np.zeros((cut, cut))
                        np.testing.assert_array_equal(product, expected)


class TestFlip:
    def test_reverses_words(self):
        basis = WordIndex(2, 3)
        out = fock.flip(basis, basis_vector(basis, (0, 1)))
        np.testing.assert_array_equal(out, basis_vector(basis, (1, 0)))

    def test_involution_and_isometry(self):
        basis = WordIndex(3, 3)
        rng = np.random.default_rng(2)
        v = rng.standard_normal(len(basis))
        np.testing.assert_array_equal(fock.flip(basis, fock.flip(basis, v)), v)
        assert np.linalg.norm(fock.flip(basis, v)) == pytest.approx(np.linalg.norm(v))

    def test_flip_conjugates_left_to_right_shift(self):
        basis = WordIndex(2, 4)
        u = fock.flip_matrix(basis)
        cut = basis.first_index_of_length(basis.max_length)
        for i in range(2):
            left = fock.left_shift_matrix(basis, i)
            right = fock.right_shift_matrix(basis, i)
            conjugated = u.T @ left @ u
            np.testing.assert_array_equal(right[:, :cut], conjugated[:, :cut])


class TestNcHankelMatrix:
    def test_matches_hankel_block_exactly(self):
        wfa = random_stable_wfa(2, 3, seed=6, radius_bound=0.9)
        matrix = fock.nc_hankel_matrix(wfa, 3, 2)
        block = build_hankel(wfa, 3, 2)
        np.testing.assert_array_equal(matrix, block.entries)

    def test_zero_automaton(self):
        wfa = Wfa([1.0], [np.zeros((1, 1)), np.zeros((1, 1))], [0.0])
        np.testing.assert_array_equal(fock.nc_hankel_matrix(wfa, 2, 2), np.zeros((7, 7)))

    def test_nilpotent_integer_exact(self, nilpotent_wfa):
        matrix = fock.nc_hankel_matrix(nilpotent_wfa, 2, 2)
        for i, p in enumerate(WordIndex(2, 2).words()):
            for j, s in enumerate(WordIndex(2, 2).words()):
                assert matrix[i, j] == float(nilpotent_wfa.evaluate(p + s))

    def test_rank_agrees_with_fliess_rank(self):
        for seed in (0, 1, 2):
            wfa = random_stable_wfa(2, 3, seed=seed, radius_bound=0.9)
            matrix = fock.nc_hankel_matrix(wfa, 3, 3)
            block = build_hankel(wfa, 3, 3)
            index = WordIndex(2, 3)
            s = np.linalg.svd(matrix, compute_uv=False)
            rank = int(np.count_nonzero(s > 1e-9 * s[0]))
            assert rank == hankel_rank(HankelBlock(index, index, matrix))
            assert rank == hankel_rank(block)


class TestHankelEquation:
    def test_exactly_zero_for_random_wfas(self):
        for seed in range(6):
            d = 2 + seed % 2
            wfa = random_stable_wfa(d, 3, seed=seed, radius_bound=0.9)
            report = fock.verify_hankel_equation(wfa, 5)
            assert report.max_discrepancy == 0.0
            assert report.passed

    def test_two_letter_fixture_columns(self, nilpotent_wfa):
        # H S_a e_{ba} and R*_a H e_{ba} both list f(., aba) over the rows
        degree = 4
        basis = WordIndex(2, degree)
        h = fock.nc_hankel_matrix(nilpotent_wfa, degree, degree)
        cut = basis.first_index_of_length(degree)
        col_shift = h[:cut, basis.index_of((0, 1, 0))]
        rows_appended = [basis.index_of(w + (0,)) for w in WordIndex(2, degree - 1).words()]
        adj_col = h[rows_appended, basis.index_of((1, 0))]
        np.testing.assert_array_equal(col_shift, adj_col)
        expected = [nilpotent_wfa.evaluate(w + (0, 1, 0)) for w in WordIndex(2, degree - 1).words()]
        np.testing.assert_array_equal(col_shift, expected)

    def test_one_letter_specialization(self, two_state_wfa):
        report = fock.verify_hankel_equation(two_state_wfa, 5)
        assert report.max_discrepancy == 0.0

    def test_degree_validation(self, nilpotent_wfa):
        with pytest.raises(ValueError):
            fock.verify_hankel_equation(nilpotent_wfa, 1)


class TestTwoSidedSpace:
    def test_projection_idempotent_self_adjoint(self):
        space = fock.TwoSidedSpace(2, 3)
        rng = np.random.default_rng(3)
        u = fock.TwoSidedVector(
            rng.standard_normal(space.negative_size), rng.standard_normal(space.positive_size)
        )
        v = fock.TwoSidedVector(
            rng.standard_normal(space.negative_size), rng.standard_normal(space.positive_size)
        )
        pu = space.project_negative(u)
        np.testing.assert_array_equal(space.project_negative(pu).negative, pu.negative)
        np.testing.assert_array_equal(pu.positive, np.zeros(space.positive_size))
        assert pu.inner(v) == pytest.approx(u.inner(space.project_negative(v)), rel=1e-12)

    def test_bilateral_shift_cases(self):
        space = fock.TwoSidedSpace(2, 3)
        # positive component: append on the right
        out = space.bilateral_shift(0, space.basis_positive((1,)))
        np.testing.assert_array_equal(out.positive, space.basis_positive((1, 0)).positive)
        # negative component: strip a trailing symbol
        out = space.bilateral_shift(0, space.basis_negative((1, 0)))
        np.testing.assert_array_equal(out.negative, space.basis_negative((1,)).negative)
        # no trailing match: annihilated
        out = space.bilateral_shift(1, space.basis_negative((1, 0)))
        assert out.norm_squared() == 0.0
        # single letter crosses to the empty word of the positive component
        out = space.bilateral_shift(0, space.basis_negative((0,)))
        np.testing.assert_array_equal(out.positive, space.basis_positive(()).positive)
        assert np.all(out.negative == 0.0)

    def test_bilateral_shift_is_unitary_for_one_letter(self):
        # with a single symbol the space is a truncated two-sided sequence
        # space and the shift preserves norms away from the boundary
        space = fock.TwoSidedSpace(1, 5)
        rng = np.random.default_rng(4)
        neg = rng.standard_normal(space.negative_size)
        pos = np.zeros(space.positive_size)
        pos[:-1] = rng.standard_normal(space.positive_size - 1)
        vec = fock.TwoSidedVector(neg, pos)
        out = space.bilateral_shift(0, vec)
        assert out.norm_squared() == pytest.approx(vec.norm_squared(), rel=1e-12)

    def test_truncation_guard(self):
        space = fock.TwoSidedSpace(2, 2)
        with pytest.raises(TruncationError):
            space.bilateral_shift(0, space.basis_positive((0, 1)))


class TestShiftInequalities:
    def test_orthogonal_basis_example(self):
        basis = WordIndex(2, 2)
        y = basis_vector(basis, ())
        total = fock.left_shift(basis, 0, y) + fock.left_shift(basis, 1, y)
        assert total @ total == 2.0 == y @ y + y @ y

    def test_zero_vectors(self):
        report = fock.verify_shift_inequalities(2, 3, trials=1, seed=0)
        zero = np.zeros(len(WordIndex(2, 3)))
        total = fock.left_shift(WordIndex(2, 3), 0, zero)
        assert total @ total == 0.0
        assert report.trials == 1

    def test_equality_over_random_trials(self):
        report = fock.verify_shift_inequalities(3, 4, trials=100, seed=1)
        assert report.max_left_shift_deviation <= 1e-12
        assert report.max_bilateral_deviation <= 1e-12
        assert report.passed

    def test_trials_validation(self):
        with pytest.raises(ValueError):
            fock.verify_shift_inequalities(2, 3, trials=0)


class TestFreeGroup:
    def test_violation_exhibited(self):
        report = fock.free_group_counterexample()
        assert report.group_lhs == 4.0
        assert report.group_rhs == 2.0
        assert report.violation_exhibited

    def test_monoid_contrast_keeps_equality(self):
        report = fock.free_group_counterexample()
        assert report.monoid_lhs == report.monoid_rhs == 2.0

    def test_degenerate_case(self):
        report = fock.free_group_counterexample()
        assert report.degenerate_lhs == 1.0 <= report.degenerate_rhs
        assert report.passed


class TestNcRational:
    def test_zero_arguments_give_head_coefficient(self):
        wfa = random_stable_wfa(2, 3, seed=8, radius_bound=0.9)
        r = fock.NcRationalRealization.from_wfa(wfa)
        value = fock.nc_rational_eval(r, [np.zeros((1, 1)), np.zeros((1, 1))])
        assert value.shape == (1, 1)
        assert value[0, 0] == float(r.c @ r.b)

    def test_one_letter_scalar_matches_resolvent_series(self, two_state_wfa):
        r = fock.NcRationalRealization.from_wfa(two_state_wfa)
        sym = RationalSymbol.from_wfa(two_state_wfa)
        coeffs = symbol_coefficients(sym, 60)
        z = 0.7
        value = fock.nc_rational_eval(r, [np.array([[z]])])[0, 0]
        series = float(sum(coeffs[m] * z**m for m in range(60)))
        assert value == pytest.approx(series, rel=1e-12)

    def test_matrix_substitution_within_tail_bound(self):
        rng = np.random.default_rng(5)
        for d, m in ((2, 2), (3, 2), (2, 1)):
            wfa = random_stable_wfa(d, 3, seed=int(rng.integers(1000)), radius_bound=0.9)
            r = fock.NcRationalRealization.from_wfa(wfa)
            zs = [rng.standard_normal((m, m)) * 0.25 for _ in range(d)]
            closed = fock.nc_rational_eval(r, zs)
            partial = fock.nc_rational_series(r, zs, 8)
            bound = fock.series_tail_bound(r, zs, 8)
            assert np.isfinite(bound)
            assert np.linalg.norm(closed - partial, 2) <= bound

    def test_non_contractive_substitution_rejected(self):
        r = fock.NcRationalRealization([1.0], [np.eye(1)], [1.0])
        with pytest.raises(StabilityError, match="spectral radius"):
            fock.nc_rational_eval(r, [np.array([[1.5]])])

    def test_contraction_margins(self, two_state_wfa):
        r = fock.NcRationalRealization.from_wfa(two_state_wfa)
        rho, norm_sum = fock.contraction_margins(r, [np.array([[0.5]])])
        assert rho < 1.0
        assert norm_sum == pytest.approx(0.25)


class TestFlippedSymbol:
    def test_equals_first_hankel_column_exactly(self):
        for seed in (0, 1):
            wfa = random_stable_wfa(2, 3, seed=seed, radius_bound=0.9)
            series = fock.flipped_symbol_coefficients(wfa, 4)
            column = fock.nc_hankel_matrix(wfa, 4, 0)[:, 0]
            np.testing.assert_array_equal(series, column)

    def test_nilpotent_pattern(self, nilpotent_wfa):
        series = fock.flipped_symbol_coefficients(nilpotent_wfa, 2)
        np.testing.assert_array_equal(series, [0, 1, 0, 0, 1, 0, 0])

    def test_one_letter_equals_symbol_coefficients(self, two_state_wfa):
        series = fock.flipped_symbol_coefficients(two_state_wfa, 6)
        sym = RationalSymbol.from_wfa(two_state_wfa)
        np.testing.assert_array_equal(series, symbol_coefficients(sym, 7))


class TestMultiplier:
    def test_flipped_symbol_multiplier_commutes_on_interior(self, nilpotent_wfa):
        basis = WordIndex(2, 4)
        op = fock.flipped_multiplier_matrix(nilpotent_wfa, basis)
        report = fock.verify_multiplier_intertwining(op, basis)
        assert report.max_discrepancy == 0.0

    def test_random_wfa_multiplier_commutes_on_interior(self):
        wfa = random_stable_wfa(2, 3, seed=17, radius_bound=0.9)
        basis = WordIndex(2, 4)
        op = fock.flipped_multiplier_matrix(wfa, basis)
        report = fock.verify_multiplier_intertwining(op, basis)
        assert report.max_discrepancy < 1e-14

    def test_identity_is_not_a_multiplier(self):
        basis = WordIndex(2, 3)
        report = fock.verify_multiplier_intertwining(np.eye(len(basis)), basis)
        assert report.max_discrepancy > 0.0

    def test_zero_series_multiplier(self):
        basis = WordIndex(2, 3)
        op = fock.flip_matrix(basis) @ fock.right_multiplication_matrix(
            basis, np.zeros(len(basis))
        )
        report = fock.verify_multiplier_intertwining(op, basis)
        assert report.max_discrepancy == 0.0
