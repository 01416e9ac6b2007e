import numpy as np
import pytest

from wfamin.wfa import (
    Wfa,
    evaluation_table,
    kronecker,
    random_stable_wfa,
    spectral_radius,
)
from wfamin.words import WordIndex


def brute_force_value(wfa, word):
    """Independent oracle: explicit matrix product."""
    m = np.eye(wfa.num_states)
    for a in word:
        m = m @ wfa.transitions[a]
    return float(wfa.alpha @ m @ wfa.beta)


class TestEvaluate:
    def test_scalar_power(self, geometric_wfa):
        assert geometric_wfa.evaluate((0, 0, 0)) == pytest.approx(0.125)

    def test_empty_word_is_alpha_beta(self):
        rng = np.random.default_rng(7)
        wfa = Wfa(rng.normal(size=3), [rng.normal(size=(3, 3))], rng.normal(size=3))
        assert wfa.evaluate(()) == pytest.approx(float(wfa.alpha @ wfa.beta))

    def test_nilpotent_values(self, nilpotent_wfa):
        expected = {(): 0.0, (0,): 1.0, (1,): 0.0, (0, 1): 1.0, (1, 0): 0.0}
        for word, value in expected.items():
            assert nilpotent_wfa.evaluate(word) == value
            assert brute_force_value(nilpotent_wfa, word) == value

    def test_nilpotent_all_words_up_to_five(self, nilpotent_wfa):
        for word in WordIndex(2, 5).words():
            got = nilpotent_wfa.evaluate(word)
            assert got == brute_force_value(nilpotent_wfa, word)
            if len(word) >= 2 and word[:2] == (1, 0):
                assert got == 0.0

    def test_symbol_out_of_range(self, nilpotent_wfa):
        with pytest.raises(ValueError):
            nilpotent_wfa.evaluate((0, 2))

    def test_multiplicative_on_splits(self):
        wfa = random_stable_wfa(2, 3, seed=11, radius_bound=0.9)
        rng = np.random.default_rng(0)
        for _ in range(20):
            word = tuple(rng.integers(0, 2, size=rng.integers(0, 7)))
            for cut in range(len(word) + 1):
                left = np.copy(wfa.alpha)
                for a in word[:cut]:
                    left = left @ wfa.transitions[a]
                right = np.copy(wfa.beta)
                for a in reversed(word[cut:]):
                    right = wfa.transitions[a] @ right
                assert wfa.evaluate(word) == pytest.approx(float(left @ right), rel=1e-12)

    def test_linearity_in_weights(self):
        rng = np.random.default_rng(3)
        mats = [rng.normal(size=(3, 3)) for _ in range(2)]
        a1, a2, b = rng.normal(size=3), rng.normal(size=3), rng.normal(size=3)
        word = (0, 1, 1, 0)
        combined = Wfa(2.0 * a1 + a2, mats, b).evaluate(word)
        parts = 2.0 * Wfa(a1, mats, b).evaluate(word) + Wfa(a2, mats, b).evaluate(word)
        assert combined == pytest.approx(parts, rel=1e-12)
        combined = Wfa(b, mats, 3.0 * a1 - a2).evaluate(word)
        parts = 3.0 * Wfa(b, mats, a1).evaluate(word) - Wfa(b, mats, a2).evaluate(word)
        assert combined == pytest.approx(parts, rel=1e-12)


class TestValidation:
    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            Wfa([1.0], [np.eye(2)], [1.0])
        with pytest.raises(ValueError):
            Wfa([1.0, 0.0], [np.eye(2)], [1.0])
        with pytest.raises(ValueError):
            Wfa([1.0], [], [1.0])

    def test_immutable_arrays(self, geometric_wfa):
        with pytest.raises(ValueError):
            geometric_wfa.alpha[0] = 2.0


class TestSpectralRadius:
    def test_scalar(self):
        assert spectral_radius([[0.5]]) == pytest.approx(0.5)

    def test_zero_matrix(self):
        assert spectral_radius(np.zeros((4, 4))) == 0.0

    def test_nilpotent(self):
        assert spectral_radius([[0.0, 1.0], [0.0, 0.0]]) == 0.0

    def test_non_square(self):
        with pytest.raises(ValueError):
            spectral_radius(np.ones((2, 3)))


class TestKronecker:
    def test_scalar_identity(self):
        n = np.arange(6.0).reshape(2, 3)
        np.testing.assert_array_equal(kronecker([[1.0]], n), n)

    def test_identity_product(self):
        np.testing.assert_array_equal(kronecker(np.eye(2), np.eye(3)), np.eye(6))

    def test_hand_expansion(self):
        got = kronecker([[1.0, 2.0]], [[3.0], [4.0]])
        np.testing.assert_array_equal(got, [[3.0, 6.0], [4.0, 8.0]])


class TestRandomStableWfa:
    def test_one_letter_radius_bound(self):
        wfa = random_stable_wfa(1, 4, seed=5, radius_bound=0.5)
        assert spectral_radius(wfa.transitions[0]) <= 0.5 + 1e-12

    def test_deterministic(self):
        w1 = random_stable_wfa(2, 3, seed=42, radius_bound=0.9)
        w2 = random_stable_wfa(2, 3, seed=42, radius_bound=0.9)
        np.testing.assert_array_equal(w1.alpha, w2.alpha)
        np.testing.assert_array_equal(w1.beta, w2.beta)
        for m1, m2 in zip(w1.transitions, w2.transitions):
            np.testing.assert_array_equal(m1, m2)

    def test_multi_letter_norm_budget(self):
        wfa = random_stable_wfa(2, 3, seed=1, radius_bound=0.9)
        total = sum(np.linalg.norm(m, 2) ** 2 for m in wfa.transitions)
        assert total <= 0.9 + 1e-12

    def test_invalid_bound(self):
        with pytest.raises(ValueError):
            random_stable_wfa(1, 2, seed=0, radius_bound=1.0)
        with pytest.raises(ValueError):
            random_stable_wfa(1, 2, seed=0, radius_bound=0.0)


class TestEvaluationTable:
    @pytest.mark.parametrize("d,n,length", [(1, 3, 6), (2, 3, 4), (3, 2, 3)])
    def test_matches_evaluate(self, d, n, length):
        wfa = random_stable_wfa(d, n, seed=d * 10 + n, radius_bound=0.8)
        table = evaluation_table(wfa, length)
        index = WordIndex(d, length)
        assert table.shape == (len(index),)
        for i, word in enumerate(index.words()):
            assert table[i] == pytest.approx(wfa.evaluate(word), rel=1e-12, abs=1e-14)
