"""Weighted finite automata with dense real parameters.

A WFA over an alphabet of d symbols is a triple (alpha, {A_a}, beta) of an
initial weight vector, one n-by-n transition matrix per symbol and a final
weight vector.  It computes

    f(x_1 ... x_t) = alpha^T A_{x_1} ... A_{x_t} beta,

with the empty word mapped to alpha^T beta.  All values are immutable after
construction (the arrays are marked read-only), so instances are safe to
share across threads.
"""

from __future__ import annotations

import numpy as np

from .errors import NumericalError


class Wfa:
    """A weighted finite automaton with real weights.

    Parameters
    ----------
    alpha : array_like, shape (n,)
        Initial weight vector.
    transitions : sequence of array_like, each of shape (n, n)
        One transition matrix per symbol, ordered by symbol index.
    beta : array_like, shape (n,)
        Final weight vector.
    """

    def __init__(self, alpha, transitions, beta):
        alpha = np.array(alpha, dtype=float)
        beta = np.array(beta, dtype=float)
        mats = tuple(np.array(m, dtype=float) for m in transitions)
        if alpha.ndim != 1 or beta.ndim != 1:
            raise ValueError("alpha and beta must be vectors")
        n = alpha.shape[0]
        if n < 1:
            raise ValueError("a WFA needs at least one state")
        if beta.shape != (n,):
            raise ValueError(f"beta has shape {beta.shape}, expected ({n},)")
        if len(mats) < 1:
            raise ValueError("a WFA needs at least one transition matrix")
        for i, m in enumerate(mats):
            if m.shape != (n, n):
                raise ValueError(f"transition {i} has shape {m.shape}, expected ({n}, {n})")
        for arr in (alpha, beta, *mats):
            arr.setflags(write=False)
        self.alpha = alpha
        self.beta = beta
        self.transitions = mats

    @property
    def num_states(self) -> int:
        return self.alpha.shape[0]

    @property
    def alphabet_size(self) -> int:
        return len(self.transitions)

    def __repr__(self) -> str:
        return f"Wfa(states={self.num_states}, alphabet_size={self.alphabet_size})"

    def evaluate(self, word) -> float:
        """Value of the realized function on a word of symbol indices."""
        u = self.alpha
        for symbol in word:
            if not 0 <= symbol < self.alphabet_size:
                raise ValueError(
                    f"symbol {symbol} outside [0, {self.alphabet_size})"
                )
            u = u @ self.transitions[symbol]
        return float(u @ self.beta)


def spectral_radius(matrix) -> float:
    """Largest modulus among the eigenvalues of a square matrix."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {matrix.shape}")
    try:
        eigenvalues = np.linalg.eigvals(matrix)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigenvalue computation failed: {exc}") from exc
    return float(np.max(np.abs(eigenvalues)))


def kronecker(a, b) -> np.ndarray:
    """Kronecker product with entries M(i,j)N(i',j') at ((i-1)d1'+i', (j-1)d2'+j')."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    b = np.atleast_2d(np.asarray(b, dtype=float))
    return np.kron(a, b)


def random_stable_wfa(alphabet_size: int, num_states: int, seed, radius_bound: float) -> Wfa:
    """Draw a random WFA whose transition weights are contracted for convergence.

    For a one-letter alphabet the transition matrix is rescaled so its
    spectral radius does not exceed ``radius_bound``.  For larger alphabets
    the matrices are jointly rescaled so that the sum of their squared
    spectral norms does not exceed ``radius_bound``, which is sufficient for
    the power series of the automaton to converge under contractive
    substitutions.  The same seed always produces the same automaton.
    """
    if not 0.0 < radius_bound < 1.0:
        raise ValueError(f"radius_bound must lie in (0, 1), got {radius_bound}")
    rng = np.random.default_rng(seed)
    alpha = rng.standard_normal(num_states)
    beta = rng.standard_normal(num_states)
    mats = [rng.standard_normal((num_states, num_states)) for _ in range(alphabet_size)]
    if alphabet_size == 1:
        rho = spectral_radius(mats[0])
        if rho > radius_bound:
            mats[0] = mats[0] * (radius_bound / rho)
    else:
        total = sum(np.linalg.norm(m, 2) ** 2 for m in mats)
        if total > radius_bound:
            scale = np.sqrt(radius_bound / total)
            mats = [m * scale for m in mats]
    return Wfa(alpha, mats, beta)


def evaluation_table(wfa: Wfa, max_length: int) -> np.ndarray:
    """Values of the automaton on every word of length <= max_length.

    The result is ordered like ``WordIndex(wfa.alphabet_size, max_length)``:
    graded lexicographically, empty word first.  Shared by the Hankel-block
    and Fock-space constructions so that any two entries indexed by the same
    word are the same float.
    """
    if max_length < 0:
        raise ValueError(f"max_length must be >= 0, got {max_length}")
    return _word_function_table(wfa.alpha, wfa.transitions, wfa.beta, max_length)


def _word_function_table(alpha, transitions, beta, max_length):
    """Graded-lex table of alpha^T A_w beta built one length level at a time."""
    levels = [np.array([float(alpha @ beta)])]
    states = alpha[None, :]  # rows: alpha^T A_w for every word w of the current length
    for _ in range(max_length):
        # row for word w + (a,) sits at position value(w) * d + a
        nxt = np.stack([states @ m for m in transitions], axis=1).reshape(-1, len(alpha))
        levels.append(nxt @ beta)
        states = nxt
    return np.concatenate(levels)
