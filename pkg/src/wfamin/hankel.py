"""Finite Hankel blocks of a WFA, rank checks and spectral reconstruction.

A Hankel block is a finite sub-matrix of the bi-infinite Hankel matrix of a
function f on words: rows are indexed by prefixes, columns by suffixes, and
the entry at (p, s) is f(ps).  The block therefore satisfies the Hankel
constraint that the entry only depends on the concatenation.  This module
builds such blocks from automata, measures their numerical rank, computes
the (generally non-Hankel) truncated-SVD approximation, and reconstructs a
WFA of a given size from a block via the spectral method.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import NumericalError, RankDeficiencyError
from .wfa import Wfa, evaluation_table
from .words import Word, WordIndex

#: Refuse to materialize blocks with more entries than this.
MAX_BLOCK_ENTRIES = 10_000_000

#: Relative singular-value cutoff used for numerical rank decisions.
DEFAULT_RANK_TOL = 1e-9

Generator = Union[Wfa, Callable[[Word], float]]


@dataclass(frozen=True)
class HankelBlock:
    """A finite Hankel sub-matrix with explicit prefix/suffix index sets."""

    prefixes: WordIndex
    suffixes: WordIndex
    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        expected = (len(self.prefixes), len(self.suffixes))
        if entries.shape != expected:
            raise ValueError(f"entries have shape {entries.shape}, expected {expected}")
        if self.prefixes.alphabet_size != self.suffixes.alphabet_size:
            raise ValueError("prefix and suffix alphabets differ")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    @property
    def alphabet_size(self) -> int:
        return self.prefixes.alphabet_size

    def entry(self, prefix, suffix) -> float:
        """Entry for an explicit (prefix, suffix) pair of words."""
        return float(self.entries[self.prefixes.index_of(prefix), self.suffixes.index_of(suffix)])


def _check_block_size(num_rows: int, num_cols: int):
    if num_rows * num_cols > MAX_BLOCK_ENTRIES:
        raise ValueError(
            f"refusing to build a {num_rows} x {num_cols} block "
            f"({num_rows * num_cols} entries > {MAX_BLOCK_ENTRIES})"
        )


def build_hankel(wfa: Wfa, prefix_length: int, suffix_length: int) -> HankelBlock:
    """Hankel block of a WFA over all prefixes/suffixes up to the given lengths.

    Every entry is pulled from a single table of word values, so two cells
    indexed by the same concatenated word hold the identical float.
    """
    d = wfa.alphabet_size
    prefixes = WordIndex(d, prefix_length)
    suffixes = WordIndex(d, suffix_length)
    _check_block_size(len(prefixes), len(suffixes))
    combined = WordIndex(d, prefix_length + suffix_length)
    table = evaluation_table(wfa, combined.max_length)
    entries = table[prefixes.concatenation_indices(suffixes, combined)]
    return HankelBlock(prefixes, suffixes, entries)


def _numerical_rank(matrix: np.ndarray, tol: float) -> int:
    try:
        singular_values = np.linalg.svd(matrix, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD failed: {exc}") from exc
    if singular_values.size == 0 or singular_values[0] == 0.0:
        return 0
    return int(np.count_nonzero(singular_values > tol * singular_values[0]))


def hankel_rank(block: HankelBlock, tol: float = DEFAULT_RANK_TOL) -> int:
    """Numerical rank: number of singular values above ``tol`` times the largest."""
    if tol <= 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    return _numerical_rank(block.entries, tol)


def svd_truncate(block: HankelBlock, k: int) -> tuple[np.ndarray, float]:
    """Best rank-k approximation of the block in the spectral norm.

    Returns the truncated-SVD matrix and the approximation error, which is
    the (k+1)-th singular value (0 when k is at least the rank).  The result
    is optimal among all rank-k matrices but is generally *not* Hankel.
    """
    if not 0 <= k <= min(block.shape):
        raise ValueError(f"k must lie in [0, {min(block.shape)}], got {k}")
    try:
        u, s, vt = np.linalg.svd(block.entries, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD failed: {exc}") from exc
    truncated = (u[:, :k] * s[:k]) @ vt[:k, :]
    error = float(s[k]) if k < s.size else 0.0
    return truncated, error


def _split_index_arrays(block: HankelBlock):
    """For every word w of length <= L_p + L_s, the (row, col) pairs of its splits.

    Returns (rows, cols, word_lengths, word_values) where rows/cols have one
    row per word and one column per split position, padded with -1 where a
    split is out of range for the block's index bounds.
    """
    d = block.alphabet_size
    lp, ls = block.prefixes.max_length, block.suffixes.max_length
    combined = WordIndex(d, lp + ls)
    lengths = combined.lengths
    values = combined.values
    num_words = len(combined)
    max_splits = lp + ls + 1
    rows = np.full((num_words, max_splits), -1, dtype=np.int64)
    cols = np.full((num_words, max_splits), -1, dtype=np.int64)
    p_offsets = block.prefixes.offsets
    s_offsets = block.suffixes.offsets
    for i in range(max_splits):
        # split position i: prefix = first i symbols, suffix = rest
        mask = (lengths >= i) & (lengths - i <= ls) & (i <= lp)
        if not np.any(mask):
            continue
        rest = lengths[mask] - i
        tail = values[mask] % d**rest
        head = values[mask] // d**rest
        rows[mask, i] = p_offsets[i] + head
        cols[mask, i] = s_offsets[rest] + tail
    return combined, rows, cols


def check_hankel_property(block: HankelBlock, tol: float) -> tuple[bool, tuple | None]:
    """Whether all factorizations of each word agree within ``tol`` (absolute).

    Returns ``(True, None)`` if the block is Hankel, otherwise ``(False,
    witness)`` with the first violating quadruple of words (p, s, p', s')
    such that ps = p's' but the entries differ by more than ``tol``.
    """
    combined, rows, cols = _split_index_arrays(block)
    valid = rows >= 0
    values = np.where(valid, block.entries[np.clip(rows, 0, None), np.clip(cols, 0, None)], np.nan)
    with np.errstate(invalid="ignore"):
        spread = np.nanmax(values, axis=1) - np.nanmin(values, axis=1)
    spread = np.nan_to_num(spread)
    bad_words = np.nonzero(spread > tol)[0]
    if bad_words.size == 0:
        return True, None
    word_idx = int(bad_words[0])
    word = combined.word_at(word_idx)
    splits = [i for i in range(rows.shape[1]) if valid[word_idx, i]]
    for a in range(len(splits)):
        for b in range(a + 1, len(splits)):
            va = values[word_idx, splits[a]]
            vb = values[word_idx, splits[b]]
            if abs(va - vb) > tol:
                return False, (
                    word[: splits[a]],
                    word[splits[a] :],
                    word[: splits[b]],
                    word[splits[b] :],
                )
    raise NumericalError("inconsistent spread computation")  # pragma: no cover


def _shifted_block(generator: Generator, prefixes: WordIndex, suffixes: WordIndex,
                   symbol: int) -> np.ndarray:
    """Matrix with entries f(p a s) for the given symbol a."""
    if isinstance(generator, Wfa):
        d = generator.alphabet_size
        combined = WordIndex(d, prefixes.max_length + 1 + suffixes.max_length)
        table = evaluation_table(generator, combined.max_length)
        offsets = combined.offsets
        total_len = prefixes.lengths[:, None] + 1 + suffixes.lengths[None, :]
        head = (prefixes.values[:, None] * d + symbol) * d ** suffixes.lengths[None, :]
        return table[offsets[total_len] + head + suffixes.values[None, :]]
    out = np.empty((len(prefixes), len(suffixes)))
    for i, p in enumerate(prefixes.words()):
        for j, s in enumerate(suffixes.words()):
            out[i, j] = generator(p + (symbol,) + s)
    return out


def spectral_recover(block: HankelBlock, k: int, generator: Generator,
                     tol: float = DEFAULT_RANK_TOL) -> Wfa:
    """Recover a k-state WFA from a Hankel block via the spectral method.

    The block is factored through its rank-k truncated SVD H = U_k D_k V_k^T;
    the transition matrices are D_k^{-1/2} U_k^T H_a V_k D_k^{-1/2} with the
    one-symbol-shifted blocks H_a(p, s) = f(p a s) filled from ``generator``
    (the generating WFA or a word -> value oracle), and the initial/final
    vectors come from the empty-word row and column.  At k equal to the full
    rank the result interpolates f on every word covered by the block.
    """
    if block.prefixes.max_length < 1:
        raise ValueError("spectral recovery needs prefixes of length >= 1")
    d = block.alphabet_size
    if k == 0:
        zero = np.zeros((1, 1))
        return Wfa(np.zeros(1), [zero] * d, np.zeros(1))
    if k > min(block.shape):
        raise ValueError(f"k={k} exceeds block dimensions {block.shape}")
    try:
        u, s, vt = np.linalg.svd(block.entries, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD failed: {exc}") from exc
    rank = 0 if s.size == 0 or s[0] == 0.0 else int(np.count_nonzero(s > tol * s[0]))
    if k > rank:
        raise RankDeficiencyError(
            f"requested {k} states but the block has numerical rank {rank}"
        )
    u_k, s_k, v_k = u[:, :k], s[:k], vt[:k, :].T
    scale = 1.0 / np.sqrt(s_k)
    transitions = []
    for symbol in range(d):
        shifted = _shifted_block(generator, block.prefixes, block.suffixes, symbol)
        transitions.append((scale[:, None] * (u_k.T @ shifted @ v_k)) * scale[None, :])
    alpha = np.sqrt(s_k) * u_k[0, :]
    beta = np.sqrt(s_k) * v_k[0, :]
    return Wfa(alpha, transitions, beta)


def is_minimal(wfa: Wfa, tol: float = DEFAULT_RANK_TOL) -> bool:
    """Whether the (n, n) Hankel block has full rank n (Fliess criterion)."""
    n = wfa.num_states
    return hankel_rank(build_hankel(wfa, n, n), tol) == n
