"""Truncated Fock-space laboratory for noncommutative Hankel operators.

The Fock space over d generators has an orthonormal basis indexed by words;
its degree-D truncation is represented here by plain numpy vectors and
matrices over a :class:`~wfamin.words.WordIndex`, so a coefficient vector is
simultaneously the sequence and the power-series view of the same object.

Truncation discipline: every operation that can push support past the
degree cutoff either raises :class:`TruncationError` (vector form) or zeroes
the offending columns (matrix form), and the verification routines only
compare on the *interior* (degrees where no truncation loss can occur).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import StabilityError, TruncationError
from .hankel import build_hankel
from .wfa import Wfa, evaluation_table, kronecker, spectral_radius
from .words import WordIndex

#: The Fock basis is the shared graded-lexicographic word enumeration.
FockBasis = WordIndex


def _interior_size(basis: WordIndex) -> int:
    """Number of basis words of degree <= max_length - 1."""
    return basis.first_index_of_length(basis.max_length)


def _check_interior_support(basis: WordIndex, vector: np.ndarray, what: str):
    if vector.shape != (len(basis),):
        raise ValueError(f"vector has shape {vector.shape}, expected ({len(basis)},)")
    if np.any(vector[_interior_size(basis):] != 0.0):
        raise TruncationError(
            f"{what} would push support past degree {basis.max_length}; "
            "the input must vanish on the top degree"
        )


def _prepend_indices(basis: WordIndex, symbol: int) -> np.ndarray:
    """index_of(symbol + w) for every interior word w."""
    cut = _interior_size(basis)
    offsets = basis.offsets
    lengths, values = basis.lengths[:cut], basis.values[:cut]
    return offsets[lengths + 1] + symbol * basis.alphabet_size**lengths + values


def _append_indices(basis: WordIndex, symbol: int) -> np.ndarray:
    """index_of(w + symbol) for every interior word w."""
    cut = _interior_size(basis)
    offsets = basis.offsets
    lengths, values = basis.lengths[:cut], basis.values[:cut]
    return offsets[lengths + 1] + values * basis.alphabet_size + symbol


def left_shift(basis: WordIndex, symbol: int, vector) -> np.ndarray:
    """e_w -> e_{symbol w}; the input must vanish on the top degree."""
    vector = np.asarray(vector, dtype=float)
    _check_interior_support(basis, vector, "left shift")
    out = np.zeros(len(basis))
    out[_prepend_indices(basis, symbol)] = vector[: _interior_size(basis)]
    return out


def right_shift(basis: WordIndex, symbol: int, vector) -> np.ndarray:
    """e_w -> e_{w symbol}; the input must vanish on the top degree."""
    vector = np.asarray(vector, dtype=float)
    _check_interior_support(basis, vector, "right shift")
    out = np.zeros(len(basis))
    out[_append_indices(basis, symbol)] = vector[: _interior_size(basis)]
    return out


def left_shift_adjoint(basis: WordIndex, symbol: int, vector) -> np.ndarray:
    """e_{symbol w} -> e_w and 0 on words not starting with the symbol."""
    vector = np.asarray(vector, dtype=float)
    out = np.zeros(len(basis))
    out[: _interior_size(basis)] = vector[_prepend_indices(basis, symbol)]
    return out


def right_shift_adjoint(basis: WordIndex, symbol: int, vector) -> np.ndarray:
    """e_{w symbol} -> e_w and 0 on words not ending with the symbol."""
    vector = np.asarray(vector, dtype=float)
    out = np.zeros(len(basis))
    out[: _interior_size(basis)] = vector[_append_indices(basis, symbol)]
    return out


def left_shift_matrix(basis: WordIndex, symbol: int) -> np.ndarray:
    """Matrix of the left shift; columns at the top degree are zero."""
    out = np.zeros((len(basis), len(basis)))
    cut = _interior_size(basis)
    out[_prepend_indices(basis, symbol), np.arange(cut)] = 1.0
    return out


def right_shift_matrix(basis: WordIndex, symbol: int) -> np.ndarray:
    """Matrix of the right shift; columns at the top degree are zero."""
    out = np.zeros((len(basis), len(basis)))
    cut = _interior_size(basis)
    out[_append_indices(basis, symbol), np.arange(cut)] = 1.0
    return out


def _reversal_permutation(basis: WordIndex) -> np.ndarray:
    perm = np.empty(len(basis), dtype=np.int64)
    for i, word in enumerate(basis.words()):
        perm[i] = basis.index_of(word[::-1])
    return perm


def flip(basis: WordIndex, vector) -> np.ndarray:
    """Word-reversal (flipping) operator; unitary, involutive, no truncation."""
    vector = np.asarray(vector, dtype=float)
    if vector.shape != (len(basis),):
        raise ValueError(f"vector has shape {vector.shape}, expected ({len(basis)},)")
    out = np.empty_like(vector)
    out[_reversal_permutation(basis)] = vector
    return out


def flip_matrix(basis: WordIndex) -> np.ndarray:
    out = np.zeros((len(basis), len(basis)))
    out[_reversal_permutation(basis), np.arange(len(basis))] = 1.0
    return out


def nc_hankel_matrix(wfa: Wfa, row_degree: int, col_degree: int) -> np.ndarray:
    """Hankel matrix over Fock bases: entry (row w, col u) = f(w u).

    Rows and columns follow the shared graded-lexicographic order, so the
    numbers coincide with :func:`wfamin.hankel.build_hankel` entry by entry.
    """
    return build_hankel(wfa, row_degree, col_degree).entries


def flipped_symbol_coefficients(wfa: Wfa, degree: int) -> np.ndarray:
    """Coefficient at word w of the automaton's flipped-symbol series: f(w).

    This is exactly the first column of the Hankel matrix, i.e. the part of
    the flipped symbol that the projection onto the negative component pins
    down.  The complementary component living in the positive space is not
    determined by the automaton and is deliberately not modeled here.
    """
    return evaluation_table(wfa, degree)


@dataclass(frozen=True)
class HankelEquationReport:
    """Interior comparison of (H S_i) against (R_i^* H) for every symbol."""

    alphabet_size: int
    degree: int
    comparisons: int
    per_symbol: tuple[float, ...]
    max_discrepancy: float

    @property
    def passed(self) -> bool:
        # both sides are assembled from identical word evaluations, so any
        # discrepancy at all means the identity is violated
        return self.max_discrepancy == 0.0

    def lines(self):
        yield f"alphabet size: {self.alphabet_size}"
        yield f"degree: {self.degree}"
        yield f"interior comparisons: {self.comparisons}"
        for i, value in enumerate(self.per_symbol):
            yield f"max discrepancy, symbol {i}: {value!r}"
        yield f"max discrepancy: {self.max_discrepancy!r}"


def verify_hankel_equation(wfa: Wfa, degree: int) -> HankelEquationReport:
    """Check the noncommutative Hankel identity H S_i = R_i^* H on the interior.

    For every symbol i and interior column word u, the column of H at i u is
    compared against the right-shift-adjoint image of the column at u, row by
    interior row.  The expected discrepancy is exactly zero because both
    sides reduce to evaluations of the automaton on the same concatenated
    words.
    """
    if degree < 2:
        raise ValueError(f"degree must be >= 2, got {degree}")
    basis = WordIndex(wfa.alphabet_size, degree)
    h = nc_hankel_matrix(wfa, degree, degree)
    cut = _interior_size(basis)
    interior = np.arange(cut)
    per_symbol = []
    comparisons = 0
    for symbol in range(wfa.alphabet_size):
        prepended = _prepend_indices(basis, symbol)  # columns i u
        appended = _append_indices(basis, symbol)  # rows w i
        lhs = h[np.ix_(interior, prepended)]
        rhs = h[np.ix_(appended, interior)]
        per_symbol.append(float(np.abs(lhs - rhs).max()))
        comparisons += lhs.size
    return HankelEquationReport(
        alphabet_size=wfa.alphabet_size,
        degree=degree,
        comparisons=comparisons,
        per_symbol=tuple(per_symbol),
        max_discrepancy=max(per_symbol),
    )


@dataclass(frozen=True)
class TwoSidedVector:
    """Element of the two-sided space: negative block (words of length >= 1)
    plus positive block (all words), both truncated at the same degree."""

    negative: np.ndarray
    positive: np.ndarray

    def norm_squared(self) -> float:
        return float(self.negative @ self.negative + self.positive @ self.positive)

    def inner(self, other: "TwoSidedVector") -> float:
        return float(self.negative @ other.negative + self.positive @ other.positive)


class TwoSidedSpace:
    """Direct sum of a negative and a positive truncated Fock component.

    The negative component is indexed by words of length 1..D, the positive
    one by words of length 0..D.  The bilateral shift acts as the right
    shift on the positive component and as its adjoint on the negative one;
    a negative single-letter word crosses over to the empty word of the
    positive component, mirroring the bilateral shift on two-sided sequences.
    """

    def __init__(self, alphabet_size: int, degree: int):
        if degree < 1:
            raise ValueError(f"degree must be >= 1, got {degree}")
        self.basis = WordIndex(alphabet_size, degree)
        self.negative_size = len(self.basis) - 1
        self.positive_size = len(self.basis)

    @property
    def alphabet_size(self) -> int:
        return self.basis.alphabet_size

    @property
    def degree(self) -> int:
        return self.basis.max_length

    def zero(self) -> TwoSidedVector:
        return TwoSidedVector(np.zeros(self.negative_size), np.zeros(self.positive_size))

    def from_positive(self, coefficients) -> TwoSidedVector:
        coefficients = np.asarray(coefficients, dtype=float)
        if coefficients.shape != (self.positive_size,):
            raise ValueError("positive block has the wrong size")
        return TwoSidedVector(np.zeros(self.negative_size), coefficients.copy())

    def from_negative(self, coefficients) -> TwoSidedVector:
        coefficients = np.asarray(coefficients, dtype=float)
        if coefficients.shape != (self.negative_size,):
            raise ValueError("negative block has the wrong size")
        return TwoSidedVector(coefficients.copy(), np.zeros(self.positive_size))

    def basis_negative(self, word) -> TwoSidedVector:
        """Negative-component basis vector for a nonempty word."""
        index = self.basis.index_of(word)
        if index == 0:
            raise ValueError("the empty word lives in the positive component")
        vec = self.zero()
        vec.negative[index - 1] = 1.0
        return vec

    def basis_positive(self, word) -> TwoSidedVector:
        vec = self.zero()
        vec.positive[self.basis.index_of(word)] = 1.0
        return vec

    def project_negative(self, vector: TwoSidedVector) -> TwoSidedVector:
        """Orthogonal projection onto the negative component."""
        return TwoSidedVector(vector.negative.copy(), np.zeros(self.positive_size))

    def bilateral_shift(self, symbol: int, vector: TwoSidedVector) -> TwoSidedVector:
        """Case-split shift: right-shift adjoint on the negative component
        (with the single-letter crossing to the empty word), right shift on
        the positive component."""
        basis = self.basis
        if np.any(vector.positive[_interior_size(basis):] != 0.0):
            raise TruncationError(
                "bilateral shift would push positive support past degree "
                f"{basis.max_length}"
            )
        out = self.zero()
        cut = _interior_size(basis)
        out.positive[_append_indices(basis, symbol)] += vector.positive[:cut]
        # negative block: strip a trailing `symbol`; e_{symbol} crosses to e_eps
        stripped = np.zeros(len(basis))
        stripped[:cut] = vector.negative[_append_indices(basis, symbol) - 1]
        out.negative[:] += stripped[1:]
        out.positive[0] += stripped[0]
        return out


@dataclass(frozen=True)
class ShiftInequalityReport:
    """Deviations from equality in the shift norm identities, over random trials."""

    alphabet_size: int
    degree: int
    trials: int
    max_left_shift_deviation: float
    max_bilateral_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return (
            max(self.max_left_shift_deviation, self.max_bilateral_deviation)
            <= self.tolerance
        )

    def lines(self):
        yield f"alphabet size: {self.alphabet_size}"
        yield f"degree: {self.degree}"
        yield f"trials: {self.trials}"
        yield f"max |deviation|, left shifts: {self.max_left_shift_deviation!r}"
        yield f"max |deviation|, bilateral shifts: {self.max_bilateral_deviation!r}"
        yield f"tolerance: {self.tolerance!r}"


def verify_shift_inequalities(alphabet_size: int, degree: int, trials: int,
                              seed=0, tolerance: float = 1e-12) -> ShiftInequalityReport:
    """Check the two norm identities behind the operator-tuple hypotheses.

    (a) The left shifts are isometries with pairwise orthogonal ranges, so
    ||sum_i S_i y_i||^2 equals sum_i ||y_i||^2 for any interior-supported
    y_i.  (b) The bilateral shifts restricted to their invariant positive
    component are again orthogonal-range isometries, so the same identity
    holds there; the trials draw the h_i from that component, which is where
    the contraction hypothesis is actually exercised by the framework.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    basis = WordIndex(alphabet_size, degree)
    space = TwoSidedSpace(alphabet_size, degree)
    cut = _interior_size(basis)
    max_left = 0.0
    max_bilateral = 0.0
    for _ in range(trials):
        ys = []
        for _ in range(alphabet_size):
            y = np.zeros(len(basis))
            y[:cut] = rng.standard_normal(cut)
            ys.append(y)
        total = np.zeros(len(basis))
        for i, y in enumerate(ys):
            total += left_shift(basis, i, y)
        lhs = float(total @ total)
        rhs = float(sum(y @ y for y in ys))
        max_left = max(max_left, abs(lhs - rhs))

        hs = []
        for _ in range(alphabet_size):
            coeffs = np.zeros(len(basis))
            coeffs[:cut] = rng.standard_normal(cut)
            hs.append(space.from_positive(coeffs))
        shifted = space.zero()
        for i, h in enumerate(hs):
            image = space.bilateral_shift(i, h)
            shifted = TwoSidedVector(
                shifted.negative + image.negative, shifted.positive + image.positive
            )
        lhs = shifted.norm_squared()
        rhs = float(sum(h.norm_squared() for h in hs))
        max_bilateral = max(max_bilateral, abs(lhs - rhs))
    return ShiftInequalityReport(
        alphabet_size=alphabet_size,
        degree=degree,
        trials=trials,
        max_left_shift_deviation=max_left,
        max_bilateral_deviation=max_bilateral,
        tolerance=tolerance,
    )


@dataclass(frozen=True)
class FreeGroupReport:
    """Contrast of the bilateral-shift contraction on group- vs monoid-indexed spaces."""

    group_lhs: float
    group_rhs: float
    monoid_lhs: float
    monoid_rhs: float
    degenerate_lhs: float
    degenerate_rhs: float

    @property
    def violation_exhibited(self) -> bool:
        return self.group_lhs > self.group_rhs

    @property
    def passed(self) -> bool:
        return (
            self.violation_exhibited
            and self.monoid_lhs == self.monoid_rhs
            and self.degenerate_lhs <= self.degenerate_rhs
        )

    def lines(self):
        yield (
            "free group: ||R_1 h_1 + R_2 h_2||^2 = "
            f"{self.group_lhs!r} > {self.group_rhs!r} = ||h_1||^2 + ||h_2||^2"
            if self.violation_exhibited
            else f"free group: {self.group_lhs!r} <= {self.group_rhs!r} (no violation found)"
        )
        yield f"free monoid contrast: {self.monoid_lhs!r} = {self.monoid_rhs!r}"
        yield f"degenerate h_1 = 0: {self.degenerate_lhs!r} <= {self.degenerate_rhs!r}"


def free_group_counterexample() -> FreeGroupReport:
    """Exhibit the failure of the contraction property over the free group.

    On sequences indexed by the free group on two generators, appending a
    generator cancels against its inverse, so the two bilateral shifts no
    longer have orthogonal ranges: applied to the inverse-generator basis
    vectors they both land on the empty word and the norms add coherently
    (4 > 2).  On the free monoid the same probe stays orthogonal and the
    identity holds with equality.
    """
    # length <= 1 truncation over generators and inverses: e, g1, g2, g1^-1, g2^-1
    labels = [(), (1,), (2,), (-1,), (-2,)]
    position = {word: i for i, word in enumerate(labels)}

    def append_generator(word, generator):
        if word and word[-1] == -generator:
            return word[:-1]
        return word + (generator,)

    def shift_apply(generator, vector):
        out = np.zeros(len(labels))
        for word, i in position.items():
            if vector[i] == 0.0:
                continue
            image = append_generator(word, generator)
            if image not in position:
                raise TruncationError(f"image {image} leaves the length-1 truncation")
            out[position[image]] += vector[i]
        return out

    h1 = np.zeros(len(labels))
    h1[position[(-1,)]] = 1.0
    h2 = np.zeros(len(labels))
    h2[position[(-2,)]] = 1.0
    combined = shift_apply(1, h1) + shift_apply(2, h2)
    group_lhs = float(combined @ combined)
    group_rhs = float(h1 @ h1 + h2 @ h2)

    # same probe on the monoid-indexed two-sided space: h_i = e_{g_i} in the
    # positive component, where the bilateral shift appends on the right
    space = TwoSidedSpace(2, 2)
    m1 = space.basis_positive((0,))
    m2 = space.basis_positive((1,))
    s1 = space.bilateral_shift(0, m1)
    s2 = space.bilateral_shift(1, m2)
    summed = TwoSidedVector(s1.negative + s2.negative, s1.positive + s2.positive)
    monoid_lhs = summed.norm_squared()
    monoid_rhs = m1.norm_squared() + m2.norm_squared()

    degenerate = shift_apply(2, h2)
    return FreeGroupReport(
        group_lhs=group_lhs,
        group_rhs=group_rhs,
        monoid_lhs=monoid_lhs,
        monoid_rhs=monoid_rhs,
        degenerate_lhs=float(degenerate @ degenerate),
        degenerate_rhs=float(h2 @ h2),
    )


@dataclass(frozen=True)
class NcRationalRealization:
    """Linear realization (c, {A_j}, b) of a noncommutative rational series.

    The word-w coefficient of the series is c^T A_w b; evaluation on a tuple
    of square-matrix arguments is defined through the Kronecker-product
    resolvent form.
    """

    c: np.ndarray
    matrices: tuple[np.ndarray, ...]
    b: np.ndarray

    def __post_init__(self):
        c = np.array(self.c, dtype=float)
        b = np.array(self.b, dtype=float)
        mats = tuple(np.array(m, dtype=float) for m in self.matrices)
        n = c.shape[0]
        if b.shape != (n,) or any(m.shape != (n, n) for m in mats) or not mats:
            raise ValueError("inconsistent realization shapes")
        for arr in (c, b, *mats):
            arr.setflags(write=False)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "matrices", mats)

    @classmethod
    def from_wfa(cls, wfa: Wfa) -> "NcRationalRealization":
        return cls(wfa.alpha, wfa.transitions, wfa.beta)

    @property
    def alphabet_size(self) -> int:
        return len(self.matrices)


def _coerce_arguments(realization: NcRationalRealization, arguments):
    arguments = [np.atleast_2d(np.asarray(z, dtype=float)) for z in arguments]
    if len(arguments) != realization.alphabet_size:
        raise ValueError(
            f"expected {realization.alphabet_size} arguments, got {len(arguments)}"
        )
    size = arguments[0].shape[0]
    for z in arguments:
        if z.shape != (size, size):
            raise ValueError("arguments must be square matrices of one common size")
    return arguments, size


def contraction_margins(realization: NcRationalRealization, arguments) -> tuple[float, float]:
    """(spectral radius of sum A_j (x) z_j, sum_j ||z_j z_j^T||).

    The first number below one is what evaluation needs; the second below
    one is the classical sufficient condition for convergence of the series
    under the substitution.
    """
    arguments, _ = _coerce_arguments(realization, arguments)
    resolvent_sum = sum(
        kronecker(m, z) for m, z in zip(realization.matrices, arguments)
    )
    rho = spectral_radius(resolvent_sum)
    norm_sum = float(sum(np.linalg.norm(z @ z.T, 2) for z in arguments))
    return rho, norm_sum


def nc_rational_eval(realization: NcRationalRealization, arguments) -> np.ndarray:
    """Evaluate the rational series on square-matrix arguments.

    Computes (c^T (x) 1_m)(1_{nm} - sum_j A_j (x) z_j)^{-1}(b (x) 1_m), an
    m-by-m matrix equal to the sum of the series coefficients weighted by
    the corresponding argument products.
    """
    arguments, size = _coerce_arguments(realization, arguments)
    resolvent_sum = sum(
        kronecker(m, z) for m, z in zip(realization.matrices, arguments)
    )
    rho = spectral_radius(resolvent_sum)
    if rho >= 1.0:
        _, norm_sum = contraction_margins(realization, arguments)
        raise StabilityError(
            f"substitution is not contractive: spectral radius {rho} >= 1 "
            f"(sum of ||z_j z_j^T|| is {norm_sum})"
        )
    eye = np.eye(resolvent_sum.shape[0])
    solved = np.linalg.solve(eye - resolvent_sum, kronecker(realization.b[:, None], np.eye(size)))
    return kronecker(realization.c[None, :], np.eye(size)) @ solved


def nc_rational_series(realization: NcRationalRealization, arguments,
                       max_degree: int) -> np.ndarray:
    """Partial sum of the series up to words of length ``max_degree``.

    Independent of :func:`nc_rational_eval`: the word coefficients c^T A_w b
    and the argument products z_w are accumulated level by level.  The tail
    beyond ``max_degree`` is bounded by
    ||c|| ||b|| ||K||^(max_degree+1) / (1 - ||K||) for K the Kronecker sum,
    when ||K|| < 1 (see :func:`series_tail_bound`).
    """
    arguments, size = _coerce_arguments(realization, arguments)
    d = realization.alphabet_size
    total = float(realization.c @ realization.b) * np.eye(size)
    weights = realization.c[None, :]  # rows: c^T A_w over words w of current length
    products = np.eye(size)[None, :, :]  # matching argument products z_w
    for _ in range(max_degree):
        weights = np.stack([weights @ m for m in realization.matrices], axis=1)
        weights = weights.reshape(-1, len(realization.c))
        products = np.stack([products @ z for z in arguments], axis=1)
        products = products.reshape(-1, size, size)
        total = total + np.tensordot(weights @ realization.b, products, axes=(0, 0))
    return total


def series_tail_bound(realization: NcRationalRealization, arguments,
                      max_degree: int) -> float:
    """Geometric bound on the series remainder beyond ``max_degree``."""
    arguments, _ = _coerce_arguments(realization, arguments)
    resolvent_sum = sum(
        kronecker(m, z) for m, z in zip(realization.matrices, arguments)
    )
    gain = float(np.linalg.norm(resolvent_sum, 2))
    if gain >= 1.0:
        return np.inf
    scale = float(np.linalg.norm(realization.c) * np.linalg.norm(realization.b))
    return scale * gain ** (max_degree + 1) / (1.0 - gain)


def right_multiplication_matrix(basis: WordIndex, series) -> np.ndarray:
    """Matrix of right multiplication by a series: e_w -> sum_u theta_u e_{w u}.

    Coefficients that would exceed the basis degree are dropped (the matrix
    is the compression of the infinite operator to the truncation).
    """
    series = np.asarray(series, dtype=float)
    if series.shape != (len(basis),):
        raise ValueError(f"series has shape {series.shape}, expected ({len(basis)},)")
    d = basis.alphabet_size
    offsets = basis.offsets
    out = np.zeros((len(basis), len(basis)))
    for u_index, u in enumerate(basis.words()):
        weight = series[u_index]
        if weight == 0.0:
            continue
        room = basis.max_length - len(u)  # longest left factor that still fits
        cut = len(basis) if room >= basis.max_length else basis.first_index_of_length(room + 1)
        lengths = basis.lengths[:cut]
        values = basis.values[:cut]
        u_value = basis.values[u_index]
        targets = offsets[lengths + len(u)] + values * d ** len(u) + u_value
        out[targets, np.arange(cut)] += weight
    return out


def flipped_multiplier_matrix(wfa: Wfa, basis: WordIndex) -> np.ndarray:
    """The multiplier associated with the automaton's flipped symbol.

    Composing it with the flipping operator gives right multiplication by
    the first Hankel column, which commutes with every left shift; that is
    the intertwining property checked by
    :func:`verify_multiplier_intertwining`.
    """
    if basis.alphabet_size != wfa.alphabet_size:
        raise ValueError("basis and automaton alphabet sizes differ")
    series = flipped_symbol_coefficients(wfa, basis.max_length)
    return flip_matrix(basis) @ right_multiplication_matrix(basis, series)


@dataclass(frozen=True)
class MultiplierReport:
    """Interior discrepancy of U op S_i - S_i U op per symbol."""

    degree: int
    per_symbol: tuple[float, ...]
    max_discrepancy: float

    def lines(self):
        yield f"degree: {self.degree}"
        for i, value in enumerate(self.per_symbol):
            yield f"max interior discrepancy, symbol {i}: {value!r}"
        yield f"max interior discrepancy: {self.max_discrepancy!r}"


def verify_multiplier_intertwining(op: np.ndarray, basis: WordIndex) -> MultiplierReport:
    """Measure how far U op fails to commute with the left shifts.

    Operators commuting with every left shift are exactly the right
    multiplications, so for ``op`` built by :func:`flipped_multiplier_matrix`
    the interior discrepancy vanishes; for a generic operator it does not.
    Only rows and columns of degree < max_length are compared, where the
    truncation cannot corrupt either side.
    """
    op = np.asarray(op, dtype=float)
    if op.shape != (len(basis), len(basis)):
        raise ValueError(f"operator has shape {op.shape}, expected square over the basis")
    u = flip_matrix(basis)
    cut = _interior_size(basis)
    per_symbol = []
    for symbol in range(basis.alphabet_size):
        s = left_shift_matrix(basis, symbol)
        difference = u @ op @ s - s @ u @ op
        per_symbol.append(float(np.abs(difference[:cut, :cut]).max()))
    return MultiplierReport(
        degree=basis.max_length,
        per_symbol=tuple(per_symbol),
        max_discrepancy=max(per_symbol),
    )
