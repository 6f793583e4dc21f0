"""Exact arbitrary-precision evaluation of the alternating binomial sums.

The central quantity is the integer

    S(l1, l2) = sum_{j=0}^{l2} (-1)**j * C(l1, j) * C(l2, j),

computed here with no rounding anywhere.  Two independent summation routes
are provided so that each can serve as an oracle for the other: the defining
sum above (l2 + 1 terms) and a short difference-indexed sum

    S(l1, l2) = sum_{l2 <= 2j <= l1} (-1)**j * C(l2, j) * C(l1 - l2, l1 - 2j)

with at most floor(l1/2) - ceil(l2/2) + 1 terms, which is dramatically
shorter when l1 - l2 is small.  On the diagonal l1 == l2 there is a closed
form.  Both routes update each running term from the previous one by exact
integer multiply/divide steps instead of rebuilding binomials.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mpf

from .numerics import DEFAULT_PRECISION, to_real


class Route(enum.Enum):
    DIRECT = "direct"
    REDUCED = "reduced"
    DIAGONAL = "diagonal"


@dataclass(frozen=True)
class PartitionPair:
    """An input pair (lambda1, lambda2), normalized so lambda1 >= lambda2 >= 0."""

    lambda1: int
    lambda2: int

    def __post_init__(self) -> None:
        if not (isinstance(self.lambda1, int) and isinstance(self.lambda2, int)):
            raise TypeError("lambda1 and lambda2 must be integers")
        if not self.lambda1 >= self.lambda2 >= 0:
            raise ValueError(
                f"pair must satisfy lambda1 >= lambda2 >= 0, got ({self.lambda1}, {self.lambda2})"
            )

    @property
    def ratio(self) -> Fraction:
        """The ratio r = lambda1/lambda2, kept exact.  Undefined for lambda2 = 0."""
        if self.lambda2 == 0:
            raise ValueError("ratio undefined for lambda2 = 0")
        return Fraction(self.lambda1, self.lambda2)

    @property
    def difference(self) -> int:
        return self.lambda1 - self.lambda2

    @property
    def congruence_class(self) -> int:
        return (self.lambda1 + self.lambda2) % 4


@dataclass(frozen=True)
class ExactValue:
    """An exactly computed sum value together with the route that produced it."""

    value: int
    pair: PartitionPair
    route: Route


def binomial(n: int, k: int) -> int:
    """C(n, k) for n >= 0, with the convention C(n, k) = 0 for k < 0 or k > n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def signed_terms(pair: PartitionPair) -> list[int]:
    """The summand sequence (-1)**j C(l1,j) C(l2,j) for j = 0..l2."""
    l1, l2 = pair.lambda1, pair.lambda2
    term = 1
    out = [1]
    for j in range(1, l2 + 1):
        term = term * (l1 - j + 1) // j
        term = term * (l2 - j + 1) // j
        out.append(-term if j % 2 else term)
    return out


def eval_direct(pair: PartitionPair) -> ExactValue:
    """Evaluate the defining sum, updating each term from the previous one.

    The running magnitude C(l1,j)C(l2,j) is advanced by multiplying with
    (l1-j+1)(l2-j+1)/j**2 in two exact integer steps.
    """
    l1, l2 = pair.lambda1, pair.lambda2
    term = 1
    total = 1
    for j in range(1, l2 + 1):
        term = term * (l1 - j + 1) // j
        term = term * (l2 - j + 1) // j
        total += -term if j % 2 else term
    return ExactValue(total, pair, Route.DIRECT)


def eval_reduced(pair: PartitionPair) -> ExactValue:
    """Evaluate the short difference-indexed sum; requires lambda1 >= lambda2."""
    l1, l2 = pair.lambda1, pair.lambda2
    d = l1 - l2
    j0 = (l2 + 1) // 2
    j1 = l1 // 2
    if j0 > j1:
        return ExactValue(0, pair, Route.REDUCED)
    b_small = math.comb(l2, j0)
    m = l1 - 2 * j0
    b_diff = math.comb(d, m)
    total = 0
    j = j0
    while True:
        term = b_small * b_diff
        total += -term if j % 2 else term
        if j == j1:
            break
        b_small = b_small * (l2 - j) // (j + 1)
        b_diff = b_diff * m // (d - m + 1)
        m -= 1
        b_diff = b_diff * m // (d - m + 1)
        m -= 1
        j += 1
    return ExactValue(total, pair, Route.REDUCED)


def eval_diagonal(lam: int) -> ExactValue:
    """Closed form on the diagonal: 0 for odd lam, (-1)**(lam/2) C(lam, lam/2) else."""
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    pair = PartitionPair(lam, lam)
    if lam % 2:
        return ExactValue(0, pair, Route.DIAGONAL)
    value = math.comb(lam, lam // 2)
    if (lam // 2) % 2:
        value = -value
    return ExactValue(value, pair, Route.DIAGONAL)


def reduced_term_count(pair: PartitionPair) -> int:
    """Number of terms the difference-indexed route would sum."""
    return max(0, pair.lambda1 // 2 - (pair.lambda2 + 1) // 2 + 1)


def evaluate(pair: PartitionPair, route: Route | None = None) -> ExactValue:
    """Evaluate by the requested route, or pick the cheaper one.

    Auto-selection: the short route wins when its term count is below a
    quarter of the direct route's lambda2 terms.
    """
    if route is Route.DIRECT:
        return eval_direct(pair)
    if route is Route.REDUCED:
        return eval_reduced(pair)
    if route is Route.DIAGONAL:
        if pair.lambda1 != pair.lambda2:
            raise ValueError("diagonal route requires lambda1 == lambda2")
        return eval_diagonal(pair.lambda1)
    if pair.lambda1 == pair.lambda2:
        return eval_diagonal(pair.lambda1)
    if 4 * reduced_term_count(pair) < pair.lambda2:
        return eval_reduced(pair)
    return eval_direct(pair)


def evaluation_cost(pair: PartitionPair) -> int:
    """Cost estimate in 64-bit word multiplications for an exact evaluation.

    Term count is the cheaper route's; each term costs about one product of
    lambda1-bit numbers, i.e. (lambda1/64)**2 word multiplies.
    """
    words = max(1, (pair.lambda1 + 63) // 64)
    nterms = min(pair.lambda2 + 1, reduced_term_count(pair))
    return max(1, nterms) * words * words


def normalized_I(pair: PartitionPair, prec: int = DEFAULT_PRECISION) -> mpf:
    """The normalized contour value I = (-1)**lambda2 * S(l1, l2) as a real.

    The sign flip is exact; only the final integer-to-real conversion rounds.
    """
    if pair.lambda2 < 1:
        raise ValueError("normalized value requires lambda2 >= 1 (ratio undefined otherwise)")
    value = evaluate(pair).value
    if pair.lambda2 % 2:
        value = -value
    return to_real(value, prec)
