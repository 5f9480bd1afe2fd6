"""Block permutation matrices ("sigma matrices") of side n^2.

A sigma matrix is an n^2 x n^2 permutation matrix whose n x n blocks
each contain exactly one 1.  There are (n!)^(2n) of them, the same as
the number of pi matrices of order n, and the two families are linked
by a constructive bijection: block (s, t) gets its 1 at in-block row
``p[s][t]`` and in-block column ``p[n+t][s]``.

Storage is a packed bitset (one Python int, bit (i-1)*n^2 + (j-1) for
global 1-based position (i, j)), so disjointness of two matrices is a
single integer AND.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .errors import InfeasibleError, BudgetExhaustedError
from .perm import _is_perm_trusted
from .pi import check_pi, enumerate_pi
from .rng import RandomSource


def ratio_as_float(num: int, den: int) -> float:
    """num/den as a float; infinities instead of OverflowError."""
    try:
        return num / den
    except OverflowError:
        return math.inf if num > den else 0.0


@dataclass(frozen=True)
class SigmaMatrix:
    """Validated block permutation matrix in packed-bitset form."""

    n: int
    mask: int

    @property
    def side(self) -> int:
        return self.n * self.n

    @classmethod
    def from_rows(cls, rows: list[list[int]]) -> "SigmaMatrix":
        """Build from a dense 0/1 matrix; ValueError if it is not valid."""
        if not is_sigma(rows):
            raise ValueError("matrix is not a block permutation matrix")
        n = _block_order(len(rows))
        side = len(rows)
        mask = 0
        for i, row in enumerate(rows):
            # exactly one 1 per row, guaranteed by is_sigma
            mask |= 1 << (i * side + row.index(1))
        return cls(n, mask)

    @classmethod
    def from_ones(cls, n: int, ones: list[tuple[int, int]]) -> "SigmaMatrix":
        """Build from 1-based (row, column) positions of the 1-entries."""
        side = n * n
        rows = [[0] * side for _ in range(side)]
        for i, j in ones:
            if not (1 <= i <= side and 1 <= j <= side):
                raise ValueError(f"position ({i}, {j}) outside 1..{side}")
            rows[i - 1][j - 1] = 1
        return cls.from_rows(rows)

    def ones(self) -> list[tuple[int, int]]:
        """1-based (row, column) positions, sorted by row."""
        side = self.side
        out = []
        mask = self.mask
        for i in range(side):
            row_bits = (mask >> (i * side)) & ((1 << side) - 1)
            j = 0
            while row_bits:
                if row_bits & 1:
                    out.append((i + 1, j + 1))
                row_bits >>= 1
                j += 1
        return out

    def to_rows(self) -> list[list[int]]:
        """Dense 0/1 row lists."""
        side = self.side
        return [
            [(self.mask >> (i * side + j)) & 1 for j in range(side)]
            for i in range(side)
        ]


def _block_order(side: int) -> int:
    """n such that side = n^2; ValueError if side is not a perfect square."""
    n = round(side**0.5)
    if side < 1 or n * n != side:
        raise ValueError(f"matrix side {side} is not a positive perfect square")
    return n


def _phi_mask(rows: list[list[int]], n: int) -> int:
    # Trusted hot path: caller guarantees rows is a valid pi matrix.
    side = n * n
    mask = 0
    for s in range(n):
        row_s = rows[s]
        for t in range(n):
            k = row_s[t]
            l = rows[n + t][s]
            mask |= 1 << ((s * n + k - 1) * side + (t * n + l - 1))
    return mask


def phi(rows: list[list[int]]) -> SigmaMatrix:
    """Map a pi matrix to its block permutation matrix.

    Block (s, t) receives its single 1 at in-block position
    (rows[s][t], rows[n+t][s]).  Bijective; ValueError if the input
    violates the pi-matrix invariants.
    """
    n = check_pi(rows)
    return SigmaMatrix(n, _phi_mask(rows, n))


def phi_inverse(a: SigmaMatrix) -> list[list[int]]:
    """Recover the unique pi matrix whose image is ``a``.

    Scans each block for its 1 and writes both selector entries, then
    validates the row-permutation invariants; any mask that is not a
    valid block permutation matrix fails one of the two and raises
    ValueError.
    """
    n = a.n
    side = a.side
    rows = [[0] * n for _ in range(2 * n)]
    for s in range(n):
        for t in range(n):
            hit = None
            for k in range(1, n + 1):
                for l in range(1, n + 1):
                    bit = (s * n + k - 1) * side + (t * n + l - 1)
                    if (a.mask >> bit) & 1:
                        if hit is not None:
                            raise ValueError(f"block ({s + 1}, {t + 1}) has more than one 1")
                        hit = (k, l)
            if hit is None:
                raise ValueError(f"block ({s + 1}, {t + 1}) has no 1")
            rows[s][t] = hit[0]
            rows[n + t][s] = hit[1]
    for i, row in enumerate(rows, start=1):
        if not _is_perm_trusted(row, n):
            raise ValueError(f"input is not a block permutation matrix (row {i} conflict)")
    return rows


def is_sigma(rows: list[list[int]]) -> bool:
    """Membership check for dense 0/1 matrices, in two phases.

    Phase 1 accumulates row i and column i sums in one sweep, exiting as
    soon as a sum exceeds 1 or finishes at 0 (not a permutation matrix).
    Phase 2 sums each n x n block and requires exactly one 1.  The side
    must be a perfect square and entries must be 0/1; anything else is a
    malformed candidate and raises ValueError.
    """
    side = len(rows)
    n = _block_order(side)
    for i, row in enumerate(rows, start=1):
        if len(row) != side:
            raise ValueError(f"row {i} has length {len(row)}, expected {side}")
        for v in row:
            if v not in (0, 1):
                raise ValueError(f"entry {v!r} in row {i} is not binary")
    for i in range(side):
        r = 0
        c = 0
        for j in range(side):
            r += rows[i][j]
            if r > 1:
                return False
            c += rows[j][i]
            if c > 1:
                return False
        if r == 0 or c == 0:
            return False
    for s in range(n):
        for t in range(n):
            x = 0
            for i in range(n):
                for j in range(n):
                    x += rows[s * n + i][t * n + j]
            if x != 1:
                return False
    return True


def sigma_disjoint(a: SigmaMatrix, b: SigmaMatrix) -> bool:
    """True iff the two matrices share no 1-position."""
    if a.n != b.n:
        raise ValueError(f"order mismatch: {a.n} vs {b.n}")
    return (a.mask & b.mask) == 0


def gen_sigma_rejection(
    n: int,
    source: RandomSource,
    max_iterations: int | None = None,
) -> tuple[SigmaMatrix, int]:
    """Draw n^4 random bits, accept iff they form a block permutation matrix.

    Success probability per attempt is (n!)^(2n) / 2^(n^4): one half at
    n = 1, 16/65536 at n = 2, and hopeless beyond, so n >= 3 is refused
    outright with the expected iteration count.
    """
    if n < 1:
        raise ValueError(f"order must be >= 1, got {n}")
    if n >= 3:
        expected = _sigma_rejection_expected_iterations(n)
        raise InfeasibleError(
            f"blind bit-sampling at order {n} accepts with probability "
            f"about 1/{expected:.3g}; expected {expected:.3g} iterations. "
            f"Use the pi-matrix mapping instead.",
            expected_iterations=expected,
        )
    side = n * n
    uniform = source.uniform_int
    iterations = 0
    while True:
        iterations += 1
        rows = [[uniform(2) - 1 for _ in range(side)] for _ in range(side)]
        if is_sigma(rows):
            return SigmaMatrix.from_rows(rows), iterations
        if max_iterations is not None and iterations >= max_iterations:
            raise BudgetExhaustedError(
                f"no block permutation matrix of order {n} found in {iterations} attempts"
            )


def _sigma_rejection_expected_iterations(n: int) -> float:
    return ratio_as_float(2 ** (n**4), math.factorial(n) ** (2 * n))


def enumerate_sigma(n: int) -> Iterator[SigmaMatrix]:
    """All (n!)^(2n) block permutation matrices, via the pi bijection."""
    for rows in enumerate_pi(n):
        yield SigmaMatrix(n, _phi_mask(rows, n))
