"""Permutations of {1..n}: membership check and two random generators.

A permutation is represented as a plain list of 1-based values.  The
rejection generator draws n values blindly and retries until they form
a permutation (success probability n!/n^n per attempt); the direct
generator consumes exactly n draws and never rejects.
"""

from __future__ import annotations

from .errors import BudgetExhaustedError
from .rng import RandomSource


def is_permutation(values: list[int], n: int | None = None) -> bool:
    """True iff ``values`` is a permutation of {1..n} (n = len by default).

    Single pass over a count array, exiting on the first duplicate.
    Values outside {1..n} raise ValueError (the input is then not even a
    well-formed candidate tuple).
    """
    if n is None:
        n = len(values)
    if n < 1:
        raise ValueError(f"order must be >= 1, got {n}")
    if len(values) != n:
        return False
    seen = [False] * (n + 1)
    for a in values:
        if not 1 <= a <= n:
            raise ValueError(f"tuple value {a} outside range 1..{n}")
        if seen[a]:
            return False
        seen[a] = True
    return True


def _is_perm_trusted(values: list[int], n: int) -> bool:
    # Same check without the range guard; for values known to be in 1..n.
    seen = [False] * (n + 1)
    for a in values:
        if seen[a]:
            return False
        seen[a] = True
    return True


def gen_perm_rejection(
    n: int,
    source: RandomSource,
    max_iterations: int | None = None,
) -> tuple[list[int], int]:
    """Draw n uniform values until they happen to form a permutation.

    Returns (permutation, number of attempts).  Las Vegas: terminates
    with probability 1; ``max_iterations`` optionally bounds the attempt
    count and raises BudgetExhaustedError when exceeded.
    """
    if n < 1:
        raise ValueError(f"order must be >= 1, got {n}")
    uniform = source.uniform_int
    iterations = 0
    while True:
        iterations += 1
        candidate = [uniform(n) for _ in range(n)]
        if _is_perm_trusted(candidate, n):
            return candidate, iterations
        if max_iterations is not None and iterations >= max_iterations:
            raise BudgetExhaustedError(
                f"no permutation of order {n} found in {iterations} attempts"
            )


def gen_perm_direct(n: int, source: RandomSource, variant: str = "shift") -> list[int]:
    """Uniform random permutation from exactly n draws, never rejecting.

    Draw k selects position x in the remaining pool of n-k+1 values.
    The default "shift" variant deletes the chosen value by shifting the
    tail left one slot, which costs O(n) per draw and O(n^2) overall.
    The "swap" variant instead moves the last live value into the hole,
    O(1) per draw; it exists for benchmarking the difference.
    """
    if n < 1:
        raise ValueError(f"order must be >= 1, got {n}")
    if variant not in ("shift", "swap"):
        raise ValueError(f"unknown variant {variant!r}")
    uniform = source.uniform_int
    v = list(range(1, n + 1))
    out = []
    if variant == "swap":
        for live in range(n, 0, -1):
            x = uniform(live)
            out.append(v[x - 1])
            v[x - 1] = v[live - 1]
        return out
    for live in range(n, 0, -1):
        x = uniform(live)
        out.append(v[x - 1])
        for j in range(x - 1, live - 1):
            v[j] = v[j + 1]
    return out
