"""Exact h-fold sumsets and representation counts.

``rep_count`` counts nondecreasing h-tuples over A summing to n (multiset
count).  Three independent routes exist on purpose:

  * ``rep_count_naive``: exhaustive recursive enumeration, the correctness
    oracle for everything else;
  * ``rep_count``: memoized index recursion (reuse current element or
    advance), fast for single n;
  * ``rep_table``: a batched dynamic program over the sorted elements that
    fills a whole window at once, O(|A| * h * window).

Table counts live in unsigned 64 bits.  When the multiset total
C(|A|+h-1, h) fits in u64, no intermediate cell can overflow and the DP
runs on numpy; otherwise an arbitrary-precision sweep runs and any count
exceeding u64 aborts rather than saturating.

A table built from a prefix of a larger set is exact for all n up to the
prefix completeness bound M: every summand of such an n is itself <= M,
hence visible in the prefix.  ``exactness_bound`` records that window.
"""

from __future__ import annotations

import io
import math
import os
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import CountOverflowError, ParameterError, WindowError
from .intset import U64_MAX, IntegerSet, ensure_headroom, from_values


def rep_count_naive(A: IntegerSet, h: int, n: int) -> int:
    """Count nondecreasing h-tuples summing to n by exhaustive recursion.

    Correctness oracle; intended for small inputs (|A| <= ~12, h <= ~5).
    Prefixes whose partial sum already exceeds n are dropped — safe because
    all elements are nonnegative.
    """
    if h < 1:
        raise ParameterError(f"h must be >= 1, got {h}")
    if n < 0:
        return 0
    els = A.elements

    def go(i: int, left: int, acc: int) -> int:
        if acc > n:
            return 0
        if left == 0:
            return 1 if acc == n else 0
        total = 0
        for t in range(i, len(els)):
            total += go(t, left - 1, acc + els[t])
        return total

    return go(0, h, 0)


def rep_count(A: IntegerSet, h: int, n: int) -> int:
    """Exact r_{A,h}(n): nondecreasing h-tuples over A summing to n."""
    if h < 1:
        raise ParameterError(f"h must be >= 1, got {h}")
    if n < 0 or not A.elements:
        return 0
    els = A.elements
    top = els[-1]
    memo: dict[tuple[int, int, int], int] = {}

    def go(i: int, left: int, s: int) -> int:
        if left == 0:
            return 1 if s == 0 else 0
        if i == len(els):
            return 0
        if s < left * els[i] or s > left * top:
            return 0
        key = (i, left, s)
        cached = memo.get(key)
        if cached is not None:
            return cached
        # use els[i] once more, or never again
        result = go(i, left - 1, s - els[i]) + go(i + 1, left, s)
        memo[key] = result
        return result

    return go(0, h, n)


def _numpy_safe(set_size: int, h: int) -> bool:
    """True when no DP cell can exceed u64: every cell is bounded by the
    multiset total C(set_size + h - 1, h)."""
    return math.comb(set_size + h - 1, h) <= U64_MAX


def _dp_numpy(elements: Sequence[int], h: int, hi: int) -> np.ndarray:
    dp = np.zeros((h + 1, hi + 1), dtype=np.uint64)
    dp[0, 0] = 1
    for a in elements:
        if a > hi:
            break
        for j in range(1, h + 1):
            if a == 0:
                dp[j, :] += dp[j - 1, :]
            else:
                dp[j, a:] += dp[j - 1, : hi + 1 - a]
    return dp[h]


def _dp_python(elements: Sequence[int], h: int, hi: int) -> list[int]:
    dp = [[0] * (hi + 1) for _ in range(h + 1)]
    dp[0][0] = 1
    for a in elements:
        if a > hi:
            break
        for j in range(1, h + 1):
            row, prev = dp[j], dp[j - 1]
            for s in range(a, hi + 1):
                row[s] += prev[s - a]
    worst = max(dp[h]) if dp[h] else 0
    if worst > U64_MAX:
        raise CountOverflowError(
            f"representation count {worst} exceeds the unsigned 64-bit range"
        )
    return dp[h]


@dataclass(frozen=True)
class RepTable:
    """Exact r_{A,h}(n) on the window [lo, hi], with exactness metadata.

    ``exactness_bound`` is the largest n whose count is trustworthy for the
    underlying (possibly infinite) set; the table may extend beyond it.
    ``trimmed`` flags a requested window cut back to [0, h*max(A)].
    """

    base_set: IntegerSet
    h: int
    lo: int
    hi: int
    values: tuple[int, ...]
    exactness_bound: int
    trimmed: bool

    def count(self, n: int) -> int:
        if not (self.lo <= n <= self.hi):
            raise WindowError(f"n={n} outside table window [{self.lo}, {self.hi}]")
        return self.values[n - self.lo]

    def in_sumset(self, n: int) -> bool:
        return self.count(n) >= 1

    def items(self) -> Iterator[tuple[int, int]]:
        for i, c in enumerate(self.values):
            yield self.lo + i, c

    def support(self) -> tuple[int, ...]:
        """All n in the window with a positive count (members of hA)."""
        return tuple(n for n, c in self.items() if c >= 1)

    def total(self) -> int:
        return sum(self.values)

    def max_count(self) -> int:
        return max(self.values) if self.values else 0

    def csv_text(self) -> str:
        out = io.StringIO()
        out.write(
            f"# h={self.h} |A|={len(self.base_set)} "
            f"exactness_bound={self.exactness_bound}\n"
        )
        out.write("n,count\n")
        for n, c in self.items():
            out.write(f"{n},{c}\n")
        return out.getvalue()

    def to_csv(self, path: str | os.PathLike) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.csv_text())


def rep_table(
    A: IntegerSet,
    h: int,
    window: tuple[int, int] | None = None,
    prefix_bound: int | None = None,
    threads: int | None = None,
) -> RepTable:
    """Batch-compute r_{A,h}(n) for every n in the window.

    ``prefix_bound=M`` asserts that A contains every element of the true
    set up to M; counts are then exact for all n <= M.  Without it the set
    is treated as complete and the exactness bound is h*max(A).

    The result is independent of ``threads``; the cap exists for interface
    symmetry with the verification layer.
    """
    if h < 1:
        raise ParameterError(f"h must be >= 1, got {h}")
    if threads is not None and threads < 1:
        raise ParameterError(f"thread cap must be >= 1, got {threads}")
    ensure_headroom(A, h, "rep_table")
    full = h * A.max_element if A.elements else 0
    if window is None:
        window = (0, full)
    lo, hi = window
    if lo > hi:
        raise WindowError(f"empty window [{lo}, {hi}]")
    trimmed = False
    if lo < 0:
        lo, trimmed = 0, True
    if hi > full:
        hi, trimmed = full, True
    if lo > hi:
        # window fell entirely above h*max(A)
        lo, hi = full, full
    if prefix_bound is not None:
        if prefix_bound < 0:
            raise ParameterError(f"prefix bound must be >= 0, got {prefix_bound}")
        bound = prefix_bound
    else:
        bound = full

    if _numpy_safe(len(A), h):
        row = _dp_numpy(A.elements, h, hi)
        values = tuple(int(c) for c in row[lo : hi + 1])
    else:
        row = _dp_python(A.elements, h, hi)
        values = tuple(row[lo : hi + 1])
    return RepTable(
        base_set=A,
        h=h,
        lo=lo,
        hi=hi,
        values=values,
        exactness_bound=bound,
        trimmed=trimmed,
    )


def _mask_to_elements(mask: int, limit: int) -> tuple[int, ...]:
    """Set bit positions of mask up to limit, via byte unpacking."""
    if mask == 0 or limit < 0:
        return ()
    nbytes = limit // 8 + 1
    mask &= (1 << (limit + 1)) - 1
    raw = mask.to_bytes(nbytes, "little")
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
    return tuple(int(i) for i in np.nonzero(bits)[0])


def sumset(A: IntegerSet, h: int, cap: int | None = None) -> IntegerSet:
    """The h-fold sumset {n <= cap : n is a sum of h elements of A}.

    cap defaults to h*max(A), the largest possible sum.
    """
    if h < 1:
        raise ParameterError(f"h must be >= 1, got {h}")
    if not A.elements:
        return from_values([])
    ensure_headroom(A, h, "sumset")
    full = h * A.elements[-1]
    if cap is None:
        cap = full
    if cap < 0:
        raise ParameterError(f"cap must be >= 0, got {cap}")
    cap = min(cap, full)

    mask = 0
    for a in A.elements:
        mask |= 1 << a
    reach = mask
    for _ in range(h - 1):
        layer = 0
        for a in A.elements:
            layer |= reach << a
        reach = layer
    return IntegerSet(_mask_to_elements(reach, cap))
