"""Randomized self-check of the counting engine against its oracle."""

from __future__ import annotations

import math
import random
from typing import Callable

from .intset import from_values
from .repcount import rep_count, rep_count_naive, rep_table


def run_selftest(
    trials: int = 60, seed: int = 0, emit: Callable[[str], None] = print
) -> bool:
    """Exhaustively compare the three counting routes on random small sets
    and check the multiset totality identity.  True when everything agrees."""
    rng = random.Random(seed)
    ok = True

    for trial in range(trials):
        size = rng.randint(1, 7)
        A = from_values(rng.sample(range(41), size))
        h = rng.choice([2, 3, 4])
        hi = h * A.max_element
        table = rep_table(A, h)
        for n in range(hi + 1):
            naive = rep_count_naive(A, h, n)
            fast = rep_count(A, h, n)
            batch = table.count(n)
            if not (naive == fast == batch):
                ok = False
                emit(
                    f"FAIL oracle trial={trial} A={list(A)} h={h} n={n}: "
                    f"naive={naive} fast={fast} table={batch}"
                )
                break

    for trial in range(trials):
        size = rng.randint(1, 10)
        A = from_values(rng.sample(range(61), size))
        h = rng.choice([2, 3, 4, 5])
        expected = math.comb(len(A) + h - 1, h)
        total = rep_table(A, h).total()
        if total != expected:
            ok = False
            emit(
                f"FAIL totality trial={trial} A={list(A)} h={h}: "
                f"sum={total} expected={expected}"
            )

    emit("selftest: " + ("all checks passed" if ok else "FAILURES detected"))
    return ok
