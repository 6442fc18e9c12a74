import random
from collections import Counter
from itertools import combinations_with_replacement

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "sumrep",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("sumrep")


def multiset_sum_counts(values, h):
    """Batch oracle independent of the package: enumerate every nondecreasing
    h-tuple via combinations_with_replacement and bucket the sums."""
    return Counter(sum(t) for t in combinations_with_replacement(sorted(values), h))


def multiset_tops(values, h, n):
    """Oracle for distinct non-diagonal top summands of n."""
    return {
        t[-1]
        for t in combinations_with_replacement(sorted(values), h)
        if sum(t) == n and t[0] < t[-1]
    }


@pytest.fixture
def rng():
    return random.Random(20260809)
