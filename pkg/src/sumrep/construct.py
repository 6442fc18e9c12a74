"""Greedy construction of dense-enough prefixes with many representations.

``greedy_repair`` scans pair sums n = 0, 1, ... of an evolving set A and,
whenever n is a sum of two elements but has fewer than ``ell``
representations, inserts new elements of the form n - a until the count
reaches ell.  Repair partners a are restricted to a <= n/2, so every
inserted element is >= n/2.  Consequently a run with horizon T can only be
disturbed below floor(T/2) by its own repairs, never by later ones: that
value is the certified watermark W, and only sums up to W are repaired.

After the scan the result is re-certified from scratch through the
verification layer (least threshold + premise check on [n0, W]); the
construction's incremental bookkeeping is never trusted for the verdict.
"""

from __future__ import annotations

import io
import json
import math
import os
from bisect import bisect_right, insort
from dataclasses import dataclass

import numpy as np

from .errors import CertificateError, ParameterError
from .intset import IntegerSet, counting, from_values
from .verify import Mode, bound_value, check_premise, compute_k0, min_threshold

STRATEGIES = ("smallest-new", "largest-new", "balanced")


@dataclass(frozen=True)
class ConstructionLog:
    """Full trace of one greedy run, including its certification status."""

    target_ell: int
    horizon: int
    strategy: str
    seed_set: IntegerSet
    additions: tuple[tuple[int, int], ...]  # (element added, trigger sum n)
    failures: tuple[tuple[int, int], ...]  # (n, count reached) left deficient
    watermark: int
    final_set: IntegerSet
    certified: bool
    n0: int | None
    checked_count: int
    density_curve: tuple[tuple[int, int], ...]  # (x, A(x))

    def to_dict(self) -> dict:
        return {
            "schema_version": 1,
            "target_ell": self.target_ell,
            "horizon": self.horizon,
            "strategy": self.strategy,
            "seed": list(self.seed_set.elements),
            "additions": [list(a) for a in self.additions],
            "failures": [list(f) for f in self.failures],
            "watermark": self.watermark,
            "final": list(self.final_set.elements),
            "certified": self.certified,
            "n0": self.n0,
            "checked_count": self.checked_count,
            "density_curve": [list(p) for p in self.density_curve],
        }

    def to_json(self, meta: dict | None = None) -> str:
        doc = self.to_dict()
        if meta:
            doc["meta"] = meta
        return json.dumps(doc, indent=2)

    @classmethod
    def from_dict(cls, doc: dict) -> "ConstructionLog":
        return cls(
            target_ell=doc["target_ell"],
            horizon=doc["horizon"],
            strategy=doc["strategy"],
            seed_set=from_values(doc["seed"]),
            additions=tuple((int(e), int(n)) for e, n in doc["additions"]),
            failures=tuple((int(n), int(c)) for n, c in doc["failures"]),
            watermark=doc["watermark"],
            final_set=from_values(doc["final"]),
            certified=doc["certified"],
            n0=doc["n0"],
            checked_count=doc["checked_count"],
            density_curve=tuple((int(x), int(c)) for x, c in doc["density_curve"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "ConstructionLog":
        return cls.from_dict(json.loads(text))

    def save(self, path: str | os.PathLike) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json())

    @classmethod
    def load(cls, path: str | os.PathLike) -> "ConstructionLog":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(fh.read())


def _checkpoints(horizon: int) -> list[int]:
    xs = []
    x = 1
    while x < horizon:
        xs.append(x)
        x *= 2
    xs.append(horizon)
    return xs


def greedy_repair(
    ell: int,
    horizon: int,
    strategy: str = "smallest-new",
    seed: IntegerSet | None = None,
) -> ConstructionLog:
    """Grow a set so that every certified pair sum has >= ell representations.

    Deficient sums n <= W = floor(horizon/2) are repaired in increasing
    order; a repair inserts the strategy's choice of e = n - a with a in A,
    a <= n/2, e not yet in A:

      * ``smallest-new``: least such e (partner just below n/2);
      * ``largest-new``: greatest such e (partner near 0, e close to n);
      * ``balanced``: alternate between the two choices per insertion.

    Sums whose repair candidates run out are logged as failures and left to
    the certification threshold.  The returned log is certified when the
    independent premise re-check passes on [n0, W].
    """
    if ell < 2:
        raise ParameterError(f"ell must be >= 2, got {ell}")
    if strategy not in STRATEGIES:
        raise ParameterError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    if seed is None:
        seed = from_values([0, 1])
    if not seed:
        raise ParameterError("seed set must be nonempty")
    if horizon < 2 * seed.max_element:
        raise ParameterError(
            f"horizon {horizon} below 2*max(seed) = {2 * seed.max_element}"
        )

    watermark = horizon // 2
    members = set(seed.elements)
    ordered = list(seed.elements)
    counts = np.zeros(2 * horizon + 1, dtype=np.int64)
    for i, a in enumerate(seed.elements):
        for b in seed.elements[i:]:
            counts[a + b] += 1

    buf = np.empty(max(1024, 2 * len(ordered)), dtype=np.int64)
    buf[: len(ordered)] = ordered
    size = len(ordered)

    additions: list[tuple[int, int]] = []
    failures: list[tuple[int, int]] = []
    pick_toggle = 0

    def candidate(n: int, want_small_e: bool) -> int | None:
        """Partner-constrained new element for n, or None when exhausted.

        Scans members a <= n/2 (descending for the smallest new e,
        ascending for the largest); every scanned member with n - a
        already present is one existing representation, so the scan visits
        at most ell members before finding a hole or running out.
        """
        half = n // 2
        hi = bisect_right(ordered, half)
        rng = range(hi - 1, -1, -1) if want_small_e else range(hi)
        for i in rng:
            a = ordered[i]
            if (n - a) not in members:
                return n - a
        return None

    def insert(e: int, trigger: int) -> None:
        nonlocal buf, size
        counts[buf[:size] + e] += 1
        counts[2 * e] += 1
        if size == len(buf):
            grown = np.empty(2 * len(buf), dtype=np.int64)
            grown[:size] = buf
            buf = grown
        buf[size] = e
        size += 1
        members.add(e)
        insort(ordered, e)
        additions.append((e, trigger))

    for n in range(0, watermark + 1):
        if counts[n] == 0:
            continue
        while counts[n] < ell:
            if strategy == "smallest-new":
                e = candidate(n, want_small_e=True)
            elif strategy == "largest-new":
                e = candidate(n, want_small_e=False)
            else:
                e = candidate(n, want_small_e=(pick_toggle % 2 == 0))
                pick_toggle += 1
            if e is None:
                failures.append((n, int(counts[n])))
                break
            insert(e, n)

    final = from_values(ordered)
    n0 = min_threshold(final, 2, ell, Mode.prefix(watermark))
    certified = False
    checked = 0
    if n0 is not None:
        report = check_premise(final, 2, ell, n0, Mode.prefix(watermark))
        certified = report.holds
        checked = report.checked_count

    curve = tuple((x, counting(final, x)) for x in _checkpoints(horizon))
    return ConstructionLog(
        target_ell=ell,
        horizon=horizon,
        strategy=strategy,
        seed_set=seed,
        additions=tuple(additions),
        failures=tuple(failures),
        watermark=watermark,
        final_set=final,
        certified=certified,
        n0=n0,
        checked_count=checked,
        density_curve=curve,
    )


@dataclass(frozen=True)
class DensityRow:
    x: int
    count: int
    lower_bound: float
    log_sq_ref: float

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "Ax": self.count,
            "lower_bound": self.lower_bound,
            "log_sq_ref": self.log_sq_ref,
        }


@dataclass(frozen=True)
class DensityReport:
    theorem_id: str
    k0: int
    rows: tuple[DensityRow, ...]
    final_ratio: float  # A(T) / (log T)^2, reported without any threshold

    def to_dict(self) -> dict:
        return {
            "schema_version": 1,
            "theorem": self.theorem_id,
            "k0": self.k0,
            "rows": [r.to_dict() for r in self.rows],
            "final_ratio": self.final_ratio,
        }

    def csv_text(self) -> str:
        out = io.StringIO()
        out.write("x,Ax,lower_bound,log_sq_ref\n")
        for r in self.rows:
            out.write(f"{r.x},{r.count},{r.lower_bound!r},{r.log_sq_ref!r}\n")
        return out.getvalue()

    def to_csv(self, path: str | os.PathLike) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.csv_text())


def density_report(log: ConstructionLog) -> DensityReport:
    """Density of a certified construction against its guaranteed bound.

    Rows pair A(x) with the applicable logarithmic lower bound (the ell=2
    chain bound, or the ell>=3 pair-sum bound) and the (log x)^2 reference
    curve.  At x = horizon the bound must hold; a violation means the
    construction or the verifier is broken, so it raises.
    """
    if not log.certified or log.n0 is None:
        raise ParameterError("density_report requires a certified construction log")
    theorem_id = "T1" if log.target_ell == 2 else "T2"
    ell = log.target_ell
    k0 = compute_k0(log.final_set, 2, log.n0)
    rows = []
    for x, count in log.density_curve:
        if x < 2:
            continue
        lb = bound_value(theorem_id, 2, ell, None, k0, x)
        rows.append(
            DensityRow(x=x, count=count, lower_bound=lb, log_sq_ref=math.log(x) ** 2)
        )
    last = rows[-1]
    if last.x == log.horizon and last.count <= last.lower_bound:
        raise CertificateError(
            f"certified construction violates its lower bound at x={last.x}: "
            f"A(x)={last.count} <= {last.lower_bound}"
        )
    ratio = last.count / (math.log(last.x) ** 2)
    return DensityReport(theorem_id=theorem_id, k0=k0, rows=tuple(rows), final_ratio=ratio)
