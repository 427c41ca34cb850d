"""Empirical sharpness sweeps of the recovery accuracy bound."""

from __future__ import annotations

import csv
import io
import json
import math
import random
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__
from .decimal_approx import DecimalApprox
from .planner import plan_for_denominator_bound
from .recovery import RecoveryContractError, recover

CSV_HEADER = ["n_bound", "scale", "trials", "successes"]


@dataclass(frozen=True)
class SweepRow:
    n_bound: int
    scale: Fraction
    trials: int
    successes: int

    def __post_init__(self):
        if self.scale <= 0:
            raise ValueError("scale must be positive")
        if not 0 <= self.successes <= self.trials:
            raise ValueError("successes must lie in [0, trials]")


@dataclass
class SweepReport:
    rows: list[SweepRow]
    seed: int
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds"))
    version: str = __version__

    def __post_init__(self):
        self.rows = sorted(self.rows, key=lambda r: (r.n_bound, r.scale))

    @property
    def failures(self) -> list[SweepRow]:
        return [r for r in self.rows if r.successes < r.trials]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in self.rows:
            w.writerow([r.n_bound, _fmt(r.scale), r.trials, r.successes])
        return buf.getvalue()

    def as_dict(self) -> dict:
        return {
            "metadata": {"seed": self.seed, "timestamp": self.timestamp, "version": self.version},
            "rows": [
                {"n_bound": r.n_bound, "scale": _fmt(r.scale), "trials": r.trials, "successes": r.successes}
                for r in self.rows
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "SweepReport":
        meta = data["metadata"]
        rows = [SweepRow(int(r["n_bound"]), Fraction(r["scale"]), int(r["trials"]), int(r["successes"]))
                for r in data["rows"]]
        return cls(rows, seed=meta["seed"], timestamp=meta["timestamp"], version=meta["version"])


def _fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def random_reduced_fraction(rng: random.Random, n_bound: int) -> Fraction:
    """Uniform over reduced m/n with 1 <= n <= n_bound and 0 <= m <= 2n."""
    while True:
        n = rng.randint(1, n_bound)
        m = rng.randint(0, 2 * n_bound)
        if m <= 2 * n and math.gcd(m, n) == 1:
            return Fraction(m, n)


def run_cell(n_bound: int, scale: Fraction, trials: int, seed: int) -> SweepRow:
    # every cell seeds its own generator so cells can run in any order
    rng = random.Random(f"{seed}:{n_bound}:{scale}")
    plan = plan_for_denominator_bound(n_bound)
    successes = 0
    for _ in range(trials):
        target = random_reduced_fraction(rng, n_bound)
        shift = rng.choice((-1, 1)) * scale * plan.delta
        approx = DecimalApprox.from_rational(target + shift, plan.decimal_digits)
        try:
            successes += recover(approx, plan).value == target
        except RecoveryContractError:
            pass
    return SweepRow(n_bound, scale, trials, successes)


def run_sweep(n_bound_max: int, scales, trials: int, seed: int = 0) -> SweepReport:
    """Tally exact recoveries for every ``N`` in ``[2, n_bound_max]`` and scale."""
    if n_bound_max < 2:
        raise ValueError("n_bound_max must be >= 2")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    scales = sorted({Fraction(s) for s in scales})
    rows = [run_cell(n, s, trials, seed) for n in range(2, n_bound_max + 1) for s in scales]
    return SweepReport(rows, seed=seed)
