"""Shared exhaustive-sweep machinery for the recovery property tests."""

import math
from fractions import Fraction

from ratrecover.contfrac import cf_expand
from ratrecover.decimal_approx import DecimalApprox
from ratrecover.planner import plan_for_denominator_bound
from ratrecover.recovery import RecoveryContractError, recover, trace_expansion


def perturbations(delta):
    near = delta * (1 - Fraction(1, 10**6))
    return [Fraction(0), near, -near, delta / 2, -delta / 2, delta / 7, -delta / 7]


def targets(n_bound):
    for n in range(1, n_bound + 1):
        for m in range(0, 2 * n + 1):
            if math.gcd(m, n) == 1:
                yield Fraction(m, n)


def remainder_chain(target):
    """n1, n2, ... for the fractional part of target: n1 = den, n_{i+2} = n_i mod n_{i+1}."""
    n1 = target.denominator
    chain = [n1, target.numerator % n1]
    while chain[-1]:
        chain.append(chain[-2] % chain[-1])
    return chain  # chain[i] is n_{i+1}


def check_case(target, approx, plan):
    """Return a list of violated properties (empty when everything holds)."""
    problems = []
    try:
        result = recover(approx, plan)
    except RecoveryContractError as exc:
        return [f"contract error: {exc}"]
    if result.value != target:
        problems.append(f"recovered {result.value}")

    want = list(cf_expand(target))
    got = list(result.quotients_used)
    if not (got == want or got == want[:-1] + [want[-1] - 1, 1]):
        problems.append(f"quotients {got} vs target {want}")

    steps = trace_expansion(approx, plan.epsilon_stop)
    for a, b in steps:
        by_remainder = b < plan.epsilon_stop
        by_quotient = b > 0 and math.floor(1 / b) >= plan.k_threshold
        if b and by_remainder != by_quotient:
            problems.append(f"stop rules disagree at remainder {b}")

    if target.denominator > 1:
        chain = remainder_chain(target)
        L = len(want) - 1
        for k in range(0, L - 1):
            if k + 1 >= len(steps):
                break
            nk1, nk2, nk3 = chain[k], chain[k + 1], chain[k + 2]
            d_k = steps[k].remainder - Fraction(nk2, nk1)
            d_next = steps[k + 1].remainder - Fraction(nk3, nk2)
            if d_k == 0:
                if d_next != 0:
                    problems.append(f"residual appeared from zero at step {k}")
                continue
            ratio = Fraction(nk1 * (nk1 - 1), nk2 * (nk2 - 1))
            if not abs(d_next) < ratio * abs(d_k):
                problems.append(f"residual grew at step {k}: {d_k} -> {d_next}")
    return problems


def run_theorem_sweep(n_max):
    """Yield (N, target, approx, problems) over the full deterministic sweep."""
    for N in range(2, n_max + 1):
        plan = plan_for_denominator_bound(N)
        for target in targets(N):
            for shift in perturbations(plan.delta):
                approx = DecimalApprox.from_rational(target + shift, plan.decimal_digits)
                yield N, target, approx, check_case(target, approx, plan)
