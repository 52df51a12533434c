"""
montecensus.volume

Volume bounds for the mutant families and the inequality chain showing that
their number outgrows v^(v/8). Volumes are never computed, only bounded in
multiples of v_oct, the volume of the regular ideal octahedron.

Every inequality is checked on logarithms at `config.precision()` digits.
Two sides closer than `config.COMPARISON_MARGIN` are not decided
numerically: they are indeterminate unless an exact identity settles them.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import wraps
from typing import Self

import mpmath

from montecensus import config
from montecensus.logger import log


def working_precision(fn):
    @wraps(fn)
    def wrapper(*args, **kwargs):
        with mpmath.workdps(config.precision()):
            return fn(*args, **kwargs)

    return wrapper


def _real(value: Fraction | int) -> mpmath.mpf:
    value = Fraction(value)
    return mpmath.mpf(value.numerator) / value.denominator


def decimal(x: mpmath.mpf) -> str:
    return mpmath.nstr(x, config.REPORT_DIGITS, strip_zeros=False)


@working_precision
def v_oct() -> mpmath.mpf:
    """Volume of the regular ideal octahedron, 4 times Catalan's constant"""
    return 4 * mpmath.catalan


@dataclass(frozen=True)
class VolumeBound:
    """lower_oct·v_oct ≤ v ≤ upper_oct·v_oct"""

    lower_oct: Fraction
    upper_oct: Fraction
    lower: mpmath.mpf
    upper: mpmath.mpf

    @classmethod
    @working_precision
    def from_oct(cls, lower_oct: Fraction, upper_oct: Fraction) -> Self:
        lower_oct, upper_oct = Fraction(lower_oct), Fraction(upper_oct)
        if lower_oct > upper_oct:
            raise ValueError(f"empty volume interval [{lower_oct}, {upper_oct}]")
        unit = v_oct()
        return cls(
            lower_oct, upper_oct, _real(lower_oct) * unit, _real(upper_oct) * unit
        )

    def to_json(self) -> dict:
        return {
            "lower_oct": str(self.lower_oct),
            "upper_oct": str(self.upper_oct),
            "lower": decimal(self.lower),
            "upper": decimal(self.upper),
        }

    @classmethod
    def from_json(cls, json: dict) -> Self:
        return cls.from_oct(Fraction(json["lower_oct"]), Fraction(json["upper_oct"]))


def volume_bounds(n: int) -> VolumeBound:
    """((2n-1)/2)·v_oct ≤ v_n ≤ (4n+2)·v_oct for the complement of K_{2n+1}"""
    if n < 2:
        raise ValueError(f"volume bounds need n ≥ 2, got {n}")
    return VolumeBound.from_oct(Fraction(2 * n - 1, 2), Fraction(4 * n + 2))


def closed_volume_bound(n: int) -> Fraction:
    """Dehn fillings of the mutants stay below (4n+2)·v_oct (in v_oct units)"""
    if n < 2:
        raise ValueError(f"volume bounds need n ≥ 2, got {n}")
    return Fraction(4 * n + 2)


@working_precision
def log_factorial(n: int) -> mpmath.mpf:
    if n < 0:
        raise ValueError(f"factorial of negative {n}")
    if n < 2:
        return mpmath.mpf(0)
    return mpmath.loggamma(n + 1)


@working_precision
def log_stirling_lower(n: int) -> mpmath.mpf:
    """log of √(2πn)(n/e)^n, a lower bound of log n! for n ≥ 1"""
    if n < 1:
        raise ValueError(f"the Stirling estimate needs n ≥ 1, got {n}")
    return mpmath.log(2 * mpmath.pi * n) / 2 + n * (mpmath.log(n) - 1)


@working_precision
def stirling_lower(n: int) -> mpmath.mpf:
    return mpmath.exp(log_stirling_lower(n))


class Verdict(Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INDETERMINATE = "indeterminate"


@working_precision
def compare_logs(
    lhs: mpmath.mpf, rhs: mpmath.mpf, strict: bool, exactly_equal: bool = False
) -> Verdict:
    """Decide lhs > rhs (strict) or lhs ≥ rhs on logarithms.

    `exactly_equal` states that both sides are known to be equal by an exact
    identity, which settles a numerical tie.
    """
    diff = lhs - rhs
    if abs(diff) <= mpmath.mpf(config.COMPARISON_MARGIN):
        if exactly_equal:
            return Verdict.FAILS if strict else Verdict.HOLDS
        return Verdict.INDETERMINATE
    assert not exactly_equal, f"sides differ by {diff} but claimed equal"
    return Verdict.HOLDS if diff > 0 else Verdict.FAILS


@dataclass(frozen=True)
class ChainStep:
    label: str
    lhs: mpmath.mpf
    rhs: mpmath.mpf
    strict: bool
    verdict: Verdict

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "lhs": decimal(self.lhs),
            "rhs": decimal(self.rhs),
            "holds": self.holds,
            "verdict": self.verdict.value,
        }


STIRLING = "(2n)! >= sqrt(4 pi n) (2n/e)^(2n)"
HALF_FACTORIAL = "(2n)!/2 > (2n/e)^(2n)"
VOLUME_BASE = "(2n/e)^(2n) >= (v/(2e v_oct) - 1/e)^(v/(2 v_oct) - 1)"
NUMERIC_BASE = "(v/(2e v_oct) - 1/e)^(v/(2 v_oct) - 1) > (v/20 - 1/e)^(v/7.5 - 1)"
FINAL = "(2n)!/2 >= v^(v/8)"

CHAIN = (STIRLING, HALF_FACTORIAL, VOLUME_BASE, NUMERIC_BASE, FINAL)


@dataclass(frozen=True)
class GrowthCertificate:
    """The chain (2n)!/2 > ... ≥ v^(v/8) evaluated at the upper bound
    v = (4n+2)·v_oct.

    x ↦ x^(x/8) increases for x ≥ 1, so the final claim at the upper bound
    covers every volume below it. `holds` reflects the final claim only.
    """

    n: int
    v_upper: mpmath.mpf
    log_count: mpmath.mpf
    log_target: mpmath.mpf
    holds: bool
    chain_steps: tuple[ChainStep, ...]

    def step(self, label: str) -> ChainStep:
        for s in self.chain_steps:
            if s.label == label:
                return s
        raise KeyError(label)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "v_upper": decimal(self.v_upper),
            "log_count": decimal(self.log_count),
            "log_target": decimal(self.log_target),
            "holds": self.holds,
            "chain": [s.to_json() for s in self.chain_steps],
        }


def _step(label, lhs, rhs, strict, exactly_equal=False) -> ChainStep:
    return ChainStep(
        label, lhs, rhs, strict, compare_logs(lhs, rhs, strict, exactly_equal)
    )


@working_precision
def growth_certificate(n: int) -> GrowthCertificate:
    bounds = volume_bounds(n)
    v = bounds.upper
    e = mpmath.e

    log_fact = log_factorial(2 * n)
    log_count = log_fact - mpmath.log(2)
    log_power = 2 * n * (mpmath.log(2 * n) - 1)

    # v/(2 v_oct) is the exact rational 2n+1 at the upper bound.
    half = bounds.upper_oct / 2
    exponent = half - 1
    log_volume_power = _real(exponent) * (mpmath.log(_real(exponent)) - 1)

    numeric_base = v / 20 - 1 / e
    if numeric_base <= 0:
        raise ValueError(f"v/20 - 1/e is not positive at n = {n}")
    log_numeric = (v / mpmath.mpf("7.5") - 1) * mpmath.log(numeric_base)

    log_target = v / 8 * mpmath.log(v)

    steps = (
        _step(STIRLING, log_fact, log_stirling_lower(2 * n), strict=False),
        _step(HALF_FACTORIAL, log_count, log_power, strict=True),
        _step(
            VOLUME_BASE,
            log_power,
            log_volume_power,
            strict=False,
            exactly_equal=exponent == 2 * n,
        ),
        _step(NUMERIC_BASE, log_volume_power, log_numeric, strict=True),
        _step(FINAL, log_count, log_target, strict=False),
    )
    return GrowthCertificate(
        n=n,
        v_upper=v,
        log_count=log_count,
        log_target=log_target,
        holds=steps[-1].holds,
        chain_steps=steps,
    )


@working_precision
def growth_gap(n: int) -> mpmath.mpf:
    """log((2n)!/2) - (v/8)·log v at the upper-bound volume"""
    v = volume_bounds(n).upper
    return log_factorial(2 * n) - mpmath.log(2) - v / 8 * mpmath.log(v)


def _final_holds(n: int) -> bool:
    return growth_certificate(n).holds


def growth_threshold(limit: int = 2**80) -> int:
    """The least n ≥ 2 for which (2n)!/2 ≥ v^(v/8) at the upper bound.

    The gap starts negative, decreases while 0.17·log n stays below 5.5,
    then grows without bound, so it changes sign exactly once and doubling
    followed by bisection finds the crossing.
    """
    lo = 2
    if _final_holds(lo):
        return lo
    hi = 4
    while not _final_holds(hi):
        lo, hi = hi, hi * 2
        if hi > limit:
            raise ValueError(f"no growth threshold below {limit}")
    log.debug(f"growth threshold between {lo} and {hi}")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _final_holds(mid):
            hi = mid
        else:
            lo = mid
    log.info(f"growth threshold n0 = {hi}")
    return hi


@dataclass(frozen=True)
class GrowthScan:
    """Certificates over a range of n.

    `thresholds` gives, per chain step, the least n from which the step holds
    through `n_max` (None if it fails at `n_max`). `violations` lists every n
    after the first certified one where the final claim fails.
    """

    n_min: int
    n_max: int
    first_holding: int | None
    thresholds: dict[str, int | None]
    violations: tuple[int, ...]

    @property
    def monotone(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "n_min": self.n_min,
            "n_max": self.n_max,
            "first_holding": self.first_holding,
            "thresholds": self.thresholds,
            "violations": list(self.violations),
        }


def growth_scan(n_min: int, n_max: int, certificates: list | None = None) -> GrowthScan:
    """Scan certificates for n_min..n_max, appending them to `certificates`"""
    if not 2 <= n_min <= n_max:
        raise ValueError(f"expected 2 ≤ n_min ≤ n_max, got {n_min}..{n_max}")

    last_failure: dict[str, int | None] = {label: None for label in CHAIN}
    first_holding = None
    violations = []
    for n in range(n_min, n_max + 1):
        cert = growth_certificate(n)
        if certificates is not None:
            certificates.append(cert)
        for step in cert.chain_steps:
            if not step.holds:
                last_failure[step.label] = n
        if cert.holds and first_holding is None:
            first_holding = n
        elif not cert.holds and first_holding is not None:
            log.error(f"growth claim fails at n = {n} after holding at {first_holding}")
            violations.append(n)

    thresholds = {
        label: n_min if fail is None else (fail + 1 if fail < n_max else None)
        for label, fail in last_failure.items()
    }
    return GrowthScan(n_min, n_max, first_holding, thresholds, tuple(violations))
