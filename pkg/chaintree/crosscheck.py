"""End-to-end agreement checks between all counting methods and the codec."""
import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from .core import ChainProfile, validate_diagram
from .counting import (
    closed_form_table,
    count_by_lagrange,
    count_irregular,
    count_regular,
    count_rooted,
    h_closed_form,
    h_sequence_recurrence,
    recurrence_table,
    series_table,
)
from .oracle import (
    EnumerationBudget,
    count_rooted_exhaustive,
    count_unrooted,
    enumerate_profiles,
    enumerate_rooted,
    state_space_size,
)
from .prufer import decode, encode, enumerate_sequences
from .series import solve_H, verify_identities
from .settings import ChaintreeSettings

logger = logging.getLogger(__name__)

#: Closed-form value substituted by the ``--inject-183`` negative control.
MISPRINTED_D3_Q3: dict[tuple[int, int], int] = {(3, 3): 183}


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str):
        self.failures.append(message)

    def to_object(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "cases": self.cases,
            "failures": list(self.failures),
            "seconds": round(self.seconds, 3),
        }


@dataclass
class CrosscheckReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def render(self) -> str:
        lines = []
        for check in self.checks:
            status = "PASS" if check.passed else "FAIL"
            lines.append(f"{status} {check.name}: {check.cases} cases in {check.seconds:.3f}s")
            lines.extend(f"    {failure}" for failure in check.failures)
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines) + "\n"

    def to_object(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "checks": [check.to_object() for check in self.checks],
        }


def _timed(name: str, body: Callable[[CheckResult], None]) -> CheckResult:
    result = CheckResult(name)
    started = time.perf_counter()
    body(result)
    result.seconds = time.perf_counter() - started
    logger.info(
        "%s: %d cases, %d failures, %.3fs",
        name, result.cases, len(result.failures), result.seconds,
    )
    return result


def _closed(q: int, k: int, overrides: dict[tuple[int, int], int]) -> int:
    return overrides.get((q, k), count_regular(q, k))


def check_formulas(
        q_max: int,
        k_max: int,
        overrides: dict[tuple[int, int], int] | None = None) -> CheckResult:
    """Closed form, recurrence, series and Lagrange inversion agree on ``d_k``."""
    overrides = overrides or {}

    def body(result: CheckResult):
        for q in range(2, q_max + 1):
            closed = closed_form_table(q, k_max)
            recurrence = recurrence_table(q, k_max)
            series = series_table(q, k_max)
            for k in range(1, k_max + 1):
                values = {
                    "closed": overrides.get((q, k), closed[k]),
                    "recurrence": recurrence[k],
                    "series": series[k],
                    "lagrange": count_by_lagrange(q, k),
                }
                result.cases += 1
                if len(set(values.values())) != 1:
                    listing = ", ".join(f"{name}={value}" for name, value in values.items())
                    result.fail(f"q={q} k={k}: {listing}")

    return _timed("formulas", body)


def check_h_coefficients(q_max: int, k_max: int) -> CheckResult:
    """The h-recurrence, the series coefficients and the closed h-form agree."""

    def body(result: CheckResult):
        for q in range(2, q_max + 1):
            H = solve_H(q, k_max)
            for coefficient in h_sequence_recurrence(q, k_max):
                k = coefficient.k
                result.cases += 1
                expected = h_closed_form(q, k)
                if coefficient.value != expected or H[k] != expected:
                    result.fail(
                        f"q={q} k={k}: recurrence={coefficient.value}, series={H[k]}, "
                        f"closed={expected}"
                    )

    return _timed("h-coefficients", body)


def check_oracle(
        q_max: int,
        k_max: int,
        budget: EnumerationBudget,
        overrides: dict[tuple[int, int], int] | None = None) -> CheckResult:
    """Exhaustive rooted and unrooted counts match the formulas within *budget*."""
    overrides = overrides or {}

    def body(result: CheckResult):
        for q in range(2, q_max + 1):
            for k in range(1, k_max + 1):
                profile = ChainProfile.regular(q, k)
                if not budget.allows(state_space_size(profile)):
                    logger.info("oracle check stops at q=%d k=%d (budget)", q, k)
                    break
                rooted = count_rooted_exhaustive(profile, budget)
                unrooted = count_unrooted(profile, budget)
                closed = _closed(q, k, overrides)
                result.cases += 1
                if rooted != count_rooted(profile):
                    result.fail(f"q={q} k={k}: oracle rooted={rooted}, "
                                f"alphabet^(k-1)={count_rooted(profile)}")
                if unrooted != closed:
                    result.fail(f"q={q} k={k}: oracle={unrooted}, closed={closed}")

    return _timed("oracle", body)


def check_irregular(sum_q_max: int, budget: EnumerationBudget) -> CheckResult:
    """The irregular-profile count matches the oracle for every small profile."""

    def body(result: CheckResult):
        for profile in enumerate_profiles(sum_q_max):
            if not budget.allows(state_space_size(profile)):
                continue
            result.cases += 1
            expected = count_irregular(profile)
            found = count_unrooted(profile, budget)
            if expected != found:
                result.fail(f"profile {profile}: formula={expected}, oracle={found}")

    return _timed("irregular", body)


def _codec_profiles(q_max: int, codec_k_max: int, sum_q_max: int) -> list[ChainProfile]:
    profiles = [
        ChainProfile.regular(q, k)
        for q in range(2, q_max + 1)
        for k in range(1, codec_k_max + 1)
    ]
    seen = set(profiles)
    for profile in enumerate_profiles(sum_q_max):
        if profile not in seen:
            seen.add(profile)
            profiles.append(profile)
    return profiles


def check_codec(profiles: Iterable[ChainProfile], budget: EnumerationBudget) -> CheckResult:
    """Encoding and decoding are mutually inverse on every diagram and sequence."""

    def body(result: CheckResult):
        for profile in profiles:
            if not budget.allows(state_space_size(profile)):
                continue
            diagrams = 0
            for diagram in enumerate_rooted(profile, budget):
                diagrams += 1
                result.cases += 1
                if decode(encode(diagram)) != diagram:
                    result.fail(f"profile {profile}: decode(encode(d)) != d for {diagram}")
            if diagrams != count_rooted(profile):
                result.fail(f"profile {profile}: {diagrams} diagrams, "
                            f"expected {count_rooted(profile)}")
            decoded = set()
            for sequence in enumerate_sequences(profile, budget):
                result.cases += 1
                diagram = decode(sequence)
                decoded.add(diagram)
                if violation := validate_diagram(diagram):
                    result.fail(f"profile {profile}: decode({sequence}) is invalid: {violation}")
                elif encode(diagram) != sequence:
                    result.fail(f"profile {profile}: encode(decode(s)) != s for {sequence}")
            if len(decoded) != diagrams:
                result.fail(f"profile {profile}: {len(decoded)} distinct decodings "
                            f"for {diagrams} diagrams")

    return _timed("codec", body)


def check_identities(q_max: int, order: int) -> CheckResult:
    """The functional equations of ``H_q`` and ``psi`` hold through *order*."""

    def body(result: CheckResult):
        for q in range(2, q_max + 1):
            report = verify_identities(q, order)
            result.cases += len(report.residuals)
            for name, index in report.failures().items():
                result.fail(f"q={q}: residual {name} nonzero at z^{index}")

    return _timed("identities", body)


def run_crosscheck(
        q_max: int,
        k_max: int,
        sum_q_max: int | None = None,
        codec_k_max: int | None = None,
        budget: EnumerationBudget | None = None,
        overrides: dict[tuple[int, int], int] | None = None,
        settings: ChaintreeSettings | None = None) -> CrosscheckReport:
    """Run every check and collect the results in a fixed order."""
    settings = settings if settings else ChaintreeSettings()
    if q_max < 2:
        raise ValueError(f"q_max must be at least 2, got {q_max}")
    if k_max < 1:
        raise ValueError(f"k_max must be at least 1, got {k_max}")
    sum_q_max = settings.crosscheck_sum_q_max if sum_q_max is None else sum_q_max
    codec_k_max = min(k_max, settings.codec_k_max if codec_k_max is None else codec_k_max)
    budget = budget if budget else EnumerationBudget.from_settings(settings)
    report = CrosscheckReport()
    report.checks.append(check_formulas(q_max, k_max, overrides))
    report.checks.append(check_h_coefficients(q_max, k_max))
    report.checks.append(check_oracle(q_max, k_max, budget, overrides))
    report.checks.append(check_irregular(sum_q_max, budget))
    report.checks.append(check_codec(_codec_profiles(q_max, codec_k_max, sum_q_max), budget))
    report.checks.append(check_identities(q_max, max(k_max + 1, 2)))
    return report
