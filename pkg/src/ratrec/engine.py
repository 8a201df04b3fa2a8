"""Direct exact iteration of the fourth-order recurrence.

One step computes

    x_{n+1} = x_{n-3} x_n / (x_{n-2} (a_n + b_n x_{n-3} x_n)).

The denominator can vanish in two distinct ways and we keep them apart:
``zero-x-factor`` (x_{n-2} = 0, the forbidden-set flavour) and
``zero-bracket`` (a_n + b_n x_{n-3} x_n = 0, a dynamical collision).
Singularity is sticky: no values are produced past the first failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from ratrec.core import (
    CoefficientStream,
    InitialConditions,
    Rational,
    SingularReportLike,
    Trajectory,
)

ZERO_X_FACTOR = "zero-x-factor"
ZERO_BRACKET = "zero-bracket"


@dataclass(frozen=True)
class SingularReport(SingularReportLike):
    """First step n at which computing x_{n+1} failed, and why."""

    step: int
    cause: str  # ZERO_X_FACTOR | ZERO_BRACKET


class SingularityError(ZeroDivisionError):
    def __init__(self, report: SingularReport):
        super().__init__(f"singular at step {report.step}: {report.cause}")
        self.report = report


class UndefinedVError(ZeroDivisionError):
    """V_k = 1/(x_{k-3} x_k) requested with a zero factor."""


def step(x_nm3: Rational, x_nm2: Rational, x_n: Rational,
         a_n: Rational, b_n: Rational, n: int = 0) -> Rational:
    """One application of the recurrence; raises SingularityError if the
    denominator vanishes."""
    if x_nm2 == 0:
        raise SingularityError(SingularReport(step=n, cause=ZERO_X_FACTOR))
    bracket = a_n + b_n * x_nm3 * x_n
    if bracket == 0:
        raise SingularityError(SingularReport(step=n, cause=ZERO_BRACKET))
    return (x_nm3 * x_n) / (x_nm2 * bracket)


def iterate(ic: InitialConditions, coeffs: CoefficientStream, horizon: int) -> Trajectory:
    """Trajectory x_{-3}..x_{horizon}, truncated at the first singularity.

    ``horizon`` must be >= 0 (the seeds already cover -3..0) and within
    the stream horizon for explicit-list streams.
    """
    if horizon < 0:
        raise ValueError(f"horizon must be >= 0, got {horizon}")
    values: List[Rational] = list(ic.as_tuple())
    for n in range(horizon):
        a_n, b_n = coeffs.at(n)
        # window: x_{n-3}, x_{n-2}, x_n sit at list offsets n, n+1, n+3
        try:
            nxt = step(values[n], values[n + 1], values[n + 3], a_n, b_n, n=n)
        except SingularityError as exc:
            return Trajectory(values=tuple(values), singular=exc.report)
        values.append(nxt)
    return Trajectory(values=tuple(values))


def detect_singularity(ic: InitialConditions, coeffs: CoefficientStream,
                       horizon: int) -> Optional[SingularReport]:
    """None if the trajectory is regular through ``horizon``, else the
    first SingularReport."""
    traj = iterate(ic, coeffs, horizon)
    return traj.singular


def v_sequence(traj: Trajectory) -> List[Rational]:
    """Reduced values V_k = 1/(x_{k-3} x_k) for k = 0..last index.

    Raises UndefinedVError if any required trajectory value is zero.
    """
    out: List[Rational] = []
    for k in range(traj.last_index + 1):
        lo, hi = traj.x(k - 3), traj.x(k)
        if lo == 0 or hi == 0:
            raise UndefinedVError(f"V_{k} undefined: zero trajectory value")
        out.append(Fraction(1) / (lo * hi))
    return out
