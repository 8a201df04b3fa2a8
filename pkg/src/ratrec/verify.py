"""Randomized oracle-equivalence verification.

Draws random rational seeds and coefficient streams (numerators from
[-9, 9] without 0, denominators from [1, 9]), iterates the recurrence
exactly, and checks the closed form, the V-reduction identity, and a
symmetry-residual sweep.  Instances that hit a singularity are skipped
and counted, not failed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from ratrec.closed_form import ClosedFormError, x_closed, x_closed_all
from ratrec.core import CoefficientStream, InitialConditions, Rational
from ratrec.engine import iterate, v_sequence
from ratrec.reduced import v_step
from ratrec import symmetry


def random_rational(rng: random.Random, nonzero: bool = True) -> Rational:
    num = rng.choice([k for k in range(-9, 10) if k != 0 or not nonzero])
    den = rng.randint(1, 9)
    return Fraction(num, den)


def random_stream(rng: random.Random, horizon: int) -> CoefficientStream:
    kind = rng.choice(["constant", "periodic", "list"])
    if kind == "constant":
        return CoefficientStream.constant(
            random_rational(rng, nonzero=True), random_rational(rng, nonzero=False))
    if kind == "periodic":
        period = rng.randint(1, 6)
        return CoefficientStream.periodic(
            [(random_rational(rng, nonzero=True), random_rational(rng, nonzero=False))
             for _ in range(period)])
    return CoefficientStream.explicit(
        [(random_rational(rng, nonzero=True), random_rational(rng, nonzero=False))
         for _ in range(horizon)])


def random_seeds(rng: random.Random) -> InitialConditions:
    return InitialConditions.of(*(random_rational(rng, nonzero=True) for _ in range(4)))


@dataclass
class Witness:
    """Minimal failing instance for a verification mismatch."""

    seeds: InitialConditions
    stream: CoefficientStream
    index: int
    expected: Rational
    got: Rational


@dataclass
class VerificationReport:
    trials_run: int = 0
    trials_skipped: int = 0
    max_symmetry_residual: float = 0.0
    all_exact_match: bool = True
    witness: Optional[Witness] = None
    indices_checked: int = 0


def check_instance(ic: InitialConditions, stream: CoefficientStream, horizon: int,
                   corrupt: bool = False) -> Optional[Witness]:
    """Compare closed form against iteration at every regular index, and
    the reduction identity V_{k+1} = a_k V_k + b_k along the way.

    Returns None on full agreement, a Witness on the first mismatch, and
    raises _Skip when the instance is singular or otherwise leaves the
    closed form's domain.  ``corrupt`` deliberately perturbs the closed
    form (negative-control hook for the CLI contract).
    """
    traj = iterate(ic, stream, horizon)
    if not traj.is_regular:
        raise _Skip
    if any(v == 0 for v in traj.values):
        raise _Skip  # closed form undefined on zero values
    vs = v_sequence(traj)
    for k in range(len(vs) - 1):
        a_k, b_k = stream.at(k)
        if vs[k + 1] != v_step(vs[k], a_k, b_k):
            return Witness(ic, stream, k + 1, vs[k + 1], v_step(vs[k], a_k, b_k))
    try:
        closed = x_closed_all(ic, stream, horizon)
    except ClosedFormError:
        raise _Skip
    for m in range(-3, horizon + 1):
        value = closed[m + 3]
        if corrupt and m >= 1:
            value += 1
        if value != traj.x(m):
            return Witness(ic, stream, m, traj.x(m), value)
    # the per-index entry point shares the formula but not the recursion;
    # spot-check it against the batch path
    for m in (0, min(7, horizon), horizon):
        if x_closed(ic, stream, m) != closed[m + 3]:
            return Witness(ic, stream, m, closed[m + 3], x_closed(ic, stream, m))
    return None


class _Skip(Exception):
    pass


def run_verification(trials: int, horizon: int, seed: int,
                     residual_samples: int = 100,
                     corrupt: bool = False) -> VerificationReport:
    """Run the randomized oracle-equivalence suite plus a residual sweep."""
    rng = random.Random(seed)
    report = VerificationReport()
    if trials == 0:
        return report
    for _ in range(trials):
        ic = random_seeds(rng)
        stream = random_stream(rng, horizon)
        try:
            witness = check_instance(ic, stream, horizon, corrupt=corrupt)
        except _Skip:
            report.trials_skipped += 1
            continue
        report.trials_run += 1
        report.indices_checked += horizon + 4
        if witness is not None:
            report.all_exact_match = False
            if report.witness is None:
                report.witness = witness
    samples = [
        (rng.randrange(0, 24),
         rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0),
         rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0))
        for _ in range(residual_samples)
    ]
    report.max_symmetry_residual = max(
        symmetry.residual_sweep(char, samples)
        for char in symmetry.builtin_characteristics())
    return report
