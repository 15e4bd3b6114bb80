"""The prune-driven case sweep and its counting variant.

``run_prune_sweep`` is the bare sweep: it starts at the top case
``2**n - 1`` and walks down, stepping by one after a case with a solution and
jumping to ``prune(j, ell)`` after a case without one.  ``run_efficiency``
replays the same sweep against a known solution set and counts the cases it
found (R) and checked (C).  A solution set is *valid* when the sweep finds
every member, i.e. ``R == |S|``.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .bitcase import MAX_WIDTH, DomainError, check_level, prune

ENUMERATION_MAX_N = 4


class BudgetError(DomainError):
    """Raised when an exhaustive sweep would exceed its hard cap."""


class OracleError(RuntimeError):
    """A solution oracle failed while the sweep was checking ``case``."""

    def __init__(self, case: int, cause: BaseException):
        super().__init__(f"oracle failed on case {case}: {cause!r}")
        self.case = case


def _check_width(n: int) -> None:
    if not 2 <= n <= MAX_WIDTH:
        raise DomainError(f"n must be in [2, {MAX_WIDTH}], got {n}")


@dataclass(frozen=True)
class SolutionSet:
    """Nonempty subset of ``{1, ..., 2**n - 1}`` stored as a bitmask.

    Bit ``m`` of ``mask`` is set iff case ``m`` has a solution.
    """

    n: int
    mask: int

    def __post_init__(self):
        _check_width(self.n)
        if self.mask <= 0:
            raise DomainError("solution set must be nonempty")
        if self.mask & 1:
            raise DomainError("case 0 never has a solution")
        if self.mask >> (1 << self.n):
            raise DomainError(f"solution set has members >= 2**{self.n}")

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> SolutionSet:
        mask = 0
        for m in members:
            if m < 0:
                raise DomainError(f"negative case {m}")
            mask |= 1 << m
        return cls(n, mask)

    @classmethod
    def full(cls, n: int) -> SolutionSet:
        return cls(n, (1 << (1 << n)) - 2)

    @property
    def members(self) -> tuple[int, ...]:
        out = []
        mask = self.mask
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return tuple(out)

    @property
    def top(self) -> int:
        return (1 << self.n) - 1

    def __contains__(self, m: int) -> bool:
        return m >= 0 and bool(self.mask >> m & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.members)) + "}"


@dataclass(frozen=True)
class RunOutcome:
    """Result of one counting sweep.

    ``trace`` lists the cases checked in order and ``found`` flags which of
    them were in the solution set.  ``size`` is ``|S|`` for the input set.
    """

    R: int
    C: int
    trace: tuple[int, ...]
    found: tuple[bool, ...]
    size: int

    @property
    def valid(self) -> bool:
        return self.R == self.size

    @property
    def ratio(self) -> Fraction:
        if self.R == 0:
            raise ZeroDivisionError("ratio undefined for a run that found nothing")
        return Fraction(self.C, self.R)


@dataclass(frozen=True)
class ParNumber:
    f: int
    p: int


def run_prune_sweep(
    n: int, ell: int, oracle: Callable[[int], bool]
) -> list[tuple[int, bool]]:
    """Sweep the cases of an ``n``-oscillator problem using ``P_ell`` pruning.

    ``oracle(j)`` decides whether case ``j`` has a solution.  Case 0 is never
    queried.  Returns every checked case in check order with its verdict.
    An exception raised by the oracle is wrapped in :class:`OracleError`.
    """
    _check_width(n)
    check_level(ell)
    checked = []
    j = (1 << n) - 1
    while j > 0:
        try:
            hit = bool(oracle(j))
        except Exception as exc:
            raise OracleError(j, exc) from exc
        checked.append((j, hit))
        j = j - 1 if hit else prune(j, ell)
    return checked


def run_efficiency(n: int, ell: int, s: SolutionSet) -> RunOutcome:
    """Count cases found (R) and checked (C) by the sweep on ``s``."""
    if s.n != n:
        raise DomainError(f"solution set width {s.n} != n={n}")
    check_level(ell)
    mask = s.mask
    R = C = 0
    trace, found = [], []
    j = (1 << n) - 1
    while j > 0:
        C += 1
        trace.append(j)
        if mask >> j & 1:
            R += 1
            found.append(True)
            j -= 1
        else:
            found.append(False)
            j = prune(j, ell)
    return RunOutcome(R, C, tuple(trace), tuple(found), len(s))


def is_valid(n: int, ell: int, s: SolutionSet) -> bool:
    return run_efficiency(n, ell, s).valid


def par_number(outcome: RunOutcome, f: int) -> ParNumber:
    """Rewrite ``(R, C)`` as ``(R, f*R + p)`` and return ``p``."""
    if f < 1:
        raise DomainError(f"f must be >= 1, got {f}")
    return ParNumber(f, outcome.C - f * outcome.R)


# --- exhaustive enumeration ----------------------------------------------

def _check_budget(n: int) -> None:
    _check_width(n)
    if n > ENUMERATION_MAX_N:
        raise BudgetError(
            f"exhaustive enumeration capped at n <= {ENUMERATION_MAX_N} "
            f"(n={n} has 2**{(1 << n) - 1} subsets); use graph path counting instead"
        )


def _valid_in_chunk(n: int, ell: int, lo: int, hi: int) -> list[tuple[int, RunOutcome]]:
    # subset index i encodes members {m : bit m-1 of i}, i.e. mask = i << 1
    out = []
    for i in range(lo, hi):
        s = SolutionSet(n, i << 1)
        outcome = run_efficiency(n, ell, s)
        if outcome.valid:
            out.append((s.mask, outcome))
    return out


def _chunks(n: int, jobs: int) -> list[tuple[int, int]]:
    total = 1 << ((1 << n) - 1)
    step = max(1, math.ceil((total - 1) / (4 * jobs)))
    return [(lo, min(lo + step, total)) for lo in range(1, total, step)]


def enumerate_valid_sets(
    n: int, ell: int, jobs: int = 1
) -> Iterator[tuple[SolutionSet, RunOutcome]]:
    """Yield every valid solution set with its outcome, by ascending bitmask.

    All ``2**(2**n - 1) - 1`` nonempty subsets are run.  ``jobs > 1``
    spreads the sweep over worker processes; the output order is unchanged.
    """
    _check_budget(n)
    check_level(ell)
    chunks = _chunks(n, jobs)
    if jobs <= 1:
        results = (_valid_in_chunk(n, ell, lo, hi) for lo, hi in chunks)
        for part in results:
            for mask, outcome in part:
                yield SolutionSet(n, mask), outcome
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_valid_in_chunk, n, ell, lo, hi) for lo, hi in chunks]
        for fut in futures:
            for mask, outcome in fut.result():
                yield SolutionSet(n, mask), outcome


def max_ratio_bruteforce(n: int, ell: int, jobs: int = 1) -> tuple[Fraction, SolutionSet]:
    """Exact maximum of C/R over all valid sets, with the smallest-mask witness."""
    best: Fraction | None = None
    witness = None
    for s, outcome in enumerate_valid_sets(n, ell, jobs):
        r = outcome.ratio
        if best is None or r > best:
            best, witness = r, s
    assert witness is not None  # the full set is always valid
    return best, witness
