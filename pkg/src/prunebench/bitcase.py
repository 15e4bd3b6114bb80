"""Pruning functions on binary case indices.

A case index ``m`` is a nonnegative integer read as a binary string, with
bit positions numbered from 0 at the right.  ``prune(m, ell)`` clears every
bit strictly to the right of the ``ell``-th zero (counting from the right,
with the string padded on the left by zeros as far as needed) and then
subtracts one, clamping at zero.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_WIDTH = 62
PREFIX_SWEEP_BUDGET = 24


class DomainError(ValueError):
    """Raised when an argument lies outside an operation's domain."""


def check_case(value: int, width: int) -> int:
    """Validate that ``value`` is an index of a ``width``-bit case."""
    if not 1 <= width <= MAX_WIDTH:
        raise DomainError(f"width must be in [1, {MAX_WIDTH}], got {width}")
    if not 0 <= value < (1 << width):
        raise DomainError(f"case {value} does not fit in {width} bits")
    return value


def check_level(ell: int) -> int:
    if ell < 1:
        raise DomainError(f"prune level must be >= 1, got {ell}")
    return ell


def nth_zero_bit(m: int, ell: int) -> int:
    """Position of the ``ell``-th zero bit of ``m`` counted from the right.

    Leading zeros are unbounded, so the answer always exists.
    """
    zeros = ~m  # infinite sign extension supplies the left padding
    for _ in range(ell - 1):
        zeros &= zeros - 1
    return (zeros & -zeros).bit_length() - 1


def prune(m: int, ell: int) -> int:
    """Return ``P_ell(m)``.

    >>> prune(23, 1), prune(23, 2)
    (15, 0)
    """
    if m < 1:
        raise DomainError(f"prune is defined on positive integers, got {m}")
    check_level(ell)
    pos = nth_zero_bit(m, ell)
    return max(((m >> pos) << pos) - 1, 0)


def binary(m: int, k: int) -> str:
    """``k``-digit zero-padded binary representation of ``m``."""
    if m >= (1 << k):
        raise DomainError(f"{m} needs more than {k} binary digits")
    return format(m, f"0{k}b") if k else ""


def has_prefix(m: int, k: int, prefix: str) -> bool:
    """True iff the ``k``-digit representation of ``m`` begins with ``prefix``."""
    if k < len(prefix):
        raise DomainError(f"prefix {prefix!r} is longer than {k} digits")
    if not 0 <= m < (1 << k):
        raise DomainError(f"{m} does not fit in {k} binary digits")
    return binary(m, k).startswith(prefix)


# --- binary-prefix lemmas ------------------------------------------------

@dataclass(frozen=True)
class PrefixLemma:
    name: str
    prefix: str
    k_min: int

    def interval(self, k: int) -> range:
        p = 1 << k
        if self.prefix == "1":
            return range(p >> 1, p)
        if self.prefix == "10":
            return range(p >> 1, p - (p >> 2))
        if self.prefix == "101":
            return range(p - (p >> 2) - (p >> 3), p - (p >> 2))
        if self.prefix == "100":
            return range(p >> 1, p - (p >> 2) - (p >> 3))
        raise DomainError(f"no interval rule for prefix {self.prefix!r}")


PREFIX_LEMMAS = (
    PrefixLemma("leading-1", "1", 1),
    PrefixLemma("leading-10", "10", 2),
    PrefixLemma("leading-101", "101", 3),
    PrefixLemma("leading-100", "100", 3),
)


@dataclass
class LemmaCheck:
    name: str
    prefix: str
    k_checked: list[int]
    cases_checked: int
    counterexample: tuple[int, int] | None = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None


def verify_prefix_lemmas(k_max: int) -> list[LemmaCheck]:
    """Exhaustively check every prefix lemma for all valid ``k <= k_max``.

    Returns one :class:`LemmaCheck` per lemma.  A lemma whose minimum digit
    count exceeds ``k_max`` is reported with an empty ``k_checked`` list.
    """
    if k_max > PREFIX_SWEEP_BUDGET:
        raise DomainError(f"k_max {k_max} exceeds sweep budget {PREFIX_SWEEP_BUDGET}")
    report = []
    for lemma in PREFIX_LEMMAS:
        check = LemmaCheck(lemma.name, lemma.prefix, [], 0)
        for k in range(lemma.k_min, k_max + 1):
            check.k_checked.append(k)
            for m in lemma.interval(k):
                check.cases_checked += 1
                if not has_prefix(m, k, lemma.prefix):
                    check.counterexample = (k, m)
                    break
            if check.counterexample:
                break
        report.append(check)
    return report
