import pytest
from hypothesis import given
from hypothesis import strategies as st

from prunebench.bitcase import (
    DomainError,
    PREFIX_LEMMAS,
    binary,
    has_prefix,
    nth_zero_bit,
    prune,
    verify_prefix_lemmas,
)
from reference import prune_str


@pytest.mark.parametrize("m, ell, expected", [
    (23, 1, 15),
    (23, 2, 0),
    (6, 1, 5),
    (4, 2, 3),
    (5, 3, 0),
])
def test_prune_goldens(m, ell, expected):
    assert prune(m, ell) == expected


@pytest.mark.parametrize("k", range(1, 25))
@pytest.mark.parametrize("ell", [1, 2, 3, 7])
def test_all_ones_collapse(k, ell):
    assert prune(2**k - 1, ell) == 0


def test_prune_domain():
    with pytest.raises(DomainError):
        prune(0, 1)
    with pytest.raises(DomainError):
        prune(5, 0)


def test_large_level_uses_padding():
    # 0b1000 has three zeros of its own; the fifth comes from padding
    assert prune(8, 3) == 7
    assert prune(8, 4) == 0
    assert prune(8, 100) == 0


def test_nth_zero_bit():
    assert nth_zero_bit(0b10111, 1) == 3
    assert nth_zero_bit(0b10111, 2) == 5
    assert nth_zero_bit(0, 4) == 3


def test_prune_matches_string_reference_exhaustively():
    for ell in (1, 2, 3):
        bad = [m for m in range(1, 2**16) if prune(m, ell) != prune_str(m, ell)]
        assert not bad, (ell, bad[:5])


@given(st.integers(1, 2**24 - 1), st.integers(1, 3))
def test_strict_decrease(m, ell):
    assert 0 <= prune(m, ell) < m


@given(st.integers(1, 2**24 - 1), st.integers(1, 5))
def test_monotone_in_level(m, ell):
    assert prune(m, ell + 1) <= prune(m, ell)


@given(st.integers(1, 2**40), st.integers(1, 8))
def test_reference_agrees_beyond_sweep(m, ell):
    assert prune(m, ell) == prune_str(m, ell)


def test_has_prefix_examples():
    assert has_prefix(8, 4, "100")
    assert has_prefix(10, 4, "101")
    assert has_prefix(0, 4, "0")
    assert not has_prefix(8, 4, "101")
    with pytest.raises(DomainError):
        has_prefix(16, 4, "1")
    with pytest.raises(DomainError):
        has_prefix(1, 2, "100")


def test_has_prefix_matches_formatting():
    for k in range(1, 13):
        for m in range(2**k):
            s = format(m, f"0{k}b")
            for prefix in ("0", "1", "10", "101", "100", "11"):
                if len(prefix) <= k:
                    assert has_prefix(m, k, prefix) == s.startswith(prefix)


def test_binary_padding():
    assert binary(23, 5) == "10111"
    assert binary(15, 5) == "01111"
    with pytest.raises(DomainError):
        binary(32, 5)


def test_lemma_intervals_at_k4():
    intervals = {lem.prefix: list(lem.interval(4)) for lem in PREFIX_LEMMAS}
    assert intervals["1"] == list(range(8, 16))
    assert intervals["10"] == [8, 9, 10, 11]
    assert intervals["101"] == [10, 11]
    assert intervals["100"] == [8, 9]


def test_prefix_lemmas_small():
    report = verify_prefix_lemmas(4)
    assert all(c.passed for c in report)
    report = verify_prefix_lemmas(1)
    checked = {c.prefix: c.k_checked for c in report}
    assert checked == {"1": [1], "10": [], "101": [], "100": []}


def test_prefix_lemmas_k16():
    assert all(c.passed for c in verify_prefix_lemmas(16))


def test_prefix_budget():
    with pytest.raises(DomainError):
        verify_prefix_lemmas(25)
