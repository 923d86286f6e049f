import itertools

import pytest
from hypothesis import given, strategies as st

from signvar.signvec import (
    AllZeroError,
    SignVector,
    SignVectorError,
    bar,
    bar_mask,
    bar_of_entries,
    enumerate_pv,
    leq,
    mask_to_positions,
    parse,
    var,
    wt,
)

from conftest import all_projective


def nonzero_entries(max_n=10):
    return st.lists(st.sampled_from((-1, 0, 1)), min_size=1, max_size=max_n).filter(any)


@pytest.mark.parametrize(
    "text, canonical",
    [("0+-", "0+-"), ("0-+", "0+-"), ("-", "+"), ("--0+", "++0-")],
)
def test_parse_canonical(text, canonical):
    assert str(parse(text)) == canonical


@pytest.mark.parametrize("text, exc", [("000", AllZeroError), ("", SignVectorError), ("+x-", SignVectorError)])
def test_parse_rejects(text, exc):
    with pytest.raises(exc):
        parse(text)


def test_constructor_rejects_noncanonical_masks():
    with pytest.raises(SignVectorError):
        SignVector(2, 0b11, 0b01)


@given(nonzero_entries())
def test_canonical_is_projective(entries):
    v = SignVector.from_entries(entries)
    assert v == SignVector.from_entries([-e for e in entries])
    first = next(e for e in v.entries if e)
    assert first == 1


@given(nonzero_entries())
def test_text_round_trip(entries):
    v = SignVector.from_entries(entries)
    assert parse(str(v)) == v


@pytest.mark.parametrize("text, expected", [("+-0-+", 2), ("+++", 0), ("+--++", 2), ("0+0-0+", 2)])
def test_var(text, expected):
    assert var(parse(text)) == expected


@pytest.mark.parametrize("text, expected", [("0+0-", 2), ("+--++", 5), ("000+0", 1)])
def test_wt(text, expected):
    assert wt(parse(text)) == expected


@pytest.mark.parametrize(
    "text, expected",
    [("0+--0+-", {2, 3, 6, 7}), ("+++", set()), ("+--++", {2, 4}), ("0+---+-++", {3, 6, 7, 8})],
)
def test_bar_examples(text, expected):
    assert bar(parse(text)) == expected


def test_bar_with_single_nonzero_entry():
    assert bar(parse("00+0")) == set()


@pytest.mark.parametrize("n", range(1, 9))
def test_bar_properties_exhaustive(n):
    for v in enumerate_pv(n, n - 1):
        flips = bar(v)
        assert len(flips) % 2 == 0
        assert all(v.entries[i - 1] != 0 for i in flips)
        assert bar_of_entries(v.negated_entries()) == flips
        k = var(v)
        assert len(flips) == (k if k % 2 == 0 else k + 1)
        assert mask_to_positions(bar_mask(v)) == flips


@pytest.mark.parametrize(
    "a, b, expected",
    [("0+0-", "+++-", True), ("0+0-", "+--+", True), ("+0", "0+", False), ("+0", "+-", True), ("0++", "+-+", False)],
)
def test_leq_examples(a, b, expected):
    assert leq(parse(a), parse(b)) is expected


def _leq_oracle(a, b):
    # some global sign makes a agree with b wherever a is nonzero
    return any(
        all(x == 0 or s * x == y for x, y in zip(a.entries, b.entries)) for s in (1, -1)
    )


@pytest.mark.parametrize("n", range(1, 6))
def test_leq_is_partial_order(n):
    P = enumerate_pv(n, n - 1)
    for a in P:
        assert leq(a, a)
    for a, b in itertools.product(P, repeat=2):
        ab = leq(a, b)
        assert ab == _leq_oracle(a, b)
        if ab and leq(b, a):
            assert a == b
    if n <= 4:
        for a, b, c in itertools.product(P, repeat=3):
            if leq(a, b) and leq(b, c):
                assert leq(a, c)


def test_enumerate_pv_examples():
    assert {str(v) for v in enumerate_pv(2, 1)} == {"++", "+-", "+0", "0+"}
    assert [str(v) for v in enumerate_pv(1, 0)] == ["+"]
    assert len(enumerate_pv(3, 2)) == 13


@pytest.mark.parametrize("n", range(1, 7))
def test_enumerate_pv_matches_brute_force(n):
    everything = all_projective(n)
    assert len(everything) == (3**n - 1) // 2
    for m in range(n):
        assert set(enumerate_pv(n, m)) == {v for v in everything if var(v) <= m}


def test_enumerate_pv_is_sorted_by_text():
    texts = [str(v) for v in enumerate_pv(4, 2)]
    assert texts == sorted(texts)


@pytest.mark.parametrize("n, m", [(0, 0), (3, 3), (3, -1)])
def test_enumerate_pv_range(n, m):
    with pytest.raises(SignVectorError):
        enumerate_pv(n, m)
