import itertools

import pytest

from signvar.signvec import SignVector, parse


def all_projective(n):
    """Canonical classes by brute force over every vector in {-1,0,1}^n."""
    seen = set()
    for entries in itertools.product((-1, 0, 1), repeat=n):
        if any(entries):
            seen.add(SignVector.from_entries(entries))
    return seen


@pytest.fixture
def vecs():
    def make(*texts):
        return tuple(parse(t) for t in texts)

    return make


_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(ok, detail)`` then assert."""
    name = request.node.name

    def record(ok, detail=""):
        _ACCEPTANCE.append((name, bool(ok), detail))
        assert ok, detail

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
