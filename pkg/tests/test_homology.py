import numpy as np
from hypothesis import given, settings, strategies as st

from signvar.homology import PRIME, matrix_rank, rank_exact, rank_mod_p


def to_columns(M):
    return [{r: int(M[r, c]) for r in range(M.shape[0]) if M[r, c]} for c in range(M.shape[1])]


matrices = st.integers(1, 7).flatmap(
    lambda rows: st.integers(1, 7).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(-3, 3), min_size=cols, max_size=cols), min_size=rows, max_size=rows
        )
    )
)


@settings(max_examples=200)
@given(matrices)
def test_rank_matches_numpy(rows):
    M = np.array(rows, dtype=np.int64)
    expected = int(np.linalg.matrix_rank(M.astype(float)))
    cols = to_columns(M)
    assert rank_exact(cols) == expected
    assert rank_mod_p(cols) == expected


def test_rank_of_zero_and_empty():
    assert rank_exact([]) == 0
    assert rank_exact([{}, {0: 0}]) == 0
    assert matrix_rank([{0: 2}, {0: 4}]) == (1, "exact")


def test_mod_p_sees_characteristic():
    # singular mod PRIME, invertible over Q
    cols = [{0: PRIME, 1: 1}, {1: 1}]
    assert rank_exact(cols) == 2
    assert rank_mod_p(cols) == 1
    assert matrix_rank(cols, mode="mod-p") == (1, "mod-p")


def test_large_entries_stay_exact():
    cols = [{0: 6, 1: 10}, {0: 9, 1: 15}, {0: 1}]
    assert rank_exact(cols) == 2
