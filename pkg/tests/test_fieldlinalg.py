import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import oracles
from zkcontact.fieldlinalg import nullspace_mod_p, rank_mod_p, rref_mod_p, solve_mod_p

shapes = st.tuples(st.integers(1, 9), st.integers(1, 9))


@st.composite
def matrices(draw):
    p = draw(st.sampled_from([3, 5, 7, 11]))
    A = draw(arrays(np.int64, draw(shapes), elements=st.integers(0, p - 1)))
    return A, p


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_matches_oracle(Ap):
    A, p = Ap
    assert rank_mod_p(A, p) == oracles.rank_mod_p(A.tolist(), p)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_rref_and_nullspace(Ap):
    A, p = Ap
    R, piv = rref_mod_p(A, p)
    assert len(piv) == oracles.rank_mod_p(A.tolist(), p)
    N = nullspace_mod_p(A, p)
    assert N.shape == (A.shape[1] - len(piv), A.shape[1])
    assert not (A @ N.T % p).any()
    if len(N):
        assert oracles.rank_mod_p(N.tolist(), p) == len(N)


@settings(max_examples=100, deadline=None)
@given(matrices(), st.data())
def test_solve(Ap, data):
    A, p = Ap
    x0 = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=A.shape[1], max_size=A.shape[1])))
    b = A @ x0 % p
    x = solve_mod_p(A, b, p)
    assert x is not None and ((A @ x - b) % p == 0).all()


def test_solve_inconsistent():
    A = np.array([[1, 0], [1, 0]])
    assert solve_mod_p(A, [0, 1], 5) is None


def test_rank_of_empty():
    assert rank_mod_p(np.zeros((0, 4), dtype=np.int64), 3) == 0
