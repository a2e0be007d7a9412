from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bitwist.cfrac import MultiplierFunction as MF
from bitwist.cfrac import ProjectiveFraction as P
from bitwist.cfrac import invariant_of_multipliers
from bitwist.errors import DivisionUndefined, MalformedState
from bitwist.surgery import (
    TangleCF,
    build_chain,
    closure_fraction,
    reduce,
    replay,
    rolfsen_twist,
)

TREFOIL = MF((-1,), (1,))
FIG8 = MF((1,), (1,))
INF = P(1, 0)


def test_build_chain_trefoil():
    d = build_chain(TREFOIL)
    (lev,) = d.levels
    assert (lev.O_coeff, lev.L_coeff, lev.M_coeff) == (P(0), P(-1), P(1))
    assert lev.O_present and lev.L_present and lev.M_present


def test_build_chain_zero_longitude_is_infinite():
    d = build_chain(MF((1, 1), (0, 1)))
    assert d.level(0).M_coeff == INF
    assert d.level(1).M_coeff == P(1)
    assert [lev.j for lev in d.levels] == [1, 0]


@given(st.integers(0, 5).flatmap(lambda k: st.tuples(st.just(k), st.lists(st.integers(-5, 5), min_size=k + 1, max_size=k + 1))))
def test_build_chain_o_coefficients_zero(data):
    k, lon = data
    d = build_chain(MF((1,) * (k + 1), tuple(lon)))
    assert all(lev.O_coeff == P(0) for lev in d.levels)
    assert len(d.levels) == k + 1


def test_rolfsen_twist_examples():
    assert rolfsen_twist(P(1), -1) == INF
    assert rolfsen_twist(P(1, 2), -2) == INF
    assert rolfsen_twist(P(0), 3) == P(0)
    assert rolfsen_twist(P(2, 3), 1) == P(2, 5)
    assert rolfsen_twist(INF, 4) == P(1, 4)


def test_reduce_trefoil():
    tangle, trace = reduce(build_chain(TREFOIL))
    assert tangle.terms == [-2, 2]
    assert len(trace.moves) == 3 and trace.twist_count == 3
    assert [m.curve for m in trace.moves] == ["M0", "L0", "O0"]
    assert closure_fraction(tangle) == P(-3, 2)


def test_reduce_figure_eight():
    tangle, _ = reduce(build_chain(FIG8))
    x = tangle.value()
    c, d = x.den, x.num
    assert P(-d, c) == P(5, 2)
    assert closure_fraction(tangle) == P(5, 2)


def test_all_zero_longitudes_give_unknot():
    mf = MF((1, -1, 1), (0, 0, 0))
    tangle, trace = reduce(build_chain(mf))
    assert tangle.terms == []
    assert trace.twist_count == 6
    with pytest.raises(DivisionUndefined):
        closure_fraction(tangle)


def test_closure_of_empty_tangle():
    with pytest.raises(DivisionUndefined):
        closure_fraction(TangleCF())


def test_top_level_zero_does_not_touch_tangle():
    # the cancelled top level adds nothing; the result matches the shorter mf
    tangle, trace = reduce(build_chain(MF((1, 1), (2, 0))))
    short, _ = reduce(build_chain(MF((1,), (2,))))
    assert tangle.terms == short.terms
    assert [m.tangle_delta for m in trace.moves[:3]] == [None, None, None]


def test_interior_zero_records_zero_term():
    tangle, _ = reduce(build_chain(MF((1, 1), (0, 1))))
    assert tangle.terms == [-2, -2, 0, -2]
    assert closure_fraction(tangle) == P(9, 2)


def test_reduce_leaves_input_untouched():
    d = build_chain(MF((1, -1), (2, 1)))
    before = d.snapshot()
    reduce(d)
    assert d.snapshot() == before


def test_reduce_requires_fresh_diagram():
    d = build_chain(TREFOIL)
    d.tangle.terms.append(2)
    with pytest.raises(MalformedState):
        reduce(d)


def test_replay_detects_tampering():
    tangle, trace = reduce(build_chain(FIG8))
    trace.moves[0] = trace.moves[0]._replace(tangle_delta=4)
    with pytest.raises(MalformedState):
        replay(FIG8, trace)


def test_move_on_absent_curve():
    _, trace = reduce(build_chain(TREFOIL))
    trace.moves.append(trace.moves[0])
    with pytest.raises(MalformedState):
        replay(TREFOIL, trace)


def test_trace_serializes():
    _, trace = reduce(build_chain(MF((1, -1), (0, 2))))
    doc = json.loads(json.dumps(trace.to_dict()))
    assert [m["curve"] for m in doc["moves"]] == ["M1", "L1", "O1", "M0", "L0", "O0"]
    assert doc["moves"][3]["twist"] is None


mfs = st.integers(0, 4).flatmap(
    lambda k: st.builds(
        MF,
        st.tuples(*[st.sampled_from((1, -1))] * (k + 1)),
        st.tuples(*[st.integers(-3, 3)] * (k + 1)),
    )
)


@given(mfs)
def test_reduction_matches_invariant(mf):
    tangle, trace = reduce(build_chain(mf))
    expected = invariant_of_multipliers(mf)
    if expected.is_infinite:
        with pytest.raises(DivisionUndefined):
            closure_fraction(tangle)
    else:
        assert closure_fraction(tangle) == expected
    assert trace.twist_count == 3 * (mf.k + 1) - mf.lon.count(0)
    assert len(trace.moves) == 3 * (mf.k + 1)


@given(mfs)
def test_replay_reproduces_final_state(mf):
    tangle, trace = reduce(build_chain(mf))
    final = replay(mf, trace)
    assert final.is_empty()
    assert final.tangle.terms == tangle.terms


@given(mfs)
def test_tangle_is_negated_cf_in_reverse(mf):
    # up to dropping trailing (lat, 0) pairs, the build order is the negated CF reversed
    tangle, _ = reduce(build_chain(mf))
    terms = [-t for t in mf.cf_terms()]
    while len(terms) >= 2 and terms[-1] == 0:
        terms = terms[:-2]
    assert tangle.evaluation_order() == terms
