from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bitwist.abelian import (
    abelianization,
    exponent_polynomial_from_word,
    exponent_polynomial_via_Q,
)
from bitwist.cfrac import MultiplierFunction as MF
from bitwist.errors import MalformedInput
from bitwist.laurent import LaurentPolynomial
from bitwist.presentation import (
    CyclicPresentation,
    FinitePresentation,
    Word,
    branched_cover_relators,
    eliminate_to_cyclic,
    fibonacci_presentation,
    shift,
    sieradski_presentation,
    triangle_presentation,
)

words = st.lists(st.tuples(st.integers(0, 4), st.sampled_from((1, -1))), max_size=20).map(Word.from_letters)


def cyclic_of(mf, n):
    return eliminate_to_cyclic(branched_cover_relators(mf, n), mf, n)


def same_up_to_unit(p: LaurentPolynomial, q: LaurentPolynomial, n: int) -> bool:
    # equal as elements of Z[t]/(t^n - 1) up to a unit +-t^s
    fp = p.fold(n)
    for s in range(n):
        fq = q.shift(s).fold(n)
        if fp == fq or fp == -fq:
            return True
    return False


# -- Word ------------------------------------------------------------------------


def test_word_parse_and_str():
    w = Word.parse("x3 X1 x0")
    assert w.letters == ((3, 1), (1, -1), (0, 1))
    assert str(w) == "x3 X1 x0"
    assert str(Word()) == "1"
    assert Word.parse("1") == Word()
    with pytest.raises(ValueError):
        Word.parse("y2")


def test_word_algebra():
    a, b = Word.gen(0), Word.gen(1)
    assert (a * b).inverse() == Word.parse("X1 X0")
    assert (a * b) ** -2 == Word.parse("X1 X0 X1 X0")
    assert (a * a.inverse()).reduced() == Word()
    assert Word.parse("X0 x1 x2 x0").cyclically_reduced() == Word.parse("x1 x2")
    assert Word.parse("x0 x0 X1 x0").exponent_sums() == {0: 3, 1: -1}


@given(words)
def test_free_reduction_idempotent_and_shortening(w):
    r = w.reduced()
    assert r.reduced() == r
    assert len(r) <= len(w)
    assert all(r.codes[i] != r.codes[i + 1] ^ 1 for i in range(len(r) - 1))
    assert w.exponent_sums() == r.exponent_sums()


@given(words)
def test_inverse_cancels(w):
    assert (w * w.inverse()).reduced() == Word()


# -- shift ----------------------------------------------------------------------


def test_shift_examples():
    assert shift(Word.parse("x0 x1"), 3, 1) == Word.parse("x1 x2")


@given(words, st.integers(-10, 10), st.integers(-10, 10))
def test_shift_periodic_and_additive(w, a, b):
    n = 5
    assert shift(w, n, n) == w
    assert shift(shift(w, n, a), n, b) == shift(w, n, a + b)


# -- presentations ----------------------------------------------------------------


def test_finite_presentation_validates_generators():
    with pytest.raises(ValueError):
        FinitePresentation(2, (Word.gen(2),))
    with pytest.raises(ValueError):
        FinitePresentation(0, ())


def test_cyclic_presentation_expands_to_n_relators():
    cp = CyclicPresentation(4, Word.parse("x0 x1 X2"))
    rels = cp.relators()
    assert len(rels) == 4
    assert rels[3] == Word.parse("x3 x0 X1")
    with pytest.raises(ValueError):
        CyclicPresentation(2, Word.gen(2))


def test_fibonacci_presentation():
    assert len(fibonacci_presentation(5).relators()) == 5
    assert fibonacci_presentation(5).defining_word == Word.parse("x0 x1 X2")
    assert fibonacci_presentation(1).defining_word.reduced() == Word.gen(0)
    assert abelianization(fibonacci_presentation(4).to_presentation()).order == 5


def test_sieradski_presentation():
    assert sieradski_presentation(5).defining_word == Word.parse("X0 x4 x1")
    # n = 1: relator x0, trivial group
    assert sieradski_presentation(1).defining_word.reduced() == Word.gen(0)
    assert abelianization(sieradski_presentation(2).to_presentation()).order == 3


def test_triangle_presentation_shape():
    pres = triangle_presentation(2, 3, 5)
    assert pres.generator_count == 3
    assert [str(w) for w in pres.relators] == ["x0 x0", "x1 x1 x1", "x2 x2 x2 x2 x2", "x0 x1 x2"]


# -- branched cover relators -------------------------------------------------------


def test_cover_relators_single_generator():
    pres = branched_cover_relators(MF((1,), (1,)), 1)
    assert pres.generator_count == 1 and len(pres.relators) == 1
    assert pres.relators[0].exponent_sums() == {0: 1}
    assert str(pres.relators[0]) == "x0 x0 X0 x0 X0"


def test_cover_relators_rows_are_local():
    n = 3
    pres = branched_cover_relators(MF((1, -1), (1, 2)), n)
    assert pres.generator_count == 6 and len(pres.relators) == 6
    for idx, w in enumerate(pres.relators):
        row = idx // n
        rows = {g // n for g in w.generators()}
        assert rows <= {row - 1, row, row + 1}


@pytest.mark.parametrize("k", [0, 1, 3])
def test_cover_relators_n1_collapses(k):
    mf = MF((1,) * (k + 1), (1,) * (k + 1))
    pres = branched_cover_relators(mf, 1)
    assert len(pres.relators) == k + 1


def test_zero_multiplier_gives_empty_blocks():
    pres = branched_cover_relators(MF((1, 1), (0, 1)), 2)
    # row 0: x(0,j) then the lat[1] block only
    assert str(pres.relators[0]) == "x0 x0 X2"


# -- elimination ------------------------------------------------------------------


def test_trefoil_word_polynomial():
    for n in range(2, 9):
        p = exponent_polynomial_from_word(cyclic_of(MF((-1,), (1,)), n))
        assert same_up_to_unit(p, LaurentPolynomial.from_list([1, -1, 1]), n)


def test_figure_eight_word_polynomial():
    # the n-generator cyclic word for the figure-eight cover has polynomial 1 - 3t + t^2;
    # 1 + t - t^2 belongs to the 2n-generator Fibonacci presentation of the same group
    for n in range(3, 9):
        p = exponent_polynomial_from_word(cyclic_of(MF((1,), (1,)), n))
        assert same_up_to_unit(p, LaurentPolynomial.from_list([1, -3, 1]), n)


def test_k0_elimination_is_identity():
    mf = MF((1,), (2,))
    pres = branched_cover_relators(mf, 4)
    cp = eliminate_to_cyclic(pres, mf, 4)
    assert cp.defining_word == pres.relators[0].cyclically_reduced()


def test_elimination_rejects_foreign_presentation():
    mf = MF((1, 1), (1, 1))
    with pytest.raises(MalformedInput):
        eliminate_to_cyclic(branched_cover_relators(MF((1,), (1,)), 3), mf, 3)
    pres = branched_cover_relators(mf, 3)
    broken = FinitePresentation(pres.generator_count, (Word.gen(0),) * len(pres.relators))
    with pytest.raises(MalformedInput):
        eliminate_to_cyclic(broken, mf, 3)


def test_figure_eight_matches_fibonacci_abelianization():
    for n in range(1, 9):
        cover = abelianization(cyclic_of(MF((1,), (1,)), n).to_presentation())
        assert cover == abelianization(fibonacci_presentation(2 * n).to_presentation())


def test_trefoil_matches_sieradski_abelianization():
    for n in range(1, 13):
        cover = abelianization(cyclic_of(MF((-1,), (1,)), n).to_presentation())
        assert cover == abelianization(sieradski_presentation(n).to_presentation())


small_mfs = st.integers(0, 3).flatmap(
    lambda k: st.builds(
        MF,
        st.tuples(*[st.sampled_from((1, -1))] * (k + 1)),
        st.tuples(*[st.integers(-2, 2)] * (k + 1)),
    )
)


@settings(max_examples=150, deadline=None)
@given(small_mfs, st.integers(1, 6))
def test_word_polynomial_matches_q_route(mf, n):
    p = exponent_polynomial_from_word(cyclic_of(mf, n))
    assert same_up_to_unit(p, exponent_polynomial_via_Q(mf), n)


@settings(max_examples=60, deadline=None)
@given(small_mfs, st.integers(1, 5))
def test_tietze_preserves_abelianization(mf, n):
    full = abelianization(branched_cover_relators(mf, n))
    assert abelianization(cyclic_of(mf, n).to_presentation()) == full
