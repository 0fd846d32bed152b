import pytest
from hypothesis import given, settings, strategies as st

from countercheck import exponents as xp


leaves = st.one_of(
    st.integers(1, 5).map(xp.Constant),
    st.tuples(st.integers(1, 4), st.integers(1, 3)).map(lambda p: xp.Ramp(*p)),
    st.just(xp.Staircase()),
    st.lists(st.integers(1, 5), min_size=1, max_size=4).map(lambda v: xp.PeriodicList(tuple(v))),
)
generators = st.recursive(leaves, lambda g: st.tuples(g, g).map(lambda p: xp.Interleave(*p)), max_leaves=8)


def test_sample_staircase():
    assert [xp.sample(xp.Staircase(), i) for i in range(1, 7)] == [1, 1, 2, 1, 2, 3]


def test_sample_ramp_identity():
    for k in (1, 2, 7, 40):
        assert xp.sample(xp.Ramp(1, 1), k) == k


def test_sample_interleave_alternating_word():
    gen = xp.Interleave(xp.Constant(1), xp.Ramp(2, 1))
    assert [xp.sample(gen, i) for i in range(1, 5)] == [1, 2, 1, 3]


def test_sample_periodic():
    gen = xp.PeriodicList((2, 5, 5))
    assert [xp.sample(gen, i) for i in range(1, 8)] == [2, 5, 5, 2, 5, 5, 2]


def test_sample_rejects_zero_index():
    with pytest.raises(ValueError):
        xp.sample(xp.Constant(1), 0)


def test_generator_validation():
    with pytest.raises(ValueError):
        xp.Constant(0)
    with pytest.raises(ValueError):
        xp.Ramp(1, 0)
    with pytest.raises(ValueError):
        xp.PeriodicList(())


def test_classify_staircase():
    assert xp.classify(xp.Staircase()) == xp.ClassFlags(False, False, True)


def test_classify_interleaved_single_recurring_size():
    gen = xp.Interleave(xp.Constant(1), xp.Ramp(2, 1))
    assert xp.classify(gen) == xp.ClassFlags(False, False, False)


def test_classify_constant():
    assert xp.classify(xp.Constant(5)) == xp.ClassFlags(True, False, False)


def test_classify_ramp():
    assert xp.classify(xp.Ramp(1, 1)) == xp.ClassFlags(False, True, False)


@given(generators)
@settings(max_examples=200, deadline=None)
def test_flags_mutually_exclusive(gen):
    flags = xp.classify(gen)
    assert not (flags.bounded and flags.strictly_unbounded)
    if flags.t_holds:
        assert not flags.bounded and not flags.strictly_unbounded


@given(generators, st.integers(1, 120))
@settings(max_examples=200, deadline=None)
def test_every_value_recurs_or_vanishes_exclusively(gen, i):
    value = xp.sample(gen, i)
    recurring = value in xp.recurring_values(gen)
    vanishing = value in xp.vanishing_values(gen)
    assert recurring != vanishing


@given(generators)
@settings(max_examples=200, deadline=None)
def test_bounded_iff_value_sets_finite(gen):
    # the value set of the sequence is recurring + vanishing, so boundedness
    # over positive integers is exactly finiteness of both
    finite = not xp.recurring_values(gen).is_infinite and not xp.vanishing_values(gen).is_infinite
    assert xp.classify(gen).bounded == finite


def test_decompose_constant_all_recurring():
    d = xp.decompose_prefix(xp.Constant(3), 10)
    assert set(d.labels) == {"BT"}
    assert d.recurring_kind == "B"


def test_decompose_ramp_all_vanishing():
    d = xp.decompose_prefix(xp.Ramp(1, 1), 10)
    assert set(d.labels) == {"S"}
    assert d.recurring_kind == "B"


def test_decompose_interleave_odd_even():
    d = xp.decompose_prefix(xp.Interleave(xp.Constant(1), xp.Ramp(2, 1)), 6)
    assert d.labels == ("BT", "S", "BT", "S", "BT", "S")
    assert d.recurring_kind == "B"
    assert d.stream("BT") == (1, 3, 5)
    assert d.stream("S") == (2, 4, 6)


def test_decompose_staircase_kind_t():
    d = xp.decompose_prefix(xp.Staircase(), 20)
    assert set(d.labels) == {"BT"}
    assert d.recurring_kind == "T"


@given(generators, st.integers(1, 200))
@settings(max_examples=150, deadline=None)
def test_decomposition_recombines_and_streams_are_pure(gen, prefix_len):
    d = xp.decompose_prefix(gen, prefix_len)
    assert len(d.labels) == prefix_len
    assert sorted(d.stream("BT") + d.stream("S")) == list(range(1, prefix_len + 1))
    vanishing = xp.vanishing_values(gen)
    recurring = xp.recurring_values(gen)
    for j in d.stream("S"):
        assert xp.sample(gen, j) in vanishing
    for j in d.stream("BT"):
        assert xp.sample(gen, j) in recurring


def test_parse_generator_specs():
    assert xp.parse_generator("staircase") == xp.Staircase()
    assert xp.parse_generator("const:5") == xp.Constant(5)
    assert xp.parse_generator("ramp:2:1") == xp.Ramp(2, 1)
    assert xp.parse_generator("periodic:1,2,3") == xp.PeriodicList((1, 2, 3))
    assert xp.parse_generator("interleave(const:1,ramp:2:1)") == xp.Interleave(
        xp.Constant(1), xp.Ramp(2, 1)
    )
    assert xp.parse_generator("interleave(interleave(const:1,const:2),staircase)") == xp.Interleave(
        xp.Interleave(xp.Constant(1), xp.Constant(2)), xp.Staircase()
    )


def test_parse_generator_rejects_garbage():
    for bad in ("", "ramp:1", "const:x", "interleave(const:1)", "upward"):
        with pytest.raises(ValueError):
            xp.parse_generator(bad)
