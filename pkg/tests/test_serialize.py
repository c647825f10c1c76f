from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from khall.errors import InputError
from khall.kha import KClass, LeviKClass
from khall.serialize import (class_json, dumps, levi_json, parse_class, parse_levi,
                             parse_partition, parse_qs, sparse_triplets, tsv)


def test_class_literal():
    x = parse_class("2/1,-1:3;0,0:-1/2")
    assert x == KClass((2,), 0, {(1, -1): 3, (0, 0): F(-1, 2)})
    assert parse_class("2/1,1;1,1") == KClass.basis((2,), (1, 1), 2)


@pytest.mark.parametrize("bad", ["", "2", "2/0,1", "2/1,0;2,0", "2/1", "{not json", "2/1,-1:x"])
def test_class_literal_errors(bad):
    with pytest.raises(InputError):
        parse_class(bad)


def test_levi_literal():
    y = parse_levi("1;1/1|0:2")
    assert y == LeviKClass(((1,), (1,)), (1, 0), {((1,), (0,)): 2})
    with pytest.raises(InputError):
        parse_levi("2;1/0,1|0")
    with pytest.raises(InputError):
        parse_levi("1;1/1|0;0|0")


weights = st.lists(st.integers(-4, 4), min_size=2, max_size=2).map(lambda v: tuple(sorted(v, reverse=True)))


@given(st.dictionaries(weights, st.fractions(max_denominator=5).filter(bool), min_size=1, max_size=3))
def test_json_roundtrip(terms):
    ws = {sum(k) for k in terms}
    w = ws.pop()
    terms = {k: v for k, v in terms.items() if sum(k) == w}
    x = KClass((2,), w, terms)
    assert parse_class(dumps(class_json(x))) == x


def test_levi_json_roundtrip():
    y = LeviKClass(((1, 0), (1, 1)), (2, -1), {((2,), (0, -1)): F(3, 4)})
    assert parse_levi(dumps(levi_json(y))) == y


def test_partition_and_helpers():
    assert parse_partition("1:2;1:0").to_json() == [[[1], 2], [[1], 0]]
    with pytest.raises(InputError):
        parse_partition("1;2")
    with pytest.raises(InputError):
        parse_partition("1:x")
    assert parse_qs("1/2,-3") == (F(1, 2), F(-3))
    assert sparse_triplets([[0, F(1, 2)], [1, 0]]) == [[0, 1, "1/2"], [1, 0, "1"]]
    assert tsv(["a", "b"], [[[1, 2], [[1], [2]]]]) == "a\tb\n1,2\t[[1],[2]]"
    assert dumps({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'
