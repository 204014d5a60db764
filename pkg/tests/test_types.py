from functools import lru_cache

import pytest

from eec.syntax import ParseError, parse_type, well_formed_type
from eec.typecheck import TypingError
from eec.types import (Bang, CConst, Const, Embed, Fun, I, Lin, ONE, Prod, UNIT, as_value, comp_types,
                       type_size, unembed, value_types)


# independent count of the type grammar, by size (embedding a computation type costs nothing)
@lru_cache(None)
def n_value(n):
    if n == 1:
        return 2
    return sum(2 * n_operand(k) * n_operand(n - 1 - k) + n_comp(k) * n_comp(n - 1 - k)
               for k in range(1, n - 1))


@lru_cache(None)
def n_comp(n):
    if n == 1:
        return 4
    unary = n_operand(n - 1)
    binary = sum(2 * n_comp(k) * n_comp(n - 1 - k) + 2 * n_operand(k) * n_comp(n - 1 - k)
                 for k in range(1, n - 1))
    return unary + binary


def n_operand(n):
    return n_value(n) + n_comp(n)


@pytest.mark.parametrize("size", range(1, 6))
def test_enumeration_matches_independent_count(size):
    assert len(value_types(size)) == n_value(size)
    assert len(comp_types(size)) == n_comp(size)
    assert all(type_size(t) == size for t in value_types(size) + comp_types(size))
    assert len(set(value_types(size))) == n_value(size)


def test_known_counts():
    assert [len(value_types(s)) for s in range(1, 5)] == [2, 0, 88, 192]
    assert [len(comp_types(s)) for s in range(1, 5)] == [4, 6, 86, 390]


def test_sorts():
    assert well_formed_type("1") == "value"
    assert well_formed_type("!a") == "computation"
    assert parse_type("!a") == Bang(Const("a"))


def test_iterated_lin_is_a_sort_error():
    with pytest.raises((TypingError, ParseError)) as e:
        parse_type("(^a -o ^b) -o ^c")
    assert getattr(e.value, "kind", "sort-error") == "sort-error"


def test_lin_takes_computation_types():
    with pytest.raises(TypeError):
        Lin(UNIT, I)


def test_embedding_is_transparent():
    assert as_value(ONE) == Embed(ONE)
    assert unembed(Embed(ONE)) == ONE
    assert unembed(UNIT) == UNIT
    assert type_size(Embed(Prod(UNIT, UNIT))) == 3


def test_distinct_constant_namespaces():
    assert Const("c") != CConst("c")
    assert parse_type("^c") == CConst("c")
    assert parse_type("a -> a") == Fun(Const("a"), Const("a"))
