"""Two-sorted EEC types.

Value types and computation types live in separate class hierarchies.  A
computation type may stand where a value type is expected (it is wrapped in
``Embed``), but never the other way round, so ``Lin`` can only ever relate two
computation types.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


class ValueType:
    __slots__ = ()

    def __str__(self) -> str:
        from .syntax import show_type
        return show_type(self)


class CompType:
    __slots__ = ()

    def __str__(self) -> str:
        from .syntax import show_type
        return show_type(self)


def _comp_fields(self, *names):
    # computation-type positions cannot hold a value type; value positions take either sort
    for n in names:
        if not isinstance(getattr(self, n), CompType):
            raise TypeError(f"{type(self).__name__}.{n} must be a computation type, "
                            f"got {getattr(self, n)!r}")


def _value_fields(self, *names):
    # a computation type in a value position is stored embedded, so equal types compare equal
    for n in names:
        v = getattr(self, n)
        if isinstance(v, CompType):
            object.__setattr__(self, n, Embed(v))


# value types

@dataclass(frozen=True, slots=True)
class Const(ValueType):
    name: str


@dataclass(frozen=True, slots=True)
class Unit(ValueType):
    pass


@dataclass(frozen=True, slots=True)
class Prod(ValueType):
    left: ValueType
    right: ValueType

    def __post_init__(self):
        _value_fields(self, "left", "right")


@dataclass(frozen=True, slots=True)
class Fun(ValueType):
    dom: ValueType
    cod: ValueType

    def __post_init__(self):
        _value_fields(self, "dom", "cod")


@dataclass(frozen=True, slots=True)
class Embed(ValueType):
    """A computation type used as a value type."""
    comp: CompType


@dataclass(frozen=True, slots=True)
class Lin(ValueType):
    dom: CompType
    cod: CompType

    def __post_init__(self):
        _comp_fields(self, "dom", "cod")


# computation types

@dataclass(frozen=True, slots=True)
class CConst(CompType):
    name: str


@dataclass(frozen=True, slots=True)
class WithUnit(CompType):
    pass


@dataclass(frozen=True, slots=True)
class With(CompType):
    left: CompType
    right: CompType

    def __post_init__(self):
        _comp_fields(self, "left", "right")


@dataclass(frozen=True, slots=True)
class Arrow(CompType):
    dom: ValueType
    cod: CompType

    def __post_init__(self):
        _value_fields(self, "dom")
        _comp_fields(self, "cod")


@dataclass(frozen=True, slots=True)
class TensorUnit(CompType):
    pass


@dataclass(frozen=True, slots=True)
class Bang(CompType):
    arg: ValueType

    def __post_init__(self):
        _value_fields(self, "arg")


@dataclass(frozen=True, slots=True)
class Copower(CompType):
    val: ValueType
    comp: CompType

    def __post_init__(self):
        _value_fields(self, "val")
        _comp_fields(self, "comp")


@dataclass(frozen=True, slots=True)
class Zero(CompType):
    pass


@dataclass(frozen=True, slots=True)
class Plus(CompType):
    left: CompType
    right: CompType

    def __post_init__(self):
        _comp_fields(self, "left", "right")


Type = Union[ValueType, CompType]

UNIT = Unit()
ONE = WithUnit()
I = TensorUnit()
ZERO = Zero()

POSITIVE = (TensorUnit, Bang, Copower, Zero, Plus)
NEGATIVE = (WithUnit, With, Arrow)


def as_value(ty: Type) -> ValueType:
    return Embed(ty) if isinstance(ty, CompType) else ty


def unembed(ty: Type) -> Type:
    """Strip an outer ``Embed`` so that a computation type is returned as such."""
    return ty.comp if isinstance(ty, Embed) else ty


def is_positive(ty: Type) -> bool:
    return isinstance(ty, POSITIVE)


def is_negative(ty: Type) -> bool:
    return isinstance(ty, NEGATIVE)


def type_size(ty: Type) -> int:
    match ty:
        case Const() | Unit() | CConst() | WithUnit() | TensorUnit() | Zero():
            return 1
        case Prod(a, b) | Fun(a, b) | Lin(a, b) | With(a, b) | Arrow(a, b) | Copower(a, b) | Plus(a, b):
            return 1 + type_size(a) + type_size(b)
        case Embed(c):
            return type_size(c)
        case Bang(a):
            return 1 + type_size(a)
    raise ValueError(f"not a type: {ty!r}")


def value_types(size: int, vconsts=("a",), cconsts=("c",)) -> list[ValueType]:
    """All value types of exactly ``size`` constructors (``Embed`` is free)."""
    return _enum(size, vconsts, cconsts)[0]


def comp_types(size: int, vconsts=("a",), cconsts=("c",)) -> list[CompType]:
    return _enum(size, vconsts, cconsts)[1]


_ENUM_CACHE: dict = {}


def _enum(size, vconsts, cconsts):
    key = (size, tuple(vconsts), tuple(cconsts))
    if key in _ENUM_CACHE:
        return _ENUM_CACHE[key]
    vals: list = []
    comps: list = []
    if size == 1:
        vals += [Const(n) for n in vconsts] + [UNIT]
        comps += [CConst(n) for n in cconsts] + [ONE, I, ZERO]
    elif size >= 2:
        v1, c1 = _enum(size - 1, vconsts, cconsts)
        comps += [Bang(a) for a in v1 if not isinstance(a, Embed)]
        comps += [Bang(Embed(c)) for c in c1]
        for k in range(1, size - 1):
            vl, cl = _enum(k, vconsts, cconsts)
            vr, cr = _enum(size - 1 - k, vconsts, cconsts)
            vl_all = vl + [Embed(c) for c in cl]
            vr_all = vr + [Embed(c) for c in cr]
            vals += [Prod(a, b) for a in vl_all for b in vr_all]
            vals += [Fun(a, b) for a in vl_all for b in vr_all]
            vals += [Lin(a, b) for a in cl for b in cr]
            comps += [With(a, b) for a in cl for b in cr]
            comps += [Plus(a, b) for a in cl for b in cr]
            comps += [Arrow(a, b) for a in vl_all for b in cr]
            comps += [Copower(a, b) for a in vl_all for b in cr]
    _ENUM_CACHE[key] = (vals, comps)
    return vals, comps
