"""Sparse exact-rational value types: mass functions, edge flows, plans.

All three store only nonzero entries, so the key set of an instance is its
support. Reading a missing key returns ``Fraction(0)``.
"""
from __future__ import annotations

from collections.abc import Hashable, Iterable, Iterator, Mapping
from decimal import Decimal
from fractions import Fraction
from numbers import Rational
from typing import Any

from .errors import MassNotZero, NotAPlan, UnknownVertex, ValidationError

ZERO = Fraction(0)


def to_fraction(value: Any) -> Fraction:
    """Convert ints, rationals, decimals and strings like ``"3/2"`` exactly.

    Floats are converted through their shortest decimal repr so that ``0.1``
    becomes ``1/10`` rather than the binary approximation.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValidationError(f"not a rational number: {value!r}")
    if isinstance(value, float):
        value = repr(value)
    elif isinstance(value, str):
        value = value.strip()
    elif not isinstance(value, (int, Rational, Decimal)):
        raise ValidationError(f"not a rational number: {value!r}")
    try:
        return Fraction(value)
    except (ValueError, OverflowError, ZeroDivisionError) as exc:
        # nan, inf and malformed strings
        raise ValidationError(f"not a rational number: {value!r}") from exc


def format_rational(q: Fraction) -> str:
    """Lowest-terms ``"p/q"``, or ``"p"`` for integers."""
    return str(Fraction(q))


class SparseVector(Mapping):
    __slots__ = ("_data",)

    def __init__(self, values: Mapping | Iterable[tuple[Hashable, Any]] = ()):
        items = values.items() if isinstance(values, Mapping) else values
        data: dict = {}
        for key, value in items:
            q = to_fraction(value)
            if q:
                data[key] = data.get(key, ZERO) + q
                if not data[key]:
                    del data[key]
        self._data = data

    @classmethod
    def _wrap(cls, data: dict):
        obj = cls.__new__(cls)
        obj._data = {k: v for k, v in data.items() if v}
        return obj

    def __getitem__(self, key) -> Fraction:
        return self._data.get(key, ZERO)

    def __contains__(self, key) -> bool:
        return key in self._data

    def __iter__(self) -> Iterator:
        return iter(self._data)

    def __len__(self) -> int:
        return len(self._data)

    def __repr__(self) -> str:
        body = ", ".join(f"{k!r}: {format_rational(v)}" for k, v in sorted(self._data.items(), key=_key))
        return f"{type(self).__name__}({{{body}}})"

    def __eq__(self, other) -> bool:
        if isinstance(other, SparseVector):
            return self._data == other._data
        if isinstance(other, Mapping):
            return self._data == {k: v for k, v in other.items() if v}
        return NotImplemented

    __hash__ = None

    @property
    def support(self) -> frozenset:
        return frozenset(self._data)

    def __add__(self, other: Mapping):
        data = dict(self._data)
        for k, v in other.items():
            data[k] = data.get(k, ZERO) + v
        return self._wrap(data)

    def __sub__(self, other: Mapping):
        data = dict(self._data)
        for k, v in other.items():
            data[k] = data.get(k, ZERO) - v
        return self._wrap(data)

    def __neg__(self):
        return self._wrap({k: -v for k, v in self._data.items()})

    def __mul__(self, scalar):
        s = to_fraction(scalar)
        return self._wrap({k: s * v for k, v in self._data.items()})

    __rmul__ = __mul__


def _key(item):
    return repr(item[0])


class EdgeFlow(SparseVector):
    """Rational values on edge indices, signed relative to the edge orientation."""

    __slots__ = ()


class CycleVector(EdgeFlow):
    """Signed indicator (values in {-1, +1}) of one simple cycle."""

    __slots__ = ()


class MassFunction(SparseVector):
    """Zero-sum rational function on vertices."""

    __slots__ = ()

    def __init__(self, values=()):
        super().__init__(values)
        total = sum(self._data.values(), ZERO)
        if total:
            raise MassNotZero(f"masses sum to {format_rational(total)}, not 0")

    @classmethod
    def _wrap(cls, data: dict):
        obj = super()._wrap(data)
        if sum(obj._data.values(), ZERO):
            raise MassNotZero("masses do not sum to 0")
        return obj

    @property
    def positive(self) -> frozenset:
        return frozenset(k for k, v in self._data.items() if v > 0)

    @property
    def negative(self) -> frozenset:
        return frozenset(k for k, v in self._data.items() if v < 0)


class TransportPlan(SparseVector):
    """Nonnegative masses on ordered vertex pairs ``(source, target)``."""

    __slots__ = ()

    def __init__(self, values=()):
        super().__init__(values)
        for (a, b), v in self._data.items():
            if v < 0:
                raise NotAPlan(f"negative plan entry at ({a}, {b})")
            if a == b:
                raise NotAPlan(f"plan moves mass from {a} to itself")

    def boundary(self) -> MassFunction:
        """The mass function ``f`` with ``f(x) = sum_a P(x, a) - P(a, x)``."""
        f: dict = {}
        for (a, b), v in self._data.items():
            f[a] = f.get(a, ZERO) + v
            f[b] = f.get(b, ZERO) - v
        return MassFunction._wrap(f)

    def total_mass(self) -> Fraction:
        return sum(self._data.values(), ZERO)

    def sorted_items(self) -> list[tuple[tuple, Fraction]]:
        return sorted(self._data.items())


def as_mass(f, vertices=None) -> MassFunction:
    """Coerce a mapping to a ``MassFunction``, optionally checking its keys."""
    mf = f if isinstance(f, MassFunction) else MassFunction(f)
    if vertices is not None:
        for v in mf:
            if v not in vertices:
                raise UnknownVertex(f"mass given on unknown vertex {v!r}")
    return mf
