"""First-order jets: a complex value carried together with its four partials.

A :class:`Jet` is a dual number over the four chart coordinates. Arithmetic
follows the sum, product and chain rules exactly, so evaluating an expression
over jets yields the function value and its exact gradient in one pass.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

NDIM = 4


class DomainError(ValueError):
    """An elementary function was evaluated outside its domain."""


def _zeros() -> np.ndarray:
    return np.zeros(NDIM, dtype=complex)


class Jet:
    """Complex value with first partials ``d/dx^0 .. d/dx^3``."""

    __slots__ = ("value", "partials")

    def __init__(self, value, partials=None):
        self.value = complex(value)
        if partials is None:
            self.partials = _zeros()
        else:
            self.partials = np.asarray(partials, dtype=complex)

    @classmethod
    def constant(cls, value) -> "Jet":
        return cls(value)

    @classmethod
    def coordinate(cls, index: int, value: float) -> "Jet":
        p = _zeros()
        p[index] = 1.0
        return cls(value, p)

    def is_constant(self) -> bool:
        return not np.any(self.partials)

    def is_real(self, tol: float = 0.0) -> bool:
        return abs(self.value.imag) <= tol and bool(np.all(np.abs(self.partials.imag) <= tol))

    def conjugate(self) -> "Jet":
        return Jet(self.value.conjugate(), self.partials.conj())

    def __repr__(self) -> str:
        return f"Jet({self.value!r}, {self.partials.tolist()!r})"

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = _lift(other)
        return Jet(self.value + other.value, self.partials + other.partials)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.value, -self.partials)

    def __sub__(self, other):
        other = _lift(other)
        return Jet(self.value - other.value, self.partials - other.partials)

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        return Jet(
            self.value * other.value,
            self.value * other.partials + other.value * self.partials,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _lift(other)
        if other.value == 0:
            raise DomainError("division by zero")
        q = self.value / other.value
        return Jet(q, (self.partials - q * other.partials) / other.value)

    def __rtruediv__(self, other):
        return _lift(other) / self

    def __pow__(self, other):
        return power(self, _lift(other))

    def __rpow__(self, other):
        return power(_lift(other), self)


def _lift(x) -> Jet:
    return x if isinstance(x, Jet) else Jet(x)


def _is_real(z: complex) -> bool:
    return z.imag == 0.0


def _chain(u: Jet, value: complex, deriv: complex) -> Jet:
    return Jet(value, deriv * u.partials)


def sin(u: Jet) -> Jet:
    return _chain(u, cmath.sin(u.value), cmath.cos(u.value))


def cos(u: Jet) -> Jet:
    return _chain(u, cmath.cos(u.value), -cmath.sin(u.value))


def tan(u: Jet) -> Jet:
    c = cmath.cos(u.value)
    if abs(c) < 1e-300:
        raise DomainError("tan at a pole")
    t = cmath.sin(u.value) / c
    return _chain(u, t, 1.0 + t * t)


def cot(u: Jet) -> Jet:
    s = cmath.sin(u.value)
    if abs(s) < 1e-14:
        raise DomainError("cot at a multiple of pi")
    ct = cmath.cos(u.value) / s
    return _chain(u, ct, -(1.0 + ct * ct))


def exp(u: Jet) -> Jet:
    e = cmath.exp(u.value)
    return _chain(u, e, e)


def ln(u: Jet) -> Jet:
    if u.value == 0 or (_is_real(u.value) and u.value.real < 0):
        raise DomainError("ln of a non-positive number")
    return _chain(u, cmath.log(u.value), 1.0 / u.value)


def sqrt(u: Jet) -> Jet:
    z = u.value
    if _is_real(z) and z.real < 0:
        raise DomainError("sqrt of a negative number")
    if z == 0:
        if u.is_constant():
            return Jet(0.0)
        raise DomainError("sqrt at zero: derivative is singular")
    s = cmath.sqrt(z)
    return _chain(u, s, 0.5 / s)


def absolute(u: Jet) -> Jet:
    if not u.is_real():
        raise DomainError("abs of a complex-valued argument is not differentiable")
    v = u.value.real
    if v == 0:
        if u.is_constant():
            return Jet(0.0)
        raise DomainError("abs at zero: derivative is singular")
    return _chain(u, abs(v), math.copysign(1.0, v))


def power(base: Jet, expo: Jet) -> Jet:
    if expo.is_constant():
        n = expo.value
        if _is_real(n) and float(n.real).is_integer():
            k = int(n.real)
            if base.value == 0 and k < 1:
                raise DomainError("zero raised to a non-positive power")
            if k == 0:
                return Jet(1.0)
            return _chain(base, base.value**k, k * base.value ** (k - 1))
        if base.value == 0:
            if _is_real(n) and n.real > 1 and base.is_constant():
                return Jet(0.0)
            raise DomainError("zero raised to a fractional power")
        if _is_real(base.value) and base.value.real < 0 and _is_real(n):
            raise DomainError("negative base raised to a fractional power")
        val = cmath.exp(n * cmath.log(base.value))
        return _chain(base, val, n * val / base.value)
    return exp(expo * ln(base))


FUNCTIONS = {
    "sin": sin,
    "cos": cos,
    "tan": tan,
    "cot": cot,
    "exp": exp,
    "ln": ln,
    "sqrt": sqrt,
    "abs": absolute,
}
