"""Exact scalar arithmetic: rationals and cyclotomic extensions Q(zeta_n).

Every scalar in a computation is either a `fractions.Fraction` or a `Cyclo`
with one shared conductor.  Cyclotomics live in the power basis
1, z, ..., z^{phi(n)-1} reduced modulo the n-th cyclotomic polynomial, so
equality is coefficient comparison.  A Cyclo whose value is rational is
collapsed to a Fraction on construction; mixing two different conductors is
a hard error (rationals embed freely).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Union

Scalar = Union[Fraction, "Cyclo"]

ZERO = Fraction(0)
ONE = Fraction(1)


class ConductorMixError(ValueError):
    """Two cyclotomics with different conductors met in one operation."""


class PrimitivityError(ValueError):
    """root_of_unity(n, k) with gcd(k, n) != 1."""


class ScalarParseError(ValueError):
    """Malformed scalar in a JSON document."""


# ---------------------------------------------------------------------------
# polynomials over Q, coefficient tuples low -> high
# ---------------------------------------------------------------------------

def _poly_trim(c):
    n = len(c)
    while n > 0 and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def _poly_mul(a, b):
    if not a or not b:
        return ()
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _poly_trim(out)


def _poly_divmod(a, b):
    # exact division over Q; b must be nonzero
    a = list(a)
    q = [ZERO] * max(0, len(a) - len(b) + 1)
    inv_lead = ONE / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        coef = a[i + len(b) - 1] * inv_lead
        if coef:
            q[i] = coef
            for j, y in enumerate(b):
                a[i + j] -= coef * y
    return _poly_trim(q), _poly_trim(a)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Coefficients of Phi_n, low -> high, computed by exact division."""
    if n < 1:
        raise ValueError("conductor must be positive")
    # x^n - 1 divided by the product of Phi_d for proper divisors d
    num = tuple([Fraction(-1)] + [ZERO] * (n - 1) + [ONE])
    den = (ONE,)
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul(den, cyclotomic_polynomial(d))
    q, r = _poly_divmod(num, den)
    assert r == (), "cyclotomic division must be exact"
    return q


class Cyclo:
    """Element of Q(zeta_n) in the power basis mod Phi_n."""

    __slots__ = ("n", "coeffs", "_hash")

    def __init__(self, n: int, coeffs):
        # internal constructor: assumes coeffs already length phi(n), reduced,
        # and not rational-valued.  Use make() from user code.
        self.n = n
        self.coeffs = tuple(coeffs)
        self._hash = None

    @staticmethod
    def make(n: int, coeffs) -> Scalar:
        """Canonicalize: reduce mod Phi_n, collapse rational values."""
        if n < 1:
            raise ValueError("conductor must be positive")
        d = euler_phi(n)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > d:
            _, rem = _poly_divmod(tuple(cs), cyclotomic_polynomial(n))
            cs = list(rem)
        cs = cs + [ZERO] * (d - len(cs))
        if all(c == 0 for c in cs[1:]):
            return cs[0]  # rational value (covers zeta_1 = 1, zeta_2 = -1)
        return Cyclo(n, cs)

    # -- plumbing ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Cyclo):
            if other.n != self.n:
                raise ConductorMixError(
                    f"cannot mix conductors {self.n} and {other.n}")
            return other.coeffs
        if isinstance(other, (int, Fraction)):
            d = euler_phi(self.n)
            return (Fraction(other),) + (ZERO,) * (d - 1)
        return None

    def __eq__(self, other):
        if isinstance(other, Cyclo):
            return self.n == other.n and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return False  # canonical Cyclo is never rational-valued
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.coeffs))
        return self._hash

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"Cyclo({self.n}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*z")
            else:
                terms.append(f"{c}*z^{i}")
        body = " + ".join(terms) if terms else "0"
        return f"({body} | z = zeta_{self.n})"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return Cyclo.make(self.n, [a + b for a, b in zip(self.coeffs, oc)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.n, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return Cyclo.make(self.n, [a - b for a, b in zip(self.coeffs, oc)])

    def __rsub__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return Cyclo.make(self.n, [b - a for a, b in zip(self.coeffs, oc)])

    def __mul__(self, other):
        if isinstance(other, Cyclo):
            if other.n != self.n:
                raise ConductorMixError(
                    f"cannot mix conductors {self.n} and {other.n}")
            prod = _poly_mul(self.coeffs, other.coeffs)
            return Cyclo.make(self.n, prod)
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            if not f:
                return ZERO
            return Cyclo(self.n, tuple(c * f for c in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse via extended Euclid in Q[x] mod Phi_n."""
        if not self:
            raise ZeroDivisionError("inverse of zero cyclotomic")
        phi = cyclotomic_polynomial(self.n)

        def sub(a, b):
            n = max(len(a), len(b))
            a = list(a) + [ZERO] * (n - len(a))
            b = list(b) + [ZERO] * (n - len(b))
            return _poly_trim([x - y for x, y in zip(a, b)])

        # invariant: r_i = s_i * self (mod phi)
        r0, s0 = phi, ()
        r1, s1 = _poly_trim(self.coeffs), (ONE,)
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, s0, r1, s1 = r1, s1, r, sub(s0, _poly_mul(q, s1))
        if not r1:
            raise ZeroDivisionError("element not invertible (degenerate)")
        c = r1[0]
        return Cyclo.make(self.n, [s / c for s in s1])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (ONE / Fraction(other))
        if isinstance(other, Cyclo):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Fraction(other) * self.inverse()
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result: Scalar = ONE
        base: Scalar = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


def scalar_conductor(s: Scalar):
    """Conductor of a scalar, or None for rationals."""
    return s.n if isinstance(s, Cyclo) else None


def as_scalar(x) -> Scalar:
    if isinstance(x, Cyclo):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"not a scalar: {x!r}")


def root_of_unity(n: int, k: int) -> Scalar:
    """zeta_n^k as an exact scalar.  Requires gcd(k, n) = 1."""
    if n < 1:
        raise ValueError("n must be positive")
    k = k % n
    if gcd(k, n) != 1:
        raise PrimitivityError(f"zeta_{n}^{k} is not a primitive {n}-th root")
    if n == 1:
        return ONE
    if n == 2:
        return -ONE
    coeffs = [ZERO] * k + [ONE]
    return Cyclo.make(n, coeffs)


def q_integer(s: int, p) -> Scalar:
    """(s)_p = 1 + p + ... + p^{s-1}."""
    p = as_scalar(p)
    total: Scalar = ZERO
    power: Scalar = ONE
    for _ in range(s):
        total = total + power
        power = power * p
    return total


def q_binomial(m: int, l: int, p) -> Scalar:
    """Gaussian binomial (m choose l)_p by the q-Pascal recurrence.

    Never divides q-factorials, so roots of unity are safe.
    """
    if l < 0 or l > m or m < 0:
        raise ValueError(f"q_binomial needs 0 <= l <= m, got ({m}, {l})")
    p = as_scalar(p)
    row = [ONE]  # row for m = 0
    for i in range(1, m + 1):
        new = [ONE]
        power: Scalar = p  # p^j for j = 1..
        for j in range(1, i):
            new.append(row[j - 1] + power * row[j])
            power = power * p
        new.append(ONE)
        row = new
    return row[l]


# ---------------------------------------------------------------------------
# JSON encoding: rationals as "p/q", cyclotomics as {"n": n, "coeffs": [...]}
# ---------------------------------------------------------------------------

def parse_rational(s: str) -> Fraction:
    if not isinstance(s, str):
        raise ScalarParseError(f"rational must be a string, got {s!r}")
    parts = s.split("/")
    try:
        if len(parts) == 1:
            return Fraction(int(parts[0]))
        if len(parts) == 2:
            num, den = int(parts[0]), int(parts[1])
            if den == 0:
                raise ScalarParseError(f"zero denominator in {s!r}")
            return Fraction(num, den)
    except ValueError as e:
        raise ScalarParseError(f"malformed rational {s!r}") from e
    raise ScalarParseError(f"malformed rational {s!r}")


def rational_to_json(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def scalar_to_json(s: Scalar):
    if isinstance(s, Cyclo):
        return {"n": s.n, "coeffs": [rational_to_json(c) for c in s.coeffs]}
    return rational_to_json(Fraction(s))


def scalar_from_json(obj) -> Scalar:
    if isinstance(obj, str):
        return parse_rational(obj)
    if isinstance(obj, dict):
        try:
            n = int(obj["n"])
            coeffs = obj["coeffs"]
        except (KeyError, TypeError, ValueError) as e:
            raise ScalarParseError(f"malformed cyclotomic {obj!r}") from e
        if n < 1:
            raise ScalarParseError(f"bad conductor in {obj!r}")
        if len(coeffs) > euler_phi(n):
            raise ScalarParseError(f"too many coefficients for conductor {n}")
        return Cyclo.make(n, [parse_rational(c) for c in coeffs])
    raise ScalarParseError(f"not a scalar encoding: {obj!r}")
