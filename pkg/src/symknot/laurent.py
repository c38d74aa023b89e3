"""Exact integer Laurent polynomials in one variable.

Coefficients live in a sparse ``{exponent: coefficient}`` map with no zero
entries.  All arithmetic is exact (Python ints); there is no floating point
anywhere in this module.
"""

from __future__ import annotations

from typing import Iterable, Mapping


class LaurentPoly:
    """Immutable sparse Laurent polynomial with integer coefficients."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] | int = ()):
        if isinstance(coeffs, int):
            coeffs = {0: coeffs}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, int] = {}
        for e, v in items:
            if v:
                c[int(e)] = c.get(int(e), 0) + int(v)
        self._c = {e: c[e] for e in sorted(c) if c[e]}
        self._hash = None

    # construction helpers
    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def from_list(cls, coeffs: Iterable[int], low: int = 0) -> "LaurentPoly":
        """Dense coefficient list starting at exponent ``low``."""
        return cls({low + i: v for i, v in enumerate(coeffs)})

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Parse the sparse ``exponent:coefficient`` serialization."""
        out = {}
        for tok in text.split():
            e, _, v = tok.partition(":")
            if not _:
                raise ValueError(f"bad polynomial term {tok!r}")
            out[int(e)] = out.get(int(e), 0) + int(v)
        return cls(out)

    # basic accessors
    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def __getitem__(self, e: int) -> int:
        return self._c.get(e, 0)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    @property
    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return next(iter(self._c))

    @property
    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return next(reversed(self._c))

    @property
    def span(self) -> int:
        return self.max_exp - self.min_exp if self._c else 0

    def dense(self) -> list[int]:
        """Coefficients from ``min_exp`` to ``max_exp`` inclusive."""
        if not self._c:
            return []
        lo = self.min_exp
        out = [0] * (self.max_exp - lo + 1)
        for e, v in self._c.items():
            out[e - lo] = v
        return out

    # arithmetic
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials can be inverted")
            (e, v), = self._c.items()
            if v not in (1, -1):
                raise ValueError("monomial is not a unit")
            return LaurentPoly({-e * (-n): v ** (-n)})
        result = LaurentPoly({0: 1})
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``var**k``."""
        return LaurentPoly({e + k: v for e, v in self._c.items()})

    def scale_exponents(self, k: int) -> "LaurentPoly":
        """Substitute ``var -> var**k`` (k may be negative)."""
        return LaurentPoly({e * k: v for e, v in self._c.items()})

    def invert_variable(self) -> "LaurentPoly":
        return self.scale_exponents(-1)

    def divide_exponents(self, k: int) -> "LaurentPoly":
        """Substitute ``var -> var**(1/k)``; every exponent must be divisible by k."""
        out = {}
        for e, v in self._c.items():
            if e % k:
                raise ValueError(f"exponent {e} not divisible by {k}")
            out[e // k] = v
        return LaurentPoly(out)

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient ``self / other``; raises ValueError unless the division is exact."""
        other = _coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        if not self:
            return LaurentPoly()
        num = self.dense()
        den = other.dense()
        q = _dense_exact_div(num, den)
        if q is None:
            raise ValueError("polynomial division is not exact")
        return LaurentPoly.from_list(q, self.min_exp - other.min_exp)

    def __call__(self, x: int):
        """Evaluate exactly; negative exponents give a Fraction unless x is a unit."""
        from fractions import Fraction

        total = Fraction(0)
        for e, v in self._c.items():
            total += v * Fraction(x) ** e
        return int(total) if total.denominator == 1 else total

    # comparisons and misc
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._c.items()))
        return self._hash

    def sort_key(self) -> tuple:
        """A total order on polynomials (used for canonical mirror choices)."""
        return tuple(self._c.items())

    def is_palindromic(self) -> bool:
        return self == self.invert_variable()

    def serialize(self) -> str:
        return " ".join(f"{e}:{v}" for e, v in self._c.items())

    def to_string(self, var: str = "t") -> str:
        if not self._c:
            return "0"
        parts = []
        for e, v in self._c.items():
            mag = abs(v)
            if e == 0:
                body = str(mag)
            else:
                pw = var if e == 1 else f"{var}^{e}"
                body = pw if mag == 1 else f"{mag}*{pw}"
            sign = "-" if v < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"LaurentPoly({self._c!r})"


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly({0: x})
    return NotImplemented


def _dense_exact_div(num: list[int], den: list[int]) -> list[int] | None:
    """Exact quotient of dense integer polynomials (lowest degree first)."""
    n, m = len(num), len(den)
    if m > n:
        return None if any(num) else []
    rem = list(num)
    lead = den[-1]
    q = [0] * (n - m + 1)
    for i in range(n - m, -1, -1):
        coef = rem[i + m - 1]
        if coef % lead:
            return None
        c = coef // lead
        q[i] = c
        if c:
            for j in range(m):
                rem[i + j] -= c * den[j]
    if any(rem):
        return None
    return q


# the bracket loop value -A^2 - A^-2
DELTA = LaurentPoly({2: -1, -2: -1})
ONE = LaurentPoly({0: 1})
ZERO = LaurentPoly()
