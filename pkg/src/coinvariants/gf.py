"""Finite fields F_q, q = p^r, with elements encoded as small integers.

An element with coefficient vector (c_0, ..., c_{r-1}) over Z_p (meaning
c_0 + c_1 t + ... + c_{r-1} t^{r-1} modulo the field's modulus) is encoded as
the integer c_0 + c_1 p + ... + c_{r-1} p^{r-1}.  Codes 0 and 1 are the field
zero and one, and enumeration order is code order.

Polynomials and matrices store raw codes; :class:`FieldElement` is the
user-facing value type wrapping one code.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import CapExceeded, DivisionByZero, FieldMismatch, NonPrime, NotDividing, ParseError

FIELD_CAP = 512


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _polymod(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial b, coefficients low-to-high."""
    a = _trim(list(a))
    db = len(b) - 1
    while len(a) - 1 >= db:
        lead = a[-1]
        shift = len(a) - 1 - db
        for i, coef in enumerate(b):
            a[i + shift] = (a[i + shift] - lead * coef) % p
        a = _trim(a)
    return a


def _polymulmod(a, b, mod, p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _polymod(out, mod, p)


def is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    r = len(poly) - 1
    if r < 1 or poly[-1] != 1:
        return False
    for d in range(1, r // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _polymod(list(poly), list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, r: int) -> tuple[int, ...]:
    """Lowest monic irreducible of degree r, ordering candidates by the code of
    their lower coefficients (c_0 + c_1 p + ...)."""
    for code in range(p**r):
        low = [(code // p**i) % p for i in range(r)]
        poly = tuple(low) + (1,)
        if is_irreducible(poly, p):
            return poly
    raise AssertionError(f"no irreducible polynomial of degree {r} over Z_{p}")


class FieldSpec:
    """The finite field Z_p[t]/(modulus).

    Instances are immutable; use :func:`make_field` to get a cached instance.
    """

    def __init__(self, p: int, r: int = 1, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise NonPrime(f"{p} is not prime")
        if r < 1:
            raise ValueError("extension degree must be >= 1")
        if p**r > FIELD_CAP:
            raise CapExceeded(f"field size {p}^{r} exceeds cap {FIELD_CAP}")
        if modulus is None:
            modulus = smallest_irreducible(p, r)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != r + 1 or not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is not a monic irreducible of degree {r}")
        self.p = p
        self.r = r
        self.q = p**r
        self.modulus = modulus
        if r > 1:
            self._build_tables()

    # -- construction helpers -------------------------------------------------

    def to_coeffs(self, code: int) -> tuple[int, ...]:
        return tuple((code // self.p**i) % self.p for i in range(self.r))

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.r:
            coeffs = _polymod([c % self.p for c in coeffs], list(self.modulus), self.p)
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs))

    def _build_tables(self) -> None:
        p, q, r = self.p, self.q, self.r
        digits = np.array([self.to_coeffs(c) for c in range(q)], dtype=np.int64)
        weights = p ** np.arange(r, dtype=np.int64)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        self._add = add
        self._neg = ((-digits) % p) @ weights
        # exp/log tables from a primitive element
        mod = list(self.modulus)
        for g in range(2, q):
            powers = [1]
            gc = list(self.to_coeffs(g))
            cur = [1]
            while True:
                cur = _polymulmod(cur, gc, mod, p)
                code = self.from_coeffs(cur)
                if code == 1:
                    break
                powers.append(code)
            if len(powers) == q - 1:
                break
        exp = np.array(powers + powers, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        log[np.array(powers)] = np.arange(q - 1)
        mul = exp[(log[:, None] + log[None, :]) % (q - 1)]
        mul[0, :] = 0
        mul[:, 0] = 0
        self._mul = mul
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp[(q - 1 - log[1:]) % (q - 1)]
        self._inv = inv
        # plain-list copies: scalar lookups on lists are much faster than numpy
        self._add_l = add.tolist()
        self._mul_l = mul.tolist()
        self._neg_l = self._neg.tolist()
        self._inv_l = inv.tolist()

    # -- arithmetic on codes --------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a + b) % self.p
        return self._add_l[a][b]

    def neg(self, a: int) -> int:
        if self.r == 1:
            return (-a) % self.p
        return self._neg_l[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a * b) % self.p
        return self._mul_l[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero in F_%d" % self.q)
        if self.r == 1:
            return pow(a, self.p - 2, self.p)
        return self._inv_l[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out = 1
        while k:
            if k & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            k >>= 1
        return out

    def from_int(self, n: int) -> int:
        """Image of an integer in the prime subfield."""
        return n % self.p

    def order(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("zero has no multiplicative order")
        k, cur = 1, a
        while cur != 1:
            cur = self.mul(cur, a)
            k += 1
        return k

    # -- value-level API ----------------------------------------------------

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch("element belongs to another field")
            return value
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self.from_coeffs(value))
        return FieldElement(self, self.from_int(int(value)))

    def code(self, value) -> int:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch("element belongs to another field")
            return value.value
        if isinstance(value, (list, tuple)):
            return self.from_coeffs(value)
        return self.from_int(int(value))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def primitive_element(self) -> int:
        for a in range(1, self.q):
            if self.order(a) == self.q - 1:
                return a
        raise AssertionError("multiplicative group is not cyclic?")

    def basis_over_prime_field(self) -> list[int]:
        """Codes of 1, t, ..., t^{r-1}."""
        return [self.p**i for i in range(self.r)]

    def format(self, code: int) -> str:
        if code < self.p:
            return str(code)
        return "[" + ",".join(str(c) for c in self.to_coeffs(code)) + "]"

    def parse(self, text: str) -> int:
        """Field literal: an integer ("2") or a coefficient list ("[1,1]")."""
        s = text.strip()
        try:
            if s.startswith("["):
                if not s.endswith("]"):
                    raise ParseError(f"unterminated field literal {text!r}")
                body = s[1:-1].strip()
                coeffs = [int(c) for c in body.split(",")] if body else []
                return self.from_coeffs(coeffs)
            return self.from_int(int(s))
        except ValueError as exc:
            raise ParseError(f"bad field literal {text!r}") from exc

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    def __repr__(self) -> str:
        if self.r == 1:
            return f"F_{self.q}"
        return f"F_{self.q}[mod {self.modulus}]"

    def __reduce__(self):
        return (make_field, (self.p, self.r))


@functools.lru_cache(maxsize=None)
def make_field(p: int, r: int = 1) -> FieldSpec:
    """F_{p^r} with the lowest monic irreducible modulus (deterministic)."""
    return FieldSpec(p, r)


def field_of_order(q: int) -> FieldSpec:
    if q < 2:
        raise NonPrime(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            break
    r, rest = 0, q
    while rest % p == 0:
        rest //= p
        r += 1
    if rest != 1:
        raise NonPrime(f"{q} is not a prime power")
    return make_field(p, r)


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.to_coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def _wrap(self, code: int) -> "FieldElement":
        return FieldElement(self.field, code)

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.div(b, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, k: int):
        return self._wrap(self.field.power(self.value, k))

    def __bool__(self) -> bool:
        return self.value != 0

    def inverse(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.value))

    def order(self) -> int:
        return self.field.order(self.value)

    def __int__(self) -> int:
        if self.value >= self.field.p:
            raise TypeError(f"{self!r} is not in the prime subfield")
        return self.value

    def __repr__(self) -> str:
        return self.field.format(self.value)


def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def enumerate_elements(field: FieldSpec) -> list[FieldElement]:
    return [FieldElement(field, c) for c in range(field.q)]


def primitive_mth_root(field: FieldSpec, m: int) -> FieldElement:
    """Smallest element (in enumeration order) of multiplicative order m."""
    if m < 1 or (field.q - 1) % m:
        raise NotDividing(f"{m} does not divide q-1 = {field.q - 1}")
    for c in range(1, field.q):
        if field.order(c) == m:
            return FieldElement(field, c)
    raise AssertionError("unreachable: cyclic group has elements of every order dividing q-1")
