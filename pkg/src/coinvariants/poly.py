"""Sparse multivariate polynomials over F_q.

A polynomial is a map from exponent tuples to nonzero field codes.  Variables
are named x1..xn (1-based in every user-facing API); the canonical monomial
order is graded lexicographic with x1 > x2 > ... > xn.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import CapExceeded, ContextMismatch, ParseError
from .gf import FieldElement, FieldSpec

EXPONENT_CAP = 2**20
DIVISOR_CAP = 10**7

Exps = tuple[int, ...]


@dataclass(frozen=True)
class VarContext:
    n: int
    field: FieldSpec

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a polynomial ring needs at least one variable")

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        code = self.field.code(c)
        return Polynomial(self, {(0,) * self.n: code} if code else {})

    def var(self, i: int) -> "Polynomial":
        """The variable x_i, 1 <= i <= n."""
        if not 1 <= i <= self.n:
            raise IndexError(f"x{i} not in a ring with {self.n} variables")
        e = [0] * self.n
        e[i - 1] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(1, self.n + 1)]

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.n:
            raise ContextMismatch(f"exponent vector {exps} has wrong length for n={self.n}")
        _check_exps(exps)
        code = self.field.code(coeff)
        return Polynomial(self, {exps: code} if code else {})

    def linear_form(self, coeffs: Sequence[int]) -> "Polynomial":
        """sum_j coeffs[j] x_{j+1}, with coefficients given as field codes."""
        terms = {}
        for j, c in enumerate(coeffs):
            if c:
                e = [0] * self.n
                e[j] = 1
                terms[tuple(e)] = c
        return Polynomial(self, terms)

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()


def _check_exps(exps: Exps) -> None:
    for e in exps:
        if e < 0:
            raise ValueError(f"negative exponent in {exps}")
        if e > EXPONENT_CAP:
            raise CapExceeded(f"exponent {e} exceeds cap {EXPONENT_CAP}")


@dataclass(frozen=True, order=False)
class Monomial:
    exps: Exps

    def __post_init__(self):
        object.__setattr__(self, "exps", tuple(int(e) for e in self.exps))
        _check_exps(self.exps)

    @property
    def n(self) -> int:
        return len(self.exps)

    @property
    def degree(self) -> int:
        return sum(self.exps)

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a + b for a, b in zip(self.exps, other.exps)))

    def num_divisors(self) -> int:
        return math.prod(e + 1 for e in self.exps)

    def divisors(self, cap: int = DIVISOR_CAP) -> list["Monomial"]:
        """All monomial factors, in exponent-tuple (lexicographic) order."""
        return [Monomial(e) for e in divisor_exps(self.exps, cap)]

    def to_poly(self, ctx: VarContext, coeff=1) -> "Polynomial":
        return ctx.monomial(self.exps, coeff)

    def __str__(self) -> str:
        return format_monomial(self.exps)


def divisor_exps(exps: Exps, cap: int = DIVISOR_CAP) -> list[Exps]:
    count = math.prod(e + 1 for e in exps)
    if count > cap:
        raise CapExceeded(f"{count} monomial factors exceed cap {cap}")
    return list(product(*(range(e + 1) for e in exps)))


def divisors(m: Monomial, cap: int = DIVISOR_CAP) -> list[Monomial]:
    return m.divisors(cap)


def format_monomial(exps: Exps) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts) if parts else "1"


def grlex_key(exps: Exps) -> tuple:
    return (sum(exps), exps)


def monomials_of_degree(n: int, d: int) -> list[Exps]:
    """Exponent tuples of total degree d in n variables, ascending graded-lex."""
    out: list[Exps] = []

    def rec(prefix: list[int], left: int, slots: int):
        if slots == 1:
            out.append(tuple(prefix + [left]))
            return
        for e in range(left + 1):
            rec(prefix + [e], left - e, slots - 1)

    rec([], d, n)
    return out


def count_monomials(n: int, d: int) -> int:
    return math.comb(d + n - 1, n - 1)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to codes."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: VarContext, terms: Mapping[Exps, int]):
        self.ctx = ctx
        self.terms = {e: c for e, c in terms.items() if c}

    # -- basic queries ------------------------------------------------------

    @property
    def field(self) -> FieldSpec:
        return self.ctx.field

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def coefficient(self, exps: Sequence[int]) -> FieldElement:
        return FieldElement(self.field, self.terms.get(tuple(exps), 0))

    def monomials(self) -> list[Monomial]:
        return [Monomial(e) for e in self.sorted_exps()]

    def sorted_exps(self) -> list[Exps]:
        """Exponents in descending graded-lex order."""
        return sorted(self.terms, key=grlex_key, reverse=True)

    def items(self) -> Iterator[tuple[Exps, int]]:
        return iter(self.terms.items())

    def _check(self, other: "Polynomial") -> None:
        if self.ctx != other.ctx:
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, FieldElement)):
            return self.ctx.const(other)
        raise TypeError(f"cannot combine a polynomial with {type(other).__name__}")

    # -- arithmetic ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, FieldElement)):
            other = self.ctx.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = F.add(out.get(e, 0), c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial(self.ctx, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        F = self.field
        return Polynomial(self.ctx, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        F = self.field
        code = F.code(c)
        if not code:
            return self.ctx.zero
        return Polynomial(self.ctx, {e: F.mul(code, v) for e, v in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        other = self._coerce(other)
        F = self.field
        out: dict[Exps, int] = {}
        if F.r == 1:
            for ea, ca in self.terms.items():
                for eb, cb in other.terms.items():
                    e = tuple(x + y for x, y in zip(ea, eb))
                    out[e] = out.get(e, 0) + ca * cb
            p = F.p
            res = {}
            for e, c in out.items():
                c %= p
                if c:
                    res[e] = c
            return Polynomial(self.ctx, res)
        add, mul = F.add, F.mul
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = add(out.get(e, 0), mul(ca, cb))
        return Polynomial(self.ctx, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def frobenius(self) -> "Polynomial":
        """f^p, computed termwise (the p-th power map is additive)."""
        F = self.field
        p = F.p
        terms = {}
        for e, c in self.terms.items():
            terms[tuple(x * p for x in e)] = F.power(c, p)
        for e in terms:
            _check_exps(e)
        return Polynomial(self.ctx, terms)

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        if k == 0:
            return self.ctx.one
        p = self.field.p
        if k % p == 0:
            return (self ** (k // p)).frobenius()
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            new = tuple(x * k for x in e)
            _check_exps(new)
            return Polynomial(self.ctx, {new: self.field.power(c, k)})
        result = self.ctx.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- structural operations ------------------------------------------------

    def homogeneous_component(self, d: int) -> "Polynomial":
        return Polynomial(self.ctx, {e: c for e, c in self.terms.items() if sum(e) == d})

    def components(self) -> dict[int, "Polynomial"]:
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {d: Polynomial(self.ctx, t) for d, t in sorted(parts.items())}

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Ring homomorphism x_i -> images[i-1]; output lives in the images' context."""
        if len(images) != self.ctx.n:
            raise ContextMismatch(f"need {self.ctx.n} images, got {len(images)}")
        ctx = images[0].ctx
        for im in images:
            if im.ctx != ctx:
                raise ContextMismatch("images live in different contexts")
            if im.field != self.field:
                raise ContextMismatch("images are over a different field")
        cache: list[dict[int, Polynomial]] = [dict() for _ in images]

        def power(i: int, e: int) -> Polynomial:
            got = cache[i].get(e)
            if got is None:
                got = images[i] ** e
                cache[i][e] = got
            return got

        acc: dict[Exps, int] = {}
        F = self.field
        for exps, c in self.terms.items():
            term = Polynomial(ctx, {(0,) * ctx.n: c})
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
                    if not term:
                        break
            for te, tc in term.terms.items():
                acc[te] = F.add(acc.get(te, 0), tc)
        return Polynomial(ctx, {e: c for e, c in acc.items() if c})

    def restrict_vars(self, keep: Iterable[int]) -> "Polynomial":
        """Set every variable outside ``keep`` (1-based indices) to zero."""
        keep0 = {i - 1 for i in keep}
        drop = [i for i in range(self.ctx.n) if i not in keep0]
        return Polynomial(
            self.ctx,
            {e: c for e, c in self.terms.items() if all(e[i] == 0 for i in drop)},
        )

    def permute_vars(self, perm: Sequence[int]) -> "Polynomial":
        """Apply x_i -> x_{perm[i]} (0-based permutation list)."""
        out = {}
        for e, c in self.terms.items():
            new = [0] * len(e)
            for i, x in enumerate(e):
                new[perm[i]] = x
            out[tuple(new)] = c
        return Polynomial(self.ctx, out)

    def embed(self, ctx: VarContext, offset: int) -> "Polynomial":
        """Rename x_i -> x_{i+offset} inside the larger context."""
        if ctx.field != self.field:
            raise ContextMismatch("field mismatch on embedding")
        if offset + self.ctx.n > ctx.n:
            raise ContextMismatch("target context too small")
        pad_l, pad_r = (0,) * offset, (0,) * (ctx.n - offset - self.ctx.n)
        return Polynomial(ctx, {pad_l + e + pad_r: c for e, c in self.terms.items()})

    # -- text -------------------------------------------------------------------

    def format(self) -> str:
        if not self.terms:
            return "0"
        F = self.field
        parts = []
        for e in self.sorted_exps():
            c = self.terms[e]
            mono = format_monomial(e)
            if mono == "1":
                parts.append(F.format(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{F.format(c)}*{mono}")
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Polynomial({self.format()!r}, n={self.ctx.n}, {self.field!r})"


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    a._check(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def substitute(f: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    return f.substitute(images)


def restrict_vars(f: Polynomial, keep: Iterable[int]) -> Polynomial:
    return f.restrict_vars(keep)


def homogeneous_component(f: Polynomial, d: int) -> Polynomial:
    return f.homogeneous_component(d)


class _Parser:
    """Recursive descent over: expr = ['-'] term (('+'|'-') term)*;
    term = factor ('*' factor)*; factor = atom ['^' int];
    atom = int | '[' ints ']' | 'x' int | '(' expr ')'."""

    def __init__(self, ctx: VarContext, text: str):
        self.ctx = ctx
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise ParseError(msg, self.pos)

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self) -> int:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def parse(self) -> Polynomial:
        if not self.text.strip():
            self.error("empty polynomial")
        out = self.expr()
        if self.peek():
            self.error(f"unexpected character {self.peek()!r}")
        return out

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek() == "*":
            self.pos += 1
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            base = base ** self.integer()
        return base

    def atom(self) -> Polynomial:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        if ch == "[":
            end = self.text.find("]", self.pos)
            if end < 0:
                self.error("unterminated field literal")
            lit = self.text[self.pos:end + 1]
            self.pos = end + 1
            return self.ctx.const(self.ctx.field(_parse_list(lit, self)))
        if ch == "x":
            self.pos += 1
            i = self.integer()
            if not 1 <= i <= self.ctx.n:
                self.error(f"variable x{i} out of range 1..{self.ctx.n}")
            return self.ctx.var(i)
        if ch.isdigit():
            return self.ctx.const(self.integer())
        self.error(f"unexpected {ch!r}" if ch else "unexpected end of input")


def _parse_list(lit: str, parser: _Parser) -> list[int]:
    body = lit[1:-1].strip()
    try:
        return [int(c) for c in body.split(",")] if body else []
    except ValueError:
        parser.error(f"bad field literal {lit!r}")
