"""Reference computations written independently of the package.

Field arithmetic is redone with plain coefficient lists, ideal questions go
through sympy's Groebner bases over GF(p), and ranks use a small pure-Python
elimination.  Nothing here imports the package's linear algebra.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import sympy as sp


# -- finite fields as coefficient lists ------------------------------------------


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def pmod(a, mod, p):
    a = list(a)
    inv_lead = pow(mod[-1], p - 2, p)
    while len(_trim(a)) >= len(mod):
        a = _trim(a)
        shift = len(a) - len(mod)
        c = a[-1] * inv_lead % p
        for i, m in enumerate(mod):
            a[i + shift] = (a[i + shift] - c * m) % p
    return _trim(a)


def monic_polys(p, r):
    """Monic degree-r polynomials over Z_p (coefficients low to high), ordered by
    the integer sum c_i p^i of the lower coefficients."""
    for code in range(p**r):
        low = [(code // p**i) % p for i in range(r)]
        yield low + [1]


def is_irreducible_brute(f, p):
    r = len(f) - 1
    for d in range(1, r // 2 + 1):
        for g in monic_polys(p, d):
            for h in monic_polys(p, r - d):
                if pmul(g, h, p) == _trim(f):
                    return False
    return True


def lowest_irreducible(p, r):
    for f in monic_polys(p, r):
        if is_irreducible_brute(f, p):
            return f


class RefField:
    """F_{p^r} with elements as integer codes sum c_i p^i."""

    def __init__(self, p, r):
        self.p, self.r, self.q = p, r, p**r
        self.mod = lowest_irreducible(p, r) if r > 1 else [0, 1]

    def coeffs(self, a):
        return [(a // self.p**i) % self.p for i in range(self.r)]

    def code(self, c):
        c = list(c) + [0] * (self.r - len(c))
        return sum(x * self.p**i for i, x in enumerate(c[: self.r]))

    def add(self, a, b):
        return self.code([(x + y) % self.p for x, y in zip(self.coeffs(a), self.coeffs(b))])

    def mul(self, a, b):
        if self.r == 1:
            return a * b % self.p
        return self.code(pmod(pmul(_trim(self.coeffs(a)), _trim(self.coeffs(b)), self.p), self.mod, self.p))


# -- ideals over prime fields via sympy -----------------------------------------------


def symbols(n):
    return sp.symbols(" ".join(f"x{i}" for i in range(1, n + 1)))


def to_sympy(f, xs):
    """Package polynomial -> sympy expression (prime fields only)."""
    expr = sp.Integer(0)
    for e, c in f.terms.items():
        term = sp.Integer(int(c))
        for x, k in zip(xs, e):
            term *= x**k
        expr += term
    return expr


class GroebnerOracle:
    def __init__(self, gens, n, p):
        self.xs = tuple(symbols(n)) if n > 1 else (symbols(n),)
        self.p = p
        self.n = n
        exprs = [to_sympy(f, self.xs) for f in gens]
        self.G = sp.groebner(exprs, *self.xs, modulus=p, order="grevlex")

    def remainder(self, expr):
        return sp.Poly(self.G.reduce(sp.sympify(expr))[1], *self.xs, modulus=self.p)

    def member(self, expr) -> bool:
        return self.remainder(expr).is_zero

    def standard_monomials(self, top):
        leads = [sp.Poly(g, *self.xs, modulus=self.p).monoms(order="grevlex")[0] for g in self.G.exprs]
        out = []
        for e in itertools.product(range(top + 1), repeat=self.n):
            if sum(e) > top:
                continue
            if not any(all(a >= b for a, b in zip(e, L)) for L in leads):
                out.append(e)
        return out

    def remainder_vector(self, e, columns):
        x = 1
        for v, k in zip(self.xs, e):
            x *= v**k
        rem = self.remainder(x)
        vec = [0] * len(columns)
        for mono, c in zip(rem.monoms(), rem.coeffs()):
            vec[columns[mono]] = int(c) % self.p
        return vec


def rank_mod_p(rows, p):
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], p - 2, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def block_basis_by_groebner(alpha, gens, n, p):
    """True iff the monomial factors of alpha are a basis of F_p[x]/(gens)."""
    oracle = GroebnerOracle(gens, n, p)
    top = sum(alpha)
    std = oracle.standard_monomials(top + 1)
    if any(sum(e) == top + 1 for e in std):
        return False
    columns = {e: k for k, e in enumerate(std)}
    factors = list(itertools.product(*[range(t + 1) for t in alpha]))
    if len(factors) != len(std):
        return False
    rows = [oracle.remainder_vector(e, columns) for e in factors]
    return rank_mod_p(rows, p) == len(std)


@lru_cache(maxsize=None)
def gl_elements_brute(n, p):
    """All invertible n x n matrices over Z_p, by determinant."""
    out = set()
    for entries in itertools.product(range(p), repeat=n * n):
        M = sp.Matrix(n, n, entries)
        if M.det() % p:
            out.add(tuple(tuple(int(x) for x in M.row(i)) for i in range(n)))
    return frozenset(out)
