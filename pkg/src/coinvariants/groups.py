"""Matrix groups over F_q: the block families GL_n, GL_I, U_I, L_I, G_I,
the imprimitive groups G(m,a,n), and the presets built from them.

Matrices act on F_q[x_1..x_n] by column substitution
x_i -> sum_j g[j][i] x_j, so act(g, act(h, f)) = act(g h, f) and the
variables of the first block are fixed by the unipotent radical.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .errors import CapExceeded, FieldMismatch, InvalidSpec, ParseError, SizeMismatch
from .gf import FieldSpec, primitive_mth_root
from .poly import Polynomial, VarContext

CLOSURE_CAP = 10**5
SIGMA_MAX_N = 8


@dataclass(frozen=True)
class Composition:
    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(x) for x in self.parts))
        if not self.parts or any(x < 1 for x in self.parts):
            raise InvalidSpec(f"composition parts must be positive: {self.parts}")

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def l(self) -> int:
        return len(self.parts)

    @property
    def partial_sums(self) -> tuple[int, ...]:
        """(m_0, m_1, ..., m_l) with m_0 = 0 and m_l = n."""
        out = [0]
        for x in self.parts:
            out.append(out[-1] + x)
        return tuple(out)

    def block_of(self, s: int) -> int:
        """0-based block index of the 1-based variable s."""
        m = self.partial_sums
        for j in range(self.l):
            if m[j] < s <= m[j + 1]:
                return j
        raise IndexError(f"variable {s} outside 1..{self.n}")

    def tau(self, s: int) -> int:
        """m_j for the block j containing variable s (number of earlier variables)."""
        return self.partial_sums[self.block_of(s)]

    def block_range(self, i: int) -> range:
        """1-based variable indices of block i (0-based block index)."""
        m = self.partial_sums
        return range(m[i] + 1, m[i + 1] + 1)

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.parts)


# -- group specifications -------------------------------------------------------


class GroupSpec:
    """Base class of the group-family variants."""

    n: int

    def validate(self, field: FieldSpec) -> None:
        pass

    def label(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.label()


@dataclass(frozen=True)
class Trivial(GroupSpec):
    n: int

    def label(self) -> str:
        return f"T({self.n})"


@dataclass(frozen=True)
class GL(GroupSpec):
    n: int

    def label(self) -> str:
        return f"GL({self.n})"


@dataclass(frozen=True)
class Unipotent(GroupSpec):
    composition: Composition

    @property
    def n(self) -> int:
        return self.composition.n

    def label(self) -> str:
        return f"U({self.composition})"


@dataclass(frozen=True)
class Parabolic(GroupSpec):
    composition: Composition

    @property
    def n(self) -> int:
        return self.composition.n

    def label(self) -> str:
        return f"P({self.composition})"

    def as_block_triangular(self) -> "BlockTriangular":
        c = self.composition
        return BlockTriangular(c, tuple(GL(k) for k in c.parts))


@dataclass(frozen=True)
class Borel(GroupSpec):
    n: int

    def label(self) -> str:
        return f"B({self.n})"

    @property
    def composition(self) -> Composition:
        return Composition((1,) * self.n)

    def as_block_triangular(self) -> "BlockTriangular":
        return Parabolic(self.composition).as_block_triangular()


def _check_blocks(composition: Composition, blocks: tuple[GroupSpec, ...]) -> None:
    if len(blocks) != composition.l:
        raise InvalidSpec(f"{composition.l} blocks expected, got {len(blocks)}")
    for k, (size, b) in enumerate(zip(composition.parts, blocks)):
        if b.n != size:
            raise InvalidSpec(f"block {k + 1} has size {b.n}, composition says {size}")


@dataclass(frozen=True)
class Levi(GroupSpec):
    composition: Composition
    blocks: tuple[GroupSpec, ...]

    def __post_init__(self):
        _check_blocks(self.composition, self.blocks)

    @property
    def n(self) -> int:
        return self.composition.n

    def validate(self, field):
        for b in self.blocks:
            b.validate(field)

    def label(self) -> str:
        return f"L({self.composition};{','.join(b.label() for b in self.blocks)})"


@dataclass(frozen=True)
class BlockTriangular(GroupSpec):
    composition: Composition
    blocks: tuple[GroupSpec, ...]

    def __post_init__(self):
        _check_blocks(self.composition, self.blocks)

    @property
    def n(self) -> int:
        return self.composition.n

    def validate(self, field):
        for b in self.blocks:
            b.validate(field)

    def label(self) -> str:
        return f"GI({self.composition};{','.join(b.label() for b in self.blocks)})"

    def as_block_triangular(self) -> "BlockTriangular":
        return self


@dataclass(frozen=True)
class Imprimitive(GroupSpec):
    m: int
    a: int
    n: int

    def validate(self, field):
        if self.m < 1 or self.a < 1 or self.n < 1:
            raise InvalidSpec(f"G({self.m},{self.a},{self.n}): parameters must be positive")
        if self.m % self.a:
            raise InvalidSpec(f"G({self.m},{self.a},{self.n}): a must divide m")
        if (field.q - 1) % self.m:
            raise InvalidSpec(
                f"G({self.m},{self.a},{self.n}) needs m | q-1 but q = {field.q}"
            )

    def label(self) -> str:
        return f"G({self.m},{self.a},{self.n})"


@dataclass(frozen=True)
class WeylCartan(GroupSpec):
    n1: int
    n2: int
    m: int

    @property
    def n(self) -> int:
        return self.n1 + self.n2

    def validate(self, field):
        if field.r != 1:
            raise InvalidSpec("the Weyl-type preset is defined over prime fields only")
        if self.m not in (1, 2):
            raise InvalidSpec("the Weyl-type preset needs m in {1, 2}")
        if (field.p - 1) % self.m:
            raise InvalidSpec(f"m = {self.m} does not divide p-1 = {field.p - 1}")

    def label(self) -> str:
        return f"W({self.n1},{self.n2};m={self.m})"

    def as_block_triangular(self) -> BlockTriangular:
        return BlockTriangular(
            Composition((self.n1, self.n2)),
            (GL(self.n1), Imprimitive(self.m, 1, self.n2)),
        )


# -- spec parsing -----------------------------------------------------------------


def _split_top(text: str, sep: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [s.strip() for s in out]


def _ints(items: list[str], text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in items)
    except ValueError as exc:
        raise ParseError(f"expected integers in group spec {text!r}") from exc


def parse_group(text: str, block_size: int | None = None) -> GroupSpec:
    """Parse "GL(3)", "U(2,1)", "P(2,1)", "G(2,1,2)", "GI(2,1;GL,G(2,1,1))",
    "L(...)", "B(3)", "W(2,1;m=2)", "T(2)", "S(3)".

    Inside a block list a bare name ("GL", "S", "T", "B") takes the block size.
    """
    s = text.strip().replace(" ", "")
    if "(" not in s:
        if block_size is None:
            raise ParseError(f"group spec {text!r} needs parameters")
        name, args = s, None
    else:
        if not s.endswith(")"):
            raise ParseError(f"unbalanced parentheses in {text!r}", len(s))
        cut = s.index("(")
        name, args = s[:cut], s[cut + 1:-1]
    name = name.upper()
    if args is None:
        if name == "GL":
            return GL(block_size)
        if name == "S":
            return Imprimitive(1, 1, block_size)
        if name == "T":
            return Trivial(block_size)
        if name == "B":
            return Borel(block_size)
        raise ParseError(f"unknown block group {text!r}")
    sections = _split_top(args, ";")
    head = _split_top(sections[0], ",")
    if name in ("GL", "B", "T", "S"):
        if len(head) != 1 or len(sections) != 1:
            raise ParseError(f"{name} takes one argument: {text!r}")
        (k,) = _ints(head, text)
        if name == "S":
            return Imprimitive(1, 1, k)
        return {"GL": GL, "B": Borel, "T": Trivial}[name](k)
    if name in ("U", "P"):
        comp = Composition(_ints(head, text))
        return Unipotent(comp) if name == "U" else Parabolic(comp)
    if name == "G":
        vals = _ints(head, text)
        if len(vals) == 2 and block_size is not None:
            vals = vals + (block_size,)
        if len(vals) != 3:
            raise ParseError(f"G(m,a,n) takes three arguments: {text!r}")
        return Imprimitive(*vals)
    if name in ("GI", "L"):
        if len(sections) != 2:
            raise ParseError(f"{name} needs 'parts;blocks': {text!r}")
        comp = Composition(_ints(head, text))
        names = _split_top(sections[1], ",")
        if len(names) != comp.l:
            raise ParseError(f"{comp.l} blocks expected in {text!r}")
        blocks = tuple(parse_group(b, size) for b, size in zip(names, comp.parts))
        return BlockTriangular(comp, blocks) if name == "GI" else Levi(comp, blocks)
    if name == "W":
        if len(sections) != 2 or not sections[1].startswith("m="):
            raise ParseError(f"W needs 'n1,n2;m=k': {text!r}")
        n1, n2 = _ints(head, text)
        (m,) = _ints([sections[1][2:]], text)
        return WeylCartan(n1, n2, m)
    raise ParseError(f"unknown group family {name!r}")


# -- matrices ---------------------------------------------------------------------


@dataclass(frozen=True)
class MatrixElement:
    field: FieldSpec
    entries: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "MatrixElement":
        return cls(field, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def from_rows(cls, field: FieldSpec, rows) -> "MatrixElement":
        return cls(field, tuple(tuple(field.code(x) for x in row) for row in rows))

    def __matmul__(self, other: "MatrixElement") -> "MatrixElement":
        if self.n != other.n:
            raise SizeMismatch("matrix sizes differ")
        F = self.field
        cols = list(zip(*other.entries))
        rows = []
        for row in self.entries:
            out = []
            for col in cols:
                acc = 0
                for a, b in zip(row, col):
                    if a and b:
                        acc = F.add(acc, F.mul(a, b))
                out.append(acc)
            rows.append(tuple(out))
        return MatrixElement(F, tuple(rows))

    def column(self, i: int) -> tuple[int, ...]:
        return tuple(row[i] for row in self.entries)

    def minus_identity(self) -> list[list[int]]:
        F = self.field
        return [
            [F.sub(x, 1) if i == j else x for j, x in enumerate(row)]
            for i, row in enumerate(self.entries)
        ]

    def rank_of_difference(self) -> int:
        return matrix_rank(self.field, self.minus_identity())

    def is_invertible(self) -> bool:
        return matrix_rank(self.field, [list(r) for r in self.entries]) == self.n

    def is_pseudo_reflection(self) -> bool:
        """Not the identity and fixes a hyperplane pointwise."""
        return self.rank_of_difference() == 1

    def __str__(self) -> str:
        F = self.field
        return "[" + ", ".join("[" + ",".join(F.format(x) for x in r) + "]" for r in self.entries) + "]"


def matrix_rank(field: FieldSpec, rows: list[list[int]]) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = field.inv(rows[rank][c])
        rows[rank] = [field.mul(inv, x) for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _elementary(field: FieldSpec, n: int, s: int, t: int, lam: int) -> MatrixElement:
    """Identity plus lam at 1-based position (s, t)."""
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    rows[s - 1][t - 1] = field.add(rows[s - 1][t - 1], lam)
    return MatrixElement(field, tuple(tuple(r) for r in rows))


def _diag(field: FieldSpec, values: Sequence[int]) -> MatrixElement:
    n = len(values)
    return MatrixElement(
        field, tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n))
    )


def _transposition(field: FieldSpec, n: int, i: int) -> MatrixElement:
    """Swap of the 1-based coordinates i and i+1."""
    perm = list(range(n))
    perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return MatrixElement(field, tuple(tuple(int(perm[r] == c) for c in range(n)) for r in range(n)))


def _block_embed(g: MatrixElement, n: int, offset: int) -> MatrixElement:
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for i, row in enumerate(g.entries):
        for j, x in enumerate(row):
            rows[offset + i][offset + j] = x
    return MatrixElement(g.field, tuple(tuple(r) for r in rows))


def _unipotent_generators(comp: Composition, field: FieldSpec) -> list[MatrixElement]:
    n = comp.n
    gens = []
    for t in range(1, n + 1):
        for s in range(1, comp.tau(t) + 1):
            for lam in field.basis_over_prime_field():
                gens.append(_elementary(field, n, s, t, lam))
    return gens


def generators(spec: GroupSpec, field: FieldSpec) -> list[MatrixElement]:
    """A generating set.  Every element is a pseudo-reflection except the
    torus generator diag(z, 1/z, 1, ...) of G(m,a,n), a product of two."""
    spec.validate(field)
    n = spec.n
    if isinstance(spec, Trivial):
        return []
    if isinstance(spec, GL):
        gens = []
        if field.q > 2:
            zeta = field.primitive_element()
            gens.append(_diag(field, [zeta] + [1] * (n - 1)))
        for i in range(1, n):
            gens.append(_transposition(field, n, i))
        if n >= 2:
            for lam in field.basis_over_prime_field():
                gens.append(_elementary(field, n, 1, 2, lam))
        return gens
    if isinstance(spec, Unipotent):
        return _unipotent_generators(spec.composition, field)
    if isinstance(spec, Imprimitive):
        m, a = spec.m, spec.a
        zeta = primitive_mth_root(field, m).value
        gens = [_transposition(field, n, i) for i in range(1, n)]
        if m > 1 and n >= 2:
            gens.append(_diag(field, [zeta, field.inv(zeta)] + [1] * (n - 2)))
        za = field.power(zeta, a)
        if za != 1:
            gens.append(_diag(field, [za] + [1] * (n - 1)))
        return gens
    if isinstance(spec, Levi):
        return _levi_generators(spec.composition, spec.blocks, field)
    if isinstance(spec, (BlockTriangular, Parabolic, Borel, WeylCartan)):
        bt = spec.as_block_triangular()
        return _levi_generators(bt.composition, bt.blocks, field) + _unipotent_generators(
            bt.composition, field
        )
    raise InvalidSpec(f"unknown group spec {spec!r}")


def _levi_generators(comp, blocks, field) -> list[MatrixElement]:
    gens = []
    for i, b in enumerate(blocks):
        offset = comp.partial_sums[i]
        for g in generators(b, field):
            gens.append(_block_embed(g, comp.n, offset))
    return gens


def expected_order(spec: GroupSpec, field: FieldSpec) -> int:
    """Group order from the closed formulas for each family."""
    q = field.q
    if isinstance(spec, Trivial):
        return 1
    if isinstance(spec, GL):
        return math.prod(q**spec.n - q**i for i in range(spec.n))
    if isinstance(spec, Unipotent):
        parts = spec.composition.parts
        e = sum(parts[i] * parts[j] for i in range(len(parts)) for j in range(i + 1, len(parts)))
        return q**e
    if isinstance(spec, Imprimitive):
        return spec.m**spec.n * math.factorial(spec.n) // spec.a
    if isinstance(spec, Levi):
        return math.prod(expected_order(b, field) for b in spec.blocks)
    bt = spec.as_block_triangular()
    return math.prod(expected_order(b, field) for b in bt.blocks) * expected_order(
        Unipotent(bt.composition), field
    )


def closure(
    gens: Sequence[MatrixElement],
    cap: int = CLOSURE_CAP,
    identity: MatrixElement | None = None,
) -> set[MatrixElement]:
    """BFS over left multiplication by the generators."""
    if identity is None:
        if not gens:
            raise ValueError("closure of an empty list needs an explicit identity")
        identity = MatrixElement.identity(gens[0].field, gens[0].n)
    seen = {identity}
    queue = deque([identity])
    while queue:
        h = queue.popleft()
        for g in gens:
            gh = g @ h
            if gh not in seen:
                seen.add(gh)
                if len(seen) > cap:
                    raise CapExceeded(f"group order exceeds closure cap {cap}")
                queue.append(gh)
    return seen


def group_elements(spec: GroupSpec, field: FieldSpec, cap: int = CLOSURE_CAP) -> set[MatrixElement]:
    return closure(generators(spec, field), cap, MatrixElement.identity(field, spec.n))


def act(g: MatrixElement, f: Polynomial) -> Polynomial:
    """Substitute x_i -> sum_j g[j][i] x_j."""
    ctx = f.ctx
    if g.n != ctx.n:
        raise SizeMismatch(f"{g.n}x{g.n} matrix acting on {ctx.n} variables")
    if g.field != ctx.field:
        raise FieldMismatch("matrix and polynomial are over different fields")
    images = [ctx.linear_form(g.column(i)) for i in range(ctx.n)]
    return f.substitute(images)


def is_invariant(f: Polynomial, spec: GroupSpec | Sequence[MatrixElement]) -> bool:
    gens = generators(spec, f.field) if isinstance(spec, GroupSpec) else spec
    return all(act(g, f) == f for g in gens)


def sigma_group(system) -> list[tuple[int, ...]]:
    """Permutations of the variables fixing every generator (0-based lists).

    Accepts an InvariantSystem or a plain list of polynomials."""
    polys = list(getattr(system, "gens", system))
    n = polys[0].ctx.n
    if n > SIGMA_MAX_N:
        raise CapExceeded(f"n = {n} > {SIGMA_MAX_N}: brute-force permutation search refused")
    return [perm for perm in permutations(range(n)) if all(f.permute_vars(perm) == f for f in polys)]


def variable_context(spec: GroupSpec, field: FieldSpec) -> VarContext:
    return VarContext(spec.n, field)
