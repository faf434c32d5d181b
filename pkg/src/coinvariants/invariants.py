"""Generating invariants for the block group families.

Everything is built from products of linear forms over whole F_q-subspaces:
the orbit products V_k, the Dickson coefficients Q_{n,k} of
F_n(X) = prod (X + l) over all linear forms l in x_1..x_n, and the
F_q-linear polynomials v_{i,j} = F_{m_{i-1}}(x_{m_{i-1}+j}) that carry the
block structure.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field as dc_field
from itertools import combinations, product
from typing import Sequence

from .errors import BlockMismatch, CapExceeded, InternalAssertion, InvalidSpec
from .gf import FieldSpec
from .groups import (
    GL,
    Borel,
    BlockTriangular,
    Composition,
    GroupSpec,
    Imprimitive,
    Levi,
    Parabolic,
    Trivial,
    Unipotent,
    WeylCartan,
    generators,
    is_invariant,
)
from .poly import Polynomial, VarContext

PRODUCT_CAP = 4096


@dataclass
class InvariantSystem:
    """An ordered list of n homogeneous invariants of ``group``."""

    context: VarContext
    gens: list[Polynomial]
    provenance: list[str]
    group: GroupSpec
    degrees: list[int] = dc_field(default_factory=list)
    verify: bool = True

    def __post_init__(self):
        if len(self.gens) != self.context.n:
            raise InvalidSpec(f"{len(self.gens)} generators for {self.context.n} variables")
        degrees = []
        for f, tag in zip(self.gens, self.provenance):
            if f.ctx != self.context:
                raise InvalidSpec(f"generator {tag} lives in another ring")
            if f.is_zero() or not f.is_homogeneous():
                raise InvalidSpec(f"generator {tag} is not a nonzero homogeneous polynomial")
            degrees.append(f.degree())
        if self.degrees and list(self.degrees) != degrees:
            raise InternalAssertion(f"declared degrees {self.degrees} != actual {degrees}")
        self.degrees = degrees
        if self.verify:
            gens = generators(self.group, self.context.field)
            for f, tag in zip(self.gens, self.provenance):
                if not is_invariant(f, gens):
                    raise InternalAssertion(f"{tag} is not invariant under {self.group}")

    @property
    def n(self) -> int:
        return self.context.n

    @property
    def field(self) -> FieldSpec:
        return self.context.field

    @property
    def degree_product(self) -> int:
        return math.prod(self.degrees)

    def to_json(self) -> list[dict]:
        return [
            {"provenance": tag, "degree": d, "polynomial": f.format()}
            for f, tag, d in zip(self.gens, self.provenance, self.degrees)
        ]


def _check_cap(count: int, cap: int) -> None:
    if count > cap:
        raise CapExceeded(f"{count} linear factors exceed product cap {cap}")


def subspace_product(
    ctx: VarContext, base: Polynomial, span: Sequence[int], cap: int = PRODUCT_CAP
) -> Polynomial:
    """prod over lambda in F_q^len(span) of (base + sum lambda_s x_{span[s]})."""
    F = ctx.field
    _check_cap(F.q ** len(span), cap)
    out = ctx.one
    for lams in product(range(F.q), repeat=len(span)):
        coeffs = [0] * ctx.n
        for s, lam in zip(span, lams):
            coeffs[s - 1] = lam
        out = out * (base + ctx.linear_form(coeffs))
    return out


def orbit_products(ctx: VarContext, k: int, cap: int = PRODUCT_CAP) -> tuple[Polynomial, Polynomial]:
    """(V_k, L_k): V_k = prod (lambda_1 x_1 + ... + lambda_{k-1} x_{k-1} + x_k),
    L_k = V_1 ... V_k."""
    if not 1 <= k <= ctx.n:
        raise InvalidSpec(f"k = {k} outside 1..{ctx.n}")
    L = ctx.one
    V = ctx.one
    for i in range(1, k + 1):
        V = subspace_product(ctx, ctx.var(i), range(1, i), cap)
        L = L * V
    return V, L


def _q_exponent(e: int, q: int) -> int | None:
    k = 0
    while q**k < e:
        k += 1
    return k if q**k == e else None


@functools.lru_cache(maxsize=None)
def dickson_polynomials(n: int, field: FieldSpec, cap: int = PRODUCT_CAP) -> tuple[Polynomial, ...]:
    """(Q_{n,0}, ..., Q_{n,n-1}) in F_q[x_1..x_n], read off from the expansion
    of F_n(X) in a ring whose first variable stands for X."""
    q = field.q
    big = VarContext(n + 1, field)
    FX = subspace_product(big, big.var(1), range(2, n + 2), cap)
    ctx = VarContext(n, field)
    coeffs: dict[int, dict] = {}
    for e, c in FX.terms.items():
        k = _q_exponent(e[0], q)
        if k is None:
            raise InternalAssertion(f"F_{n}(X) has a term with X-degree {e[0]}, not a power of q")
        coeffs.setdefault(k, {})[e[1:]] = c
    if coeffs.get(n) != {(0,) * n: 1}:
        raise InternalAssertion("F_n(X) is not monic of degree q^n in X")
    return tuple(Polynomial(ctx, coeffs.get(k, {})) for k in range(n))


def dickson(ctx: VarContext, verify: bool = True) -> InvariantSystem:
    """Dickson system (Q_{n,0}, ..., Q_{n,n-1}) for GL_n(q); deg Q_{n,k} = q^n - q^k."""
    Q = dickson_polynomials(ctx.n, ctx.field)
    return InvariantSystem(
        ctx,
        list(Q),
        [f"Q({ctx.n},{k})" for k in range(ctx.n)],
        GL(ctx.n),
        verify=verify,
    )


def steinberg_v(composition: Composition, field: FieldSpec, cap: int = PRODUCT_CAP) -> list[list[Polynomial]]:
    """v[i][j] = F_{m_i}(x_{m_i + j + 1}) (0-based block i and slot j)."""
    ctx = VarContext(composition.n, field)
    m = composition.partial_sums
    out = []
    for i, size in enumerate(composition.parts):
        row = []
        for j in range(1, size + 1):
            row.append(subspace_product(ctx, ctx.var(m[i] + j), range(1, m[i] + 1), cap))
        out.append(row)
    return out


def uI_system(composition: Composition, field: FieldSpec, verify: bool = True) -> InvariantSystem:
    """x_1..x_{n_1} followed by the v_{i,j} of the later blocks."""
    ctx = VarContext(composition.n, field)
    v = steinberg_v(composition, field)
    gens, tags = [], []
    for i, row in enumerate(v):
        for j, f in enumerate(row, start=1):
            gens.append(f)
            tags.append(f"x{j}" if i == 0 else f"v({i + 1},{j})")
    return InvariantSystem(ctx, gens, tags, Unipotent(composition), verify=verify)


def kuhn_mitchell_system(
    composition: Composition,
    field: FieldSpec,
    group: GroupSpec | None = None,
    verify: bool = True,
) -> InvariantSystem:
    """q_{i,j} = Q_{n_i, n_i - j}(v_{i,1}, ..., v_{i,n_i}), deg q^{m_i} - q^{m_i - j}.

    The Dickson index is mirrored (n_i - j rather than j) so that the degree
    formula holds; j runs 1..n_i inside each block."""
    ctx = VarContext(composition.n, field)
    v = steinberg_v(composition, field)
    gens, tags = [], []
    for i, size in enumerate(composition.parts):
        Q = dickson_polynomials(size, field)
        for j in range(1, size + 1):
            gens.append(Q[size - j].substitute(v[i]))
            tags.append(f"Q({size},{size - j})" if composition.l == 1 else f"q({i + 1},{j})")
    return InvariantSystem(ctx, gens, tags, group or Parabolic(composition), verify=verify)


def gman_system(m: int, a: int, n: int, field: FieldSpec, verify: bool = True) -> InvariantSystem:
    """e_i = elementary symmetric in x_j^m for i < n, e_n = (x_1...x_n)^{m/a}."""
    spec = Imprimitive(m, a, n)
    spec.validate(field)
    ctx = VarContext(n, field)
    gens, tags = [], []
    for i in range(1, n):
        terms = {}
        for subset in combinations(range(n), i):
            e = [0] * n
            for s in subset:
                e[s] = m
            terms[tuple(e)] = 1
        gens.append(Polynomial(ctx, terms))
        tags.append(f"e({i})")
    gens.append(ctx.monomial([m // a] * n))
    tags.append(f"e({n})")
    return InvariantSystem(ctx, gens, tags, spec, verify=verify)


def trivial_system(n: int, field: FieldSpec) -> InvariantSystem:
    ctx = VarContext(n, field)
    return InvariantSystem(ctx, ctx.gens(), [f"x{j}" for j in range(1, n + 1)], Trivial(n))


def _check_block_systems(composition: Composition, block_systems: Sequence[InvariantSystem], field) -> None:
    if len(block_systems) != composition.l:
        raise BlockMismatch(f"{composition.l} block systems expected, got {len(block_systems)}")
    for k, (size, s) in enumerate(zip(composition.parts, block_systems)):
        if s.n != size:
            raise BlockMismatch(f"block {k + 1}: system has {s.n} variables, block has {size}")
        if s.field != field:
            raise BlockMismatch(f"block {k + 1}: system over {s.field}, expected {field}")


def gI_system(
    composition: Composition,
    field: FieldSpec,
    block_systems: Sequence[InvariantSystem],
    group: GroupSpec | None = None,
    verify: bool = True,
) -> InvariantSystem:
    """u_{i,j} = e_{i,j}(v_{i,1}, ..., v_{i,n_i}) from per-block systems e_{i,*}."""
    _check_block_systems(composition, block_systems, field)
    ctx = VarContext(composition.n, field)
    v = steinberg_v(composition, field)
    gens, tags = [], []
    for i, system in enumerate(block_systems):
        for j, e in enumerate(system.gens, start=1):
            gens.append(e.substitute(v[i]))
            tags.append(f"u({i + 1},{j})[{system.provenance[j - 1]}]")
    if group is None:
        group = BlockTriangular(composition, tuple(s.group for s in block_systems))
    return InvariantSystem(ctx, gens, tags, group, verify=verify)


def levi_system(
    composition: Composition,
    field: FieldSpec,
    block_systems: Sequence[InvariantSystem],
    verify: bool = True,
) -> InvariantSystem:
    _check_block_systems(composition, block_systems, field)
    ctx = VarContext(composition.n, field)
    gens, tags = [], []
    for i, system in enumerate(block_systems):
        offset = composition.partial_sums[i]
        for f, tag in zip(system.gens, system.provenance):
            gens.append(f.embed(ctx, offset))
            tags.append(f"block{i + 1}:{tag}")
    group = Levi(composition, tuple(s.group for s in block_systems))
    return InvariantSystem(ctx, gens, tags, group, verify=verify)


def system_for(spec: GroupSpec, field: FieldSpec, verify: bool = True) -> InvariantSystem:
    """The polynomial generating system of the invariant ring of ``spec``."""
    spec.validate(field)
    if isinstance(spec, Trivial):
        return trivial_system(spec.n, field)
    if isinstance(spec, GL):
        # Dickson generators listed in increasing degree, as for I = (n)
        return kuhn_mitchell_system(Composition((spec.n,)), field, group=spec, verify=verify)
    if isinstance(spec, Parabolic):
        return kuhn_mitchell_system(spec.composition, field, verify=verify)
    if isinstance(spec, Borel):
        return kuhn_mitchell_system(spec.composition, field, group=spec, verify=verify)
    if isinstance(spec, Unipotent):
        return uI_system(spec.composition, field, verify=verify)
    if isinstance(spec, Imprimitive):
        return gman_system(spec.m, spec.a, spec.n, field, verify=verify)
    if isinstance(spec, Levi):
        blocks = [system_for(b, field, verify=verify) for b in spec.blocks]
        return levi_system(spec.composition, field, blocks, verify=verify)
    if isinstance(spec, (BlockTriangular, WeylCartan)):
        bt = spec.as_block_triangular()
        blocks = [system_for(b, field, verify=verify) for b in bt.blocks]
        return gI_system(bt.composition, field, blocks, group=spec, verify=verify)
    raise InvalidSpec(f"no invariant system known for {spec!r}")
