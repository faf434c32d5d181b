"""Block bases of coinvariant algebras.

A monomial alpha generates a block basis when its monomial factors form a
basis of P/I.  This module produces the candidate monomials for each group
family, certifies or refutes them against the exact per-degree oracle in
:mod:`coinvariants.ideal`, computes critical monomials (the cheaper
sufficient test), and rewrites products of basis factors back into the basis.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field as dc_field
from itertools import permutations, product
from typing import Sequence

import numpy as np

from .errors import BlockMismatch, CapExceeded, InternalAssertion, InvalidSpec, NonTermination, OutOfRange
from .gf import FieldSpec, make_field
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
    sigma_group,
)
from .ideal import GradedIdealBasis
from .invariants import InvariantSystem, gman_system
from .linalg import left_kernel, rref, solve_left
from .poly import DIVISOR_CAP, Exps, Monomial, Polynomial, VarContext, divisor_exps, format_monomial

CRITICAL_SEARCH_CAP = 10**6
REWRITE_STEP_CAP = 10**5


@dataclass(frozen=True)
class BlockCandidate:
    alpha: Monomial
    source: str

    @property
    def exps(self) -> Exps:
        return self.alpha.exps

    @property
    def n(self) -> int:
        return len(self.exps)

    def __str__(self) -> str:
        return format_monomial(self.exps)


@dataclass(frozen=True)
class NoBlockBasis:
    """Marker for a group whose coinvariants have no block basis."""

    m: int
    a: int
    n: int
    reason: str = "a != 1: every exponent-permutation candidate lies in the ideal"


def _candidate(exps, source: str) -> BlockCandidate:
    return BlockCandidate(Monomial(tuple(exps)), source)


def candidate_gman(m: int, a: int, n: int) -> BlockCandidate | NoBlockBasis:
    """x_1^{mn-1} x_2^{m(n-1)-1} ... x_n^{m-1} when a = 1."""
    if m < 1 or a < 1 or n < 1 or m % a:
        raise InvalidSpec(f"G({m},{a},{n}) needs positive parameters with a | m")
    if a != 1:
        return NoBlockBasis(m, a, n)
    return _candidate([m * (n - i + 1) - 1 for i in range(1, n + 1)], "gman")


def candidate_steinberg(n: int, q: int) -> BlockCandidate:
    """prod_j x_j^{q^n - q^{n-j} - 1}, the GL_n(q) block generator."""
    return _candidate([q**n - q ** (n - j) - 1 for j in range(1, n + 1)], "gl")


def candidate_uI(composition: Composition, field: FieldSpec) -> BlockCandidate:
    """f_I = prod_i x_i^{q^{tau(i)} - 1}."""
    q = field.q
    return _candidate([q ** composition.tau(s) - 1 for s in range(1, composition.n + 1)], "uI")


def candidate_parabolic(composition: Composition, field: FieldSpec) -> BlockCandidate:
    q = field.q
    m = composition.partial_sums
    exps = []
    for i, size in enumerate(composition.parts):
        for j in range(1, size + 1):
            exps.append(q ** m[i + 1] - q ** (m[i + 1] - j) - 1)
    return _candidate(exps, "parabolic")


def compose_blocks(
    composition: Composition,
    field: FieldSpec,
    block_candidates: Sequence[BlockCandidate | Sequence[int]],
) -> BlockCandidate:
    """Exponent (alpha_{ij} + 1) q^{m_{i-1}} - 1 at x_{m_{i-1}+j}."""
    if len(block_candidates) != composition.l:
        raise BlockMismatch(f"{composition.l} block candidates expected, got {len(block_candidates)}")
    q = field.q
    m = composition.partial_sums
    exps = []
    for i, (size, cand) in enumerate(zip(composition.parts, block_candidates)):
        alpha = cand.exps if isinstance(cand, BlockCandidate) else tuple(cand)
        if len(alpha) != size:
            raise BlockMismatch(f"block {i + 1} candidate has {len(alpha)} exponents, block has {size}")
        exps.extend((a + 1) * q ** m[i] - 1 for a in alpha)
    return _candidate(exps, "composed")


def candidate_weyl(n1: int, n2: int, m: int, p: int) -> BlockCandidate:
    """GL_{n1}(p) in the first block, G(m,1,n2) in the second.

    Exponents: p^{n1} - p^{n1-j} - 1 for j <= n1, then m(n2-k+1) p^{n1} - 1 at
    x_{n1+k}, which is what composing the two block generators gives."""
    if m not in (1, 2) or (p - 1) % m:
        raise InvalidSpec(f"Weyl preset needs m in {{1,2}} with m | p-1 (m={m}, p={p})")
    first = [p**n1 - p ** (n1 - j) - 1 for j in range(1, n1 + 1)]
    second = [m * (n2 - k + 1) * p**n1 - 1 for k in range(1, n2 + 1)]
    cand = _candidate(first + second, "weyl")
    composed = compose_blocks(
        Composition((n1, n2)),
        make_field(p),
        [candidate_steinberg(n1, p), candidate_gman(m, 1, n2)],
    )
    if composed.exps != cand.exps:
        raise InternalAssertion(f"Weyl exponents {cand.exps} != composed {composed.exps}")
    return cand


def auto_candidate(spec: GroupSpec, field: FieldSpec) -> BlockCandidate | NoBlockBasis:
    """The block generator predicted for ``spec``, or NoBlockBasis."""
    if isinstance(spec, Trivial):
        return _candidate([0] * spec.n, "trivial")
    if isinstance(spec, GL):
        return _candidate(candidate_steinberg(spec.n, field.q).exps, "gl")
    if isinstance(spec, (Parabolic, Borel)):
        return candidate_parabolic(spec.composition, field)
    if isinstance(spec, Unipotent):
        return candidate_uI(spec.composition, field)
    if isinstance(spec, Imprimitive):
        return candidate_gman(spec.m, spec.a, spec.n)
    if isinstance(spec, WeylCartan):
        return candidate_weyl(spec.n1, spec.n2, spec.m, field.p)
    if isinstance(spec, (BlockTriangular, Levi)):
        blocks = [auto_candidate(b, field) for b in spec.blocks]
        for b in blocks:
            if isinstance(b, NoBlockBasis):
                return b
        if isinstance(spec, Levi):
            return _candidate([e for b in blocks for e in b.exps], "levi")
        return compose_blocks(spec.composition, field, blocks)
    raise InvalidSpec(f"no candidate rule for {spec!r}")


# -- verification -------------------------------------------------------------


@dataclass(frozen=True)
class CriticalSet:
    monomials: list[Exps]
    sigma: list[tuple[int, ...]]
    method: str

    def orbit(self) -> list[Exps]:
        """All images of the listed monomials under the permutations in sigma."""
        seen = set()
        for w in self.monomials:
            for g in self.sigma:
                img = [0] * len(w)
                for i, e in enumerate(w):
                    img[g[i]] = e
                seen.add(tuple(img))
        return sorted(seen)


@dataclass
class BlockCertificate:
    candidate: BlockCandidate
    verified: bool
    factor_count: int
    expected_dim: int
    degree_check: bool
    multiset_check: bool
    count_check: bool
    rank_check: bool
    per_degree: list[dict] = dc_field(default_factory=list)
    failure_witness: dict | None = None
    criticals: CriticalSet | None = None
    criticals_trivial: bool | None = None
    timings: dict = dc_field(default_factory=dict)

    @property
    def shortcut_verdict(self) -> bool | None:
        """Multiset condition plus trivial critical monomials (sufficient test)."""
        if self.criticals_trivial is None:
            return None
        return self.multiset_check and self.criticals_trivial

    def to_json(self) -> dict:
        out = {
            "candidate": str(self.candidate),
            "source": self.candidate.source,
            "exponents": list(self.candidate.exps),
            "verified": self.verified,
            "factor_count": self.factor_count,
            "expected_dim": self.expected_dim,
            "checks": {
                "degree": self.degree_check,
                "multiset": self.multiset_check,
                "count": self.count_check,
                "rank": self.rank_check,
                "criticals_trivial": self.criticals_trivial,
                "shortcut": self.shortcut_verdict,
            },
            "per_degree": self.per_degree,
            "criticals": [format_monomial(w) for w in self.criticals.monomials] if self.criticals else [],
            "timings": self.timings,
        }
        if self.failure_witness is not None:
            out["witness"] = self.failure_witness
        return out


def _factor_rank_check(exps: Exps, basis: GradedIdealBasis, cap: int):
    ctx = basis.ctx
    by_degree: dict[int, list[Exps]] = {}
    for e in divisor_exps(exps, cap):
        by_degree.setdefault(sum(e), []).append(e)
    top = basis.top_degree
    per_degree = []
    witness = None
    ok = True
    for d in range(max(top, max(by_degree)) + 1):
        factors = by_degree.get(d, [])
        h = basis.hilbert[d]
        if not factors and not h:
            continue
        B = basis.free_coordinates(factors, d) if factors else np.zeros((0, h), dtype=np.int64)
        r = len(rref(B, basis.field)[1]) if factors and h else 0
        per_degree.append({"degree": d, "factors": len(factors), "rank": r, "quotient_dim": h})
        if r == len(factors) == h:
            continue
        ok = False
        if witness is not None:
            continue
        zero = [k for k in range(len(factors)) if not B[k].any()]
        if zero:
            witness = {"kind": "factor_in_ideal", "factor": format_monomial(factors[zero[0]])}
        elif r < len(factors):
            y = left_kernel(B, basis.field)[0]
            witness = {
                "kind": "linear_dependency",
                "degree": d,
                "combination": Polynomial(
                    ctx, {factors[k]: int(y[k]) for k in np.flatnonzero(y)}
                ).format(),
            }
        else:
            witness = {"kind": "not_spanning", "degree": d, "rank": r, "quotient_dim": h}
    return ok, per_degree, witness


def verify_block_basis(
    candidate: BlockCandidate,
    system: InvariantSystem,
    basis: GradedIdealBasis | None = None,
    factor_cap: int = DIVISOR_CAP,
    with_criticals: bool = True,
) -> BlockCertificate:
    """Certify ``candidate`` exactly: necessary conditions, factor count, then
    full-rank normal forms of all factors degree by degree."""
    t0 = time.perf_counter()
    if candidate.n != system.n:
        raise BlockMismatch(f"candidate has {candidate.n} exponents, system has {system.n} variables")
    basis = basis or GradedIdealBasis(system)
    t = candidate.exps
    d = system.degrees
    degree_check = sum(t) == sum(d) - len(d)
    multiset_check = sorted(t) == sorted(x - 1 for x in d)
    factor_count = math.prod(e + 1 for e in t)
    expected = math.prod(d)
    count_check = factor_count == expected
    rank_check, per_degree, witness = _factor_rank_check(t, basis, factor_cap)
    t1 = time.perf_counter()
    cert = BlockCertificate(
        candidate=candidate,
        verified=degree_check and multiset_check and count_check and rank_check,
        factor_count=factor_count,
        expected_dim=expected,
        degree_check=degree_check,
        multiset_check=multiset_check,
        count_check=count_check,
        rank_check=rank_check,
        per_degree=per_degree,
        failure_witness=witness,
    )
    if witness is None and not cert.verified:
        cert.failure_witness = {
            "kind": "necessary_condition",
            "degree_check": degree_check,
            "multiset_check": multiset_check,
            "count_check": count_check,
        }
    cert.timings["oracle_s"] = round(t1 - t0, 6)
    if with_criticals and system.n <= 8:
        try:
            crit = critical_monomials(candidate, system)
        except CapExceeded:
            crit = None
        if crit is not None:
            cert.criticals = crit
            cert.criticals_trivial = check_triviality(crit, basis)
        cert.timings["criticals_s"] = round(time.perf_counter() - t1, 6)
    return cert


# -- critical monomials ----------------------------------------------------------


def _exceeds(w: Sequence[int], t: Sequence[int], sigma) -> bool:
    """Condition (1): for every g there is an i with w_i > t_{g(i)}."""
    return all(any(w[i] > t[g[i]] for i in range(len(w))) for g in sigma)


def _minimal(ws: list[Exps]) -> list[Exps]:
    out = []
    for w in ws:
        if not any(v != w and all(a <= b for a, b in zip(v, w)) for v in ws):
            if w not in out:
                out.append(w)
    return out


def brute_critical_monomials(t: Sequence[int], sigma, cap: int = CRITICAL_SEARCH_CAP) -> list[Exps]:
    """Minimal monomials satisfying condition (1), searched with exponents up
    to max(t) + 1: capping any exponent of a solution at max(t) + 1 keeps every
    comparison w_i > t_j true, so all minimal solutions lie in that box."""
    n = len(t)
    top = max(t) + 1
    if (top + 1) ** n > cap:
        raise CapExceeded(f"critical search box {(top + 1)}^{n} exceeds cap {cap}")
    out = []
    for w in product(range(top + 1), repeat=n):
        if not _exceeds(w, t, sigma):
            continue
        minimal = True
        for i in range(n):
            if w[i]:
                lower = list(w)
                lower[i] -= 1
                if _exceeds(lower, t, sigma):
                    minimal = False
                    break
        if minimal:
            out.append(w)
    return out


def critical_monomials(
    candidate: BlockCandidate, system: InvariantSystem, sigma=None
) -> CriticalSet:
    """Critical monomials of alpha with respect to Sigma(A).

    Sigma = S_n: (x_{p1} ... x_{pi})^{t_{pi} + 1} with p sorting t decreasingly
    (one representative per Sigma-orbit).  Sigma = 1: x_i^{t_i + 1}.  Otherwise
    a bounded brute-force search."""
    t = candidate.exps
    n = len(t)
    if sigma is None:
        sigma = sigma_group(system)
    if len(sigma) == math.factorial(n):
        order = sorted(range(n), key=lambda k: (-t[k], k))
        reps = []
        for i in range(1, n + 1):
            w = [0] * n
            for k in order[:i]:
                w[k] = t[order[i - 1]] + 1
            reps.append(tuple(w))
        return CriticalSet(_minimal(reps), sigma, "symmetric")
    if len(sigma) == 1:
        reps = []
        for i in range(n):
            w = [0] * n
            w[i] = t[i] + 1
            reps.append(tuple(w))
        return CriticalSet(reps, sigma, "trivial_group")
    return CriticalSet(brute_critical_monomials(t, sigma), sigma, "brute")


def check_triviality(criticals: CriticalSet | Sequence[Exps], basis: GradedIdealBasis) -> bool:
    """True iff every critical monomial lies in the ideal.

    The ideal is stable under Sigma(A), so orbit representatives suffice."""
    ws = criticals.monomials if isinstance(criticals, CriticalSet) else criticals
    ctx = basis.ctx
    return all(basis.member(ctx.monomial(w)) for w in ws)


def shortcut_certify(candidate: BlockCandidate, system: InvariantSystem, basis: GradedIdealBasis) -> bool:
    """Block-basis test by the multiset condition and trivial critical monomials."""
    multiset = sorted(candidate.exps) == sorted(d - 1 for d in system.degrees)
    return multiset and check_triviality(critical_monomials(candidate, system), basis)


# -- nonexistence for a != 1 ---------------------------------------------------------


@dataclass
class RefutationReport:
    m: int
    a: int
    n: int
    candidates: list[dict]

    @property
    def complete(self) -> bool:
        return all(c["in_ideal"] for c in self.candidates)

    def to_json(self) -> dict:
        return {
            "group": f"G({self.m},{self.a},{self.n})",
            "verified": False,
            "refutation_complete": self.complete,
            "candidates": self.candidates,
        }


def refute_gman(
    m: int, a: int, n: int, field: FieldSpec, basis: GradedIdealBasis | None = None
) -> RefutationReport:
    """Check that x_{s(1)}^{m-1} x_{s(2)}^{2m-1} ... x_{s(n)}^{mn/a-1} lies in the
    ideal for every permutation s."""
    if a == 1:
        raise InvalidSpec("refutation applies only to a != 1")
    if n > 6:
        raise CapExceeded(f"n = {n}: {math.factorial(n)} permutations, refusing n > 6")
    if basis is None:
        basis = GradedIdealBasis(gman_system(m, a, n, field))
    ctx = basis.ctx
    targets = [m * i - 1 for i in range(1, n)] + [m * n // a - 1]
    seen = {}
    for sigma in permutations(range(n)):
        e = [0] * n
        for i, s in enumerate(sigma):
            e[s] = targets[i]
        e = tuple(e)
        if e not in seen:
            seen[e] = {
                "permutation": [s + 1 for s in sigma],
                "alpha": format_monomial(e),
                "in_ideal": basis.member(ctx.monomial(e)),
            }
    return RefutationReport(m, a, n, list(seen.values()))


# -- rewriting products in the coinvariant algebra ------------------------------------


@dataclass
class RewriteTrace:
    input: Polynomial
    steps: list[tuple[str, int, str]] = dc_field(default_factory=list)
    output: Polynomial | None = None


def _revlex(e: Exps) -> Exps:
    return tuple(reversed(e))


class RewriteRules:
    """Monomial rewrite rules for a block basis with exclusive exponent bounds."""

    def __init__(self, ctx: VarContext, bounds: Sequence[int], kind: str, m: int = 1):
        self.ctx = ctx
        self.bounds = tuple(bounds)
        self.kind = kind
        self.m = m

    @property
    def alpha(self) -> Exps:
        return tuple(b - 1 for b in self.bounds)

    def violation(self, e: Exps) -> int | None:
        """0-based index of the last variable over its bound, if any."""
        for k in range(len(e) - 1, -1, -1):
            if e[k] >= self.bounds[k]:
                return k
        return None

    def apply(self, e: Exps, k: int) -> dict[Exps, int]:
        """Replacement terms for x^e given that x_{k+1} is over its bound."""
        if self.kind == "uI":
            return {}
        # x_{k+1}^{m r} == -sum over compositions j of r with k+1 parts, j_{k+1} != r
        m, F = self.m, self.ctx.field
        r = self.bounds[k] // m
        rest = list(e)
        rest[k] -= m * r
        minus_one = F.neg(1)
        out = {}
        for j in compositions(r, k + 1):
            if j[-1] == r:
                continue
            new = list(rest)
            for idx, part in enumerate(j):
                new[idx] += m * part
            out[tuple(new)] = minus_one
        return out


def compositions(total: int, parts: int):
    """Weak compositions of total into the given number of parts."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def rules_uI(composition: Composition, field: FieldSpec) -> RewriteRules:
    ctx = VarContext(composition.n, field)
    return RewriteRules(ctx, [field.q ** composition.tau(s) for s in range(1, composition.n + 1)], "uI")


def rules_gman(m: int, n: int, field: FieldSpec) -> RewriteRules:
    """Bounds m(n-k+1) at x_k, for the basis of x_1^{mn-1} ... x_n^{m-1}."""
    ctx = VarContext(n, field)
    return RewriteRules(ctx, [m * (n - k + 1) for k in range(1, n + 1)], "gman", m)


def rewrite(f: Polynomial, rules: RewriteRules, step_cap: int = REWRITE_STEP_CAP) -> tuple[Polynomial, RewriteTrace]:
    """Apply the rules until every exponent is within bounds."""
    if f.ctx != rules.ctx:
        raise BlockMismatch("polynomial and rules live in different rings")
    F = f.field
    work = dict(f.terms)
    trace = RewriteTrace(input=f)
    steps = 0
    while True:
        bad = [e for e in work if rules.violation(e) is not None]
        if not bad:
            break
        e = max(bad, key=_revlex)
        k = rules.violation(e)
        c = work.pop(e)
        for new, coef in rules.apply(e, k).items():
            if not _revlex(new) < _revlex(e):
                raise NonTermination(f"rule at x{k + 1} does not decrease {e} -> {new}")
            s = F.add(work.get(new, 0), F.mul(c, coef))
            if s:
                work[new] = s
            else:
                work.pop(new, None)
        trace.steps.append((rules.kind, k + 1, format_monomial(e)))
        steps += 1
        if steps > step_cap:
            raise NonTermination(f"rewrite exceeded {step_cap} steps")
    out = Polynomial(f.ctx, work)
    trace.output = out
    return out, trace


def rewrite_uI(f: Polynomial, composition: Composition, field: FieldSpec) -> Polynomial:
    """Drop every term with some x_i^e, e >= q^{tau(i)}."""
    rules = rules_uI(composition, field)
    if f.ctx != rules.ctx:
        raise BlockMismatch("polynomial ring does not match the composition")
    return Polynomial(f.ctx, {e: c for e, c in f.terms.items() if rules.violation(e) is None})


def rewrite_gman_power(r: int, m: int, n: int, field: FieldSpec) -> Polynomial:
    """Basis expansion of x_{n+1-r}^{mr} for G(m,1,n):
    -sum of x_1^{m j_1} ... x_{n+1-r}^{m j_{n+1-r}} over compositions j of r
    with n+1-r parts and j_{n+1-r} != r."""
    if not 1 <= r <= n:
        raise OutOfRange(f"r = {r} outside 1..{n}")
    rules = rules_gman(m, n, field)
    k = n - r
    e = [0] * n
    e[k] = m * r
    terms = rules.apply(tuple(e), k)
    return Polynomial(rules.ctx, terms)


def coinvariant_product(
    u: Polynomial, v: Polynomial, rules: RewriteRules, step_cap: int = REWRITE_STEP_CAP
) -> tuple[Polynomial, RewriteTrace]:
    return rewrite(u * v, rules, step_cap)


def expand_in_block_basis(f: Polynomial, alpha: Exps, basis: GradedIdealBasis) -> Polynomial:
    """Coordinates of f + I in the factor basis of alpha, via normal forms.

    Requires alpha to generate a block basis."""
    ctx = basis.ctx
    by_degree: dict[int, list[Exps]] = {}
    for e in divisor_exps(alpha):
        by_degree.setdefault(sum(e), []).append(e)
    out: dict[Exps, int] = {}
    for d, part in f.components().items():
        if basis.is_full(d):
            continue
        factors = by_degree.get(d, [])
        span = basis.degree_span(d)
        nf = basis.reduce_homogeneous(part, d)
        target = np.array([[nf.terms.get(span.monomials[c], 0) for c in span.free]], dtype=np.int64)
        if not target.any():
            continue
        B = basis.free_coordinates(factors, d)
        coords = solve_left(B, target, basis.field)[0]
        for k in np.flatnonzero(coords):
            out[factors[k]] = int(coords[k])
    return Polynomial(ctx, out)


# -- oracles for the G(m,1,n) identities ------------------------------------------------


def s_poly(k: int, i: int, m: int, ctx: VarContext) -> Polynomial:
    """s_{k,i}: sum over weak compositions j of k with i parts of prod x_l^{m j_l}."""
    if k < 0:
        return ctx.zero
    if i == 0:
        return ctx.one if k == 0 else ctx.zero
    terms = {}
    for j in compositions(k, i):
        e = [0] * ctx.n
        for l, part in enumerate(j):
            e[l] = m * part
        terms[tuple(e)] = 1
    return Polynomial(ctx, terms)


@dataclass
class SkReport:
    polynomial: Polynomial
    recursion_holds: bool
    in_ideal: bool
    claim_applies: bool

    @property
    def claim_holds(self) -> bool:
        return self.in_ideal or not self.claim_applies


def sk_oracle(
    k: int, i: int, m: int, n: int, field: FieldSpec, basis: GradedIdealBasis | None = None
) -> SkReport:
    """Build s_{k,i}, check s_{k,i} = x_i^m s_{k-1,i} + s_{k,i-1}, and test
    membership in the G(m,1,n) ideal, where k + i >= n + 1 forces it."""
    if basis is None:
        basis = GradedIdealBasis(gman_system(m, 1, n, field))
    ctx = basis.ctx
    s = s_poly(k, i, m, ctx)
    if i >= 1 and k >= 1:
        rec = ctx.var(i) ** m * s_poly(k - 1, i, m, ctx) + s_poly(k, i - 1, m, ctx)
        holds = rec == s
    else:
        holds = True
    return SkReport(s, holds, basis.member(s), k + i >= n + 1)


def e_poly(k: int, i: int, m: int, ctx: VarContext) -> Polynomial:
    """e_{k,i}: elementary symmetric of degree k in x_1^m..x_i^m (e_{0,i} = 1)."""
    if k == 0:
        return ctx.one
    if k > i:
        return ctx.zero
    from itertools import combinations

    terms = {}
    for subset in combinations(range(i), k):
        e = [0] * ctx.n
        for s in subset:
            e[s] = m
        terms[tuple(e)] = 1
    return Polynomial(ctx, terms)


def ek_recursion_check(
    m: int, n: int, field: FieldSpec, basis: GradedIdealBasis | None = None
) -> dict:
    """Symbolic checks of e_{k,i} = e_{k,i-1} + x_i^m e_{k-1,i-1} and e_{k,n} = e_k,
    then membership of (x_n ... x_{n+1-i})^{mr} e_{n+1-i-r, n-i} for all valid
    (i, r), including the r = n+1-i cases (x_n ... x_{n+1-i})^{m(n+1-i)}."""
    system = gman_system(m, 1, n, field)
    if basis is None:
        basis = GradedIdealBasis(system)
    ctx = basis.ctx
    recursion = all(
        e_poly(k, i, m, ctx) == e_poly(k, i - 1, m, ctx) + ctx.var(i) ** m * e_poly(k - 1, i - 1, m, ctx)
        for i in range(1, n + 1)
        for k in range(1, i + 1)
    )
    top = all(e_poly(k, n, m, ctx) == system.gens[k - 1] for k in range(1, n + 1))
    lemma = []
    for i in range(1, n + 1):
        tail = [0] * n
        for s in range(n - i, n):
            tail[s] = 1
        for r in range(1, n + 2 - i):
            w = ctx.monomial([m * r * x for x in tail])
            f = w * e_poly(n + 1 - i - r, n - i, m, ctx)
            lemma.append({"i": i, "r": r, "in_ideal": basis.member(f)})
    corollary = [
        basis.member(ctx.monomial([m * r if s >= r - 1 else 0 for s in range(n)]))
        for r in range(1, n + 1)
    ]
    return {
        "recursion": recursion,
        "top_level": top,
        "lemma": lemma,
        "lemma_ok": all(x["in_ideal"] for x in lemma),
        "corollary_ok": all(corollary),
    }
