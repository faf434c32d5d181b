"""The desk-scale acceptance matrix, runnable from the CLI and from pytest.

Each criterion is a list of independent instances; an instance returns a
JSON-ready dict with an ``ok`` flag.  Timings are kept out of the instance
payloads so the JSON summary is deterministic apart from its ``timings`` map.
"""

from __future__ import annotations

import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product

from .blockbasis import (
    BlockCandidate,
    candidate_gman,
    candidate_parabolic,
    candidate_steinberg,
    candidate_uI,
    candidate_weyl,
    coinvariant_product,
    compose_blocks,
    check_triviality,
    expand_in_block_basis,
    refute_gman,
    rewrite_gman_power,
    rewrite_uI,
    rules_gman,
    verify_block_basis,
)
from .gf import FieldElement, FieldSpec, field_of_order, make_field
from .groups import (
    GL,
    Composition,
    Unipotent,
    WeylCartan,
    act,
    expected_order,
    group_elements,
    sigma_group,
)
from .ideal import GradedIdealBasis
from .invariants import dickson, gI_system, gman_system, kuhn_mitchell_system, system_for, uI_system
from .poly import Monomial, Polynomial, VarContext, divisor_exps, format_monomial


def compositions_of(n: int):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions_of(n - first):
            yield (first,) + rest


# -- instances ------------------------------------------------------------------


def _cert_summary(cert) -> dict:
    return {
        "candidate": str(cert.candidate),
        "verified": cert.verified,
        "factor_count": cert.factor_count,
        "expected_dim": cert.expected_dim,
        "shortcut": cert.shortcut_verdict,
        "criticals_method": cert.criticals.method if cert.criticals else None,
    }


def inst_dickson(q: int, n: int) -> dict:
    F = field_of_order(q)
    system = dickson(VarContext(n, F))
    cand = candidate_parabolic(Composition((n,)), F)
    cert = verify_block_basis(cand, system)
    order = expected_order(GL(n), F)
    out = _cert_summary(cert)
    out.update(instance=f"GL({n}) q={q}", group_order=order)
    out["ok"] = cert.verified and cert.factor_count == order == system.degree_product
    return out


def inst_uI(q: int, parts: tuple[int, ...]) -> dict:
    F = make_field(q)
    comp = Composition(parts)
    system = uI_system(comp, F)
    basis = GradedIdealBasis(system)
    cert = verify_block_basis(candidate_uI(comp, F), system, basis)
    order = expected_order(Unipotent(comp), F)
    closure_order = len(group_elements(Unipotent(comp), F)) if order <= 4096 else None
    ctx = system.context
    lemma = all(
        basis.member(ctx.var(s) ** (q ** comp.tau(s))) for s in range(1, comp.n + 1)
    )
    out = _cert_summary(cert)
    out.update(
        instance=f"U({comp}) q={q}", group_order=order, closure_order=closure_order, power_rule=lemma
    )
    out["ok"] = (
        cert.verified
        and cert.factor_count == order
        and (closure_order is None or closure_order == order)
        and lemma
    )
    return out


def inst_tensor(q: int, parts: tuple[int, ...]) -> dict:
    F = make_field(q)
    comp = Composition(parts)
    system = uI_system(comp, F)
    basis = GradedIdealBasis(system)
    alpha = candidate_uI(comp, F).exps
    ctx = system.context
    factors = divisor_exps(alpha)
    mismatches = 0
    for u, v in product(factors, repeat=2):
        uv = ctx.monomial(u) * ctx.monomial(v)
        if rewrite_uI(uv, comp, F) != expand_in_block_basis(uv, alpha, basis):
            mismatches += 1
    return {
        "instance": f"U({comp}) q={q}",
        "table_entries": len(factors) ** 2,
        "mismatches": mismatches,
        "ok": mismatches == 0,
    }


def _listed_gman_criticals(m: int, n: int) -> list[tuple[int, ...]]:
    """(x_n ... x_r)^{mr}, r = 1..n."""
    return [tuple(m * r if s >= r - 1 else 0 for s in range(n)) for r in range(1, n + 1)]


def inst_gman(m: int, n: int, q: int) -> dict:
    F = make_field(q)
    system = gman_system(m, 1, n, F)
    basis = GradedIdealBasis(system)
    cand = candidate_gman(m, 1, n)
    cert = verify_block_basis(cand, system, basis)
    listed = _listed_gman_criticals(m, n)
    listed_trivial = check_triviality(listed, basis)
    order = m**n * math.factorial(n)
    out = _cert_summary(cert)
    out.update(
        instance=f"G({m},1,{n}) q={q}",
        listed_criticals=[format_monomial(w) for w in listed],
        listed_criticals_trivial=listed_trivial,
        group_order=order,
    )
    out["ok"] = cert.verified and listed_trivial and bool(cert.criticals_trivial) and cert.factor_count == order
    return out


def inst_nonexist(m: int, a: int, n: int, q: int) -> dict:
    F = make_field(q)
    report = refute_gman(m, a, n, F)
    out = report.to_json()
    out["instance"] = f"G({m},{a},{n}) q={q}"
    out["no_candidate"] = not isinstance(candidate_gman(m, a, n), BlockCandidate)
    out["ok"] = report.complete and out["no_candidate"]
    return out


def inst_product(m: int, n: int, q: int) -> dict:
    F = make_field(q)
    system = gman_system(m, 1, n, F)
    basis = GradedIdealBasis(system)
    ctx = system.context
    power_ok = []
    for r in range(1, n + 1):
        power = ctx.var(n + 1 - r) ** (m * r)
        power_ok.append(basis.member(rewrite_gman_power(r, m, n, F) - power))
    rules = rules_gman(m, n, F)
    alpha = rules.alpha
    mismatches = 0
    factors = divisor_exps(alpha)
    for u, v in product(factors, repeat=2):
        U, V = ctx.monomial(u), ctx.monomial(v)
        got, _ = coinvariant_product(U, V, rules)
        if got != expand_in_block_basis(U * V, alpha, basis):
            mismatches += 1
    return {
        "instance": f"G({m},1,{n}) q={q}",
        "power_rules": power_ok,
        "pairs": len(factors) ** 2,
        "mismatches": mismatches,
        "ok": all(power_ok) and mismatches == 0,
    }


def inst_compose_gl(parts: tuple[int, ...], q: int) -> dict:
    F = make_field(q)
    comp = Composition(parts)
    blocks = [candidate_steinberg(k, q) for k in parts]
    composed = compose_blocks(comp, F, blocks)
    system = kuhn_mitchell_system(comp, F)
    cert = verify_block_basis(composed, system)
    matches = composed.exps == candidate_parabolic(comp, F).exps
    out = _cert_summary(cert)
    out.update(instance=f"P({comp}) q={q}", equals_parabolic=matches)
    out["ok"] = cert.verified and matches
    return out


def inst_compose_mixed() -> dict:
    F = make_field(3)
    comp = Composition((1, 1))
    block_systems = [system_for(GL(1), F), gman_system(2, 1, 1, F)]
    system = gI_system(comp, F, block_systems)
    composed = compose_blocks(comp, F, [candidate_steinberg(1, 3), candidate_gman(2, 1, 1)])
    cert = verify_block_basis(composed, system)
    out = _cert_summary(cert)
    out.update(instance="GI(1,1;GL,G(2,1,1)) q=3")
    out["ok"] = cert.verified
    return out


def inst_weyl(n1: int, n2: int, m: int, p: int) -> dict:
    F = make_field(p)
    spec = WeylCartan(n1, n2, m)
    system = system_for(spec, F)
    cand = candidate_weyl(n1, n2, m, p)
    composed = compose_blocks(
        Composition((n1, n2)), F, [candidate_steinberg(n1, p), candidate_gman(m, 1, n2)]
    )
    cert = verify_block_basis(cand, system)
    out = _cert_summary(cert)
    out.update(instance=f"W({n1},{n2};m={m}) p={p}", equals_composed=cand.exps == composed.exps)
    out["ok"] = cert.verified and out["equals_composed"]
    return out


def _chsw_cases():
    F2, F3, F5 = make_field(2), make_field(3), make_field(5)
    good = [
        ("GL(2) q=2", dickson(VarContext(2, F2)), candidate_steinberg(2, 2)),
        ("GL(2) q=3", dickson(VarContext(2, F3)), candidate_steinberg(2, 3)),
        ("GL(3) q=2", dickson(VarContext(3, F2)), candidate_steinberg(3, 2)),
        ("U(1,1) q=2", uI_system(Composition((1, 1)), F2), candidate_uI(Composition((1, 1)), F2)),
        ("U(1,1,1) q=3", uI_system(Composition((1, 1, 1)), F3), candidate_uI(Composition((1, 1, 1)), F3)),
        ("U(1,2,1) q=2", uI_system(Composition((1, 2, 1)), F2), candidate_uI(Composition((1, 2, 1)), F2)),
        ("G(1,1,3) q=2", gman_system(1, 1, 3, F2), candidate_gman(1, 1, 3)),
        ("G(2,1,2) q=3", gman_system(2, 1, 2, F3), candidate_gman(2, 1, 2)),
        ("G(4,1,2) q=5", gman_system(4, 1, 2, F5), candidate_gman(4, 1, 2)),
        ("W(1,1;m=2) p=3", system_for(WeylCartan(1, 1, 2), F3), candidate_weyl(1, 1, 2, 3)),
        ("W(2,1;m=1) p=2", system_for(WeylCartan(2, 1, 1), F2), candidate_weyl(2, 1, 1, 2)),
        ("P(2,1) q=2", kuhn_mitchell_system(Composition((2, 1)), F2), candidate_parabolic(Composition((2, 1)), F2)),
    ]
    bad = [
        ("GL(2) q=2 x1^2*x2^2", dickson(VarContext(2, F2)), BlockCandidate(Monomial((2, 2)), "user")),
        ("U(1,1) q=2 x1", uI_system(Composition((1, 1)), F2), BlockCandidate(Monomial((1, 0)), "user")),
        ("G(1,1,3) q=2 x1*x2^2*x3^2", gman_system(1, 1, 3, F2), BlockCandidate(Monomial((1, 2, 2)), "user")),
    ]
    for m, a, n, q in [(2, 2, 2, 3), (4, 2, 2, 5), (2, 2, 3, 3)]:
        system = gman_system(m, a, n, make_field(q))
        t = [m * i - 1 for i in range(1, n)] + [m * n // a - 1]
        bad.append((f"G({m},{a},{n}) q={q} alpha_id", system, BlockCandidate(Monomial(tuple(t)), "gman")))
    return good, bad


def inst_chsw() -> dict:
    good, bad = _chsw_cases()
    rows = []
    ok = True
    for label, system, cand in good:
        basis = GradedIdealBasis(system)
        cert = verify_block_basis(cand, system, basis)
        sigma = sigma_group(system)
        structured = len(sigma) in (1, math.factorial(system.n))
        agree = cert.shortcut_verdict == cert.verified
        closed = True
        if structured and cert.verified and system.n <= 4:
            for g in sigma:
                img = [0] * system.n
                for i, e in enumerate(cand.exps):
                    img[g[i]] = e
                c2 = BlockCandidate(Monomial(tuple(img)), "permuted")
                closed = closed and verify_block_basis(c2, system, basis, with_criticals=False).verified
        rows.append({"instance": label, "verified": cert.verified, "shortcut": cert.shortcut_verdict,
                     "sigma_order": len(sigma), "agree": agree, "permutation_closed": closed})
        ok = ok and cert.verified and agree and closed
    for label, system, cand in bad:
        cert = verify_block_basis(cand, system)
        some_fail = not (cert.degree_check and cert.multiset_check and cert.count_check and cert.rank_check) or (
            cert.criticals_trivial is False
        )
        agree = cert.shortcut_verdict == cert.verified
        rows.append({"instance": label, "verified": cert.verified, "shortcut": cert.shortcut_verdict,
                     "some_check_fails": some_fail, "agree": agree})
        ok = ok and not cert.verified and some_fail and agree
    return {"instance": "CHSW shortcut vs oracle", "cases": rows, "ok": ok}


def _field_axioms(F: FieldSpec) -> bool:
    q = F.q
    els = range(q)
    add, mul, neg = F.add, F.mul, F.neg
    for a in els:
        if add(a, 0) != a or mul(a, 1) != a or add(a, neg(a)) != 0:
            return False
        if a and mul(a, F.inv(a)) != 1:
            return False
        for b in els:
            if add(a, b) != add(b, a) or mul(a, b) != mul(b, a):
                return False
            if F.power(add(a, b), F.p) != add(F.power(a, F.p), F.power(b, F.p)):
                return False
            for c in els:
                if add(add(a, b), c) != add(a, add(b, c)):
                    return False
                if mul(mul(a, b), c) != mul(a, mul(b, c)):
                    return False
                if mul(a, add(b, c)) != add(mul(a, b), mul(a, c)):
                    return False
    return True


def random_polynomial(ctx: VarContext, rng: random.Random, max_degree: int, terms: int = 6) -> Polynomial:
    out = {}
    for _ in range(terms):
        d = rng.randint(0, max_degree)
        cuts = sorted(rng.randint(0, d) for _ in range(ctx.n - 1))
        e = tuple(b - a for a, b in zip([0] + cuts, cuts + [d]))
        c = rng.randrange(ctx.field.q)
        if c:
            out[e] = c
    return Polynomial(ctx, out)


def inst_infra(seed: int = 0, samples: int = 1000) -> dict:
    fields_ok = {q: _field_axioms(field_of_order(q)) for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)}
    rng = random.Random(seed)
    F2, F3 = make_field(2), make_field(3)

    # action composition: all pairs in U_(1,1)(F_2), sampled pairs in GL_2(3)
    def composition_law(elements, polys, pairs):
        for g, h in pairs:
            for f in polys:
                if act(g, act(h, f)) != act(g @ h, f):
                    return False
        return True

    ctx2 = VarContext(2, F2)
    u_elems = sorted(group_elements(Unipotent(Composition((1, 1))), F2), key=str)
    polys2 = [random_polynomial(ctx2, rng, 4) for _ in range(10)]
    u_ok = composition_law(u_elems, polys2, list(product(u_elems, repeat=2)))
    g_elems = sorted(group_elements(GL(2), F3), key=str)
    ctx3 = VarContext(2, F3)
    polys3 = [random_polynomial(ctx3, rng, 4) for _ in range(10)]
    pairs = [(rng.choice(g_elems), rng.choice(g_elems)) for _ in range(50)]
    gl_ok = composition_law(g_elems, polys3, pairs)

    systems = {
        "G(1,1,2) q=3": gman_system(1, 1, 2, F3),
        "GL(2) q=2": dickson(ctx2),
        "U(1,1) q=3": uI_system(Composition((1, 1)), F3),
        "G(2,1,2) q=3": gman_system(2, 1, 2, F3),
    }
    nf_ok = {}
    for label, system in systems.items():
        basis = GradedIdealBasis(system)
        F = system.field
        top = basis.top_degree + 2
        good = True
        for _ in range(samples):
            f = random_polynomial(system.context, rng, top)
            g = random_polynomial(system.context, rng, top)
            a, b = FieldElement(F, rng.randrange(F.q)), FieldElement(F, rng.randrange(F.q))
            nf_f, nf_g = basis.normal_form(f), basis.normal_form(g)
            if basis.normal_form(nf_f) != nf_f:
                good = False
                break
            lhs = basis.normal_form(f * a + g * b)
            if lhs != nf_f * a + nf_g * b:
                good = False
                break
            if not basis.member(f - nf_f):
                good = False
                break
        nf_ok[label] = good
    return {
        "instance": "infrastructure properties",
        "field_axioms": {str(q): v for q, v in fields_ok.items()},
        "action_composition": {"U(1,1) q=2": u_ok, "GL(2) q=3 sampled": gl_ok},
        "normal_form": nf_ok,
        "ok": all(fields_ok.values()) and u_ok and gl_ok and all(nf_ok.values()),
    }


# -- criteria table ----------------------------------------------------------------


@dataclass(frozen=True)
class Criterion:
    number: int
    name: str
    title: str
    limit_s: float
    tasks: tuple


def _uI_tasks():
    tasks = []
    for q, nmax in ((2, 4), (3, 3)):
        for n in range(1, nmax + 1):
            for parts in compositions_of(n):
                tasks.append((inst_uI, (q, parts)))
    return tuple(tasks)


CRITERIA = (
    Criterion(1, "dickson", "Steinberg monomial is a block basis for GL_n(q)", 60,
              tuple((inst_dickson, (q, n)) for q, n in ((2, 2), (3, 2), (2, 3)))),
    Criterion(2, "uI", "f_I is a block basis for U_I; x_i^{q^tau(i)} in I", 120, _uI_tasks()),
    Criterion(3, "tensor", "U_I multiplication table: truncation rule = normal forms", 10,
              ((inst_tensor, (2, (1, 1))), (inst_tensor, (2, (1, 1, 1))))),
    Criterion(4, "gman", "G(m,1,n) block basis and trivial critical monomials", 60,
              tuple((inst_gman, args) for args in ((1, 2, 3), (1, 3, 2), (1, 3, 5), (2, 2, 3), (2, 2, 5), (4, 2, 5)))),
    Criterion(5, "nonexist", "G(m,a,n), a != 1: every candidate lies in I", 30,
              tuple((inst_nonexist, args) for args in ((2, 2, 2, 3), (4, 2, 2, 5), (3, 3, 2, 7), (2, 2, 3, 3)))),
    Criterion(6, "product", "G(m,1,n) power rewrite and products agree with the oracle", 60,
              tuple((inst_product, args) for args in ((1, 2, 3), (1, 3, 2), (2, 2, 3)))),
    Criterion(7, "compose", "Block composition reproduces the parabolic monomial and verifies", 60,
              tuple((inst_compose_gl, (parts, q)) for parts in ((1, 1), (2, 1)) for q in (2, 3))
              + ((inst_compose_mixed, ()),)),
    Criterion(8, "weyl", "Weyl-type preset verifies and equals the composed candidate", 120,
              tuple((inst_weyl, args) for args in ((1, 1, 1, 2), (1, 1, 2, 3), (2, 1, 1, 2)))),
    Criterion(9, "chsw", "Critical-monomial shortcut agrees with the rank oracle", 60, ((inst_chsw, ()),)),
    Criterion(10, "infra", "Field axioms, action law, normal-form idempotence and linearity", 60,
              ((inst_infra, ()),)),
)


def _run_task(task):
    func, args = task
    t0 = time.perf_counter()
    try:
        result = func(*args)
    except Exception as exc:  # reported as an instance failure
        result = {"instance": f"{func.__name__}{args}", "ok": False, "error": f"{type(exc).__name__}: {exc}"}
    return result, time.perf_counter() - t0


def select(only: str | None = None) -> list[Criterion]:
    if not only:
        return list(CRITERIA)
    wanted = {w.strip() for w in only.split(",")}
    chosen = [c for c in CRITERIA if c.name in wanted or str(c.number) in wanted]
    if not chosen:
        from .errors import UserInputError

        raise UserInputError(f"no criterion matches {only!r}; names: {[c.name for c in CRITERIA]}")
    return chosen


def run_criterion(crit: Criterion, workers: int = 1, seed: int = 0) -> dict:
    tasks = [(f, (seed,)) if f is inst_infra else (f, a) for f, a in crit.tasks]
    t0 = time.perf_counter()
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        results = [_run_task(t) for t in tasks]
    elapsed = time.perf_counter() - t0
    instances = [r for r, _ in results]
    all_ok = all(r.get("ok") for r in instances)
    return {
        "number": crit.number,
        "name": crit.name,
        "title": crit.title,
        "limit_s": crit.limit_s,
        "within_limit": elapsed < crit.limit_s,
        "passed": all_ok and elapsed < crit.limit_s,
        "instances": instances,
        "_seconds": elapsed,
        "_instance_seconds": [round(s, 4) for _, s in results],
    }


def run_suite(only: str | None = None, workers: int = 1, seed: int = 0) -> dict:
    criteria = []
    timings = {}
    for crit in select(only):
        res = run_criterion(crit, workers, seed)
        timings[crit.name] = {
            "seconds": round(res.pop("_seconds"), 4),
            "instances": res.pop("_instance_seconds"),
        }
        criteria.append(res)
    return {
        "passed": all(c["passed"] for c in criteria),
        "criteria": criteria,
        "timings": timings,
    }
