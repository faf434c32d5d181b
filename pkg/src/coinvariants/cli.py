"""Command-line interface.  Every command prints one JSON document.

Exit codes: 0 success or verified (or an expected refutation under
``--expect none``), 1 refuted, 2 user error, 3 resource cap, 4 other
algebraic failure.  Timings never appear inside the payload; they are
collected under the top-level ``timings`` key.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass

from . import blockbasis, groups, ideal, poly
from .blockbasis import (
    BlockCandidate,
    NoBlockBasis,
    auto_candidate,
    check_triviality,
    coinvariant_product,
    critical_monomials,
    expand_in_block_basis,
    refute_gman,
    rules_gman,
    rules_uI,
    verify_block_basis,
)
from .errors import AlgebraError, CapExceeded, InvalidSpec, ParseError, UserInputError
from .gf import FieldSpec, field_of_order, make_field
from .groups import Imprimitive, Unipotent, expected_order, generators, group_elements, is_invariant, parse_group
from .ideal import GradedIdealBasis
from .invariants import system_for
from .poly import Monomial, Polynomial, VarContext, format_monomial


@dataclass
class RunConfig:
    field: FieldSpec | None
    group_text: str | None
    seed: int = 0
    workers: int = 1
    out: str | None = None
    cap_closure: int = groups.CLOSURE_CAP
    cap_degree: int = ideal.DEGREE_MONOMIAL_CAP
    cap_factors: int = poly.DIVISOR_CAP
    cap_steps: int = blockbasis.REWRITE_STEP_CAP

    def group(self):
        if not self.group_text:
            raise InvalidSpec("--group is required for this command")
        return parse_group(self.group_text)

    def require_field(self) -> FieldSpec:
        if self.field is None:
            raise InvalidSpec("--q is required for this command")
        return self.field


_Q_RE = re.compile(r"^\s*(?:q\s*=\s*)?(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_field(text: str) -> FieldSpec:
    """'9', '3^2' or 'q=3^2'."""
    m = _Q_RE.match(text)
    if not m:
        raise ParseError(f"cannot read field size {text!r}", 0)
    base = int(m.group(1))
    if m.group(2) is None:
        return field_of_order(base)
    return make_field(base, int(m.group(2)))


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("caps must be positive")
    return value


def _field_json(F: FieldSpec) -> dict:
    return {"p": F.p, "r": F.r, "q": F.q}


def _parse_candidate(text: str, n: int, F: FieldSpec) -> BlockCandidate:
    f = VarContext(n, F).parse(text)
    if len(f.terms) != 1:
        raise ParseError(f"candidate {text!r} is not a single monomial")
    ((exps, _),) = f.terms.items()
    return BlockCandidate(Monomial(exps), "user")


class Session:
    """Lazily built field, group, system and ideal basis for one invocation."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.field = config.require_field()
        self.spec = config.group()
        self.spec.validate(self.field)
        self._system = None
        self._basis = None
        self.timings: dict[str, float] = {}

    def _timed(self, key, fn):
        t0 = time.perf_counter()
        out = fn()
        self.timings[key] = round(time.perf_counter() - t0, 6)
        return out

    @property
    def system(self):
        if self._system is None:
            self._system = self._timed("system_s", lambda: system_for(self.spec, self.field))
        return self._system

    @property
    def basis(self) -> GradedIdealBasis:
        if self._basis is None:
            self._basis = GradedIdealBasis(self.system, self.config.cap_degree)
        return self._basis

    def parse(self, text: str) -> Polynomial:
        return self.system.context.parse(text)

    def header(self) -> dict:
        return {"group": str(self.spec), "field": _field_json(self.field), "timings": self.timings}


# -- commands -------------------------------------------------------------------


def cmd_invariants(config: RunConfig, args) -> tuple[dict, int]:
    s = Session(config)
    system = s.system
    gens = generators(s.spec, s.field)
    verdicts = [is_invariant(f, gens) for f in system.gens]
    payload = s.header()
    payload.update(
        generators=system.to_json(),
        degrees=system.degrees,
        degree_product=system.degree_product,
        invariant=verdicts,
        group_order=expected_order(s.spec, s.field),
        matrix_generators=[[[s.field.format(c) for c in row] for row in g.entries] for g in gens],
    )
    if args.closure:
        payload["closure_order"] = len(group_elements(s.spec, s.field, config.cap_closure))
    return payload, 0 if all(verdicts) else 4


def cmd_verify(config: RunConfig, args) -> tuple[dict, int]:
    s = Session(config)
    payload = s.header()
    if args.candidate == "auto":
        cand = auto_candidate(s.spec, s.field)
    else:
        cand = _parse_candidate(args.candidate, s.spec.n, s.field)
    if isinstance(cand, NoBlockBasis):
        report = refute_gman(cand.m, cand.a, cand.n, s.field, s.basis)
        payload.update(report.to_json())
        payload["reason"] = cand.reason
        verified = False
    else:
        cert = s._timed(
            "verify_s", lambda: verify_block_basis(cand, s.system, s.basis, factor_cap=config.cap_factors)
        )
        body = cert.to_json()
        s.timings.update(body.pop("timings"))
        payload.update(body)
        verified = cert.verified
    payload["expect"] = args.expect
    if args.expect == "none":
        code = 0 if not verified else 1
    else:
        code = 0 if verified else 1
    return payload, code


def cmd_normal_form(config: RunConfig, args) -> tuple[dict, int]:
    s = Session(config)
    f = s.parse(args.polynomial)
    nf = s.basis.normal_form(f)
    payload = s.header()
    payload.update(input=f.format(), normal_form=nf.format(), in_ideal=nf.is_zero())
    return payload, 0


def cmd_member(config: RunConfig, args) -> tuple[dict, int]:
    s = Session(config)
    f = s.parse(args.polynomial)
    payload = s.header()
    payload.update(input=f.format(), in_ideal=s.basis.member(f))
    return payload, 0


def cmd_dimension(config: RunConfig, args) -> tuple[dict, int]:
    s = Session(config)
    dim = s.basis.coinvariant_dimension()
    payload = s.header()
    payload.update(
        degrees=s.system.degrees,
        degree_product=s.system.degree_product,
        dimension=dim,
        hilbert=s.basis.hilbert.coefficients,
    )
    return payload, 0


def _rules_for(s: Session):
    spec = s.spec
    if isinstance(spec, Unipotent):
        return rules_uI(spec.composition, s.field)
    if isinstance(spec, Imprimitive) and spec.a == 1:
        return rules_gman(spec.m, spec.n, s.field)
    return None


def cmd_product(config: RunConfig, args) -> tuple[dict, int]:
    s = Session(config)
    u, v = s.parse(args.u), s.parse(args.v)
    payload = s.header()
    payload.update(u=u.format(), v=v.format())
    cand = auto_candidate(s.spec, s.field)
    if isinstance(cand, NoBlockBasis):
        raise InvalidSpec(f"{s.spec} has no block basis; products need one")
    oracle = expand_in_block_basis(u * v, cand.exps, s.basis)
    payload["oracle"] = oracle.format()
    payload["block_basis"] = str(cand)
    rules = _rules_for(s)
    if rules is None:
        payload.update(method="oracle", product=oracle.format())
        return payload, 0
    result, trace = coinvariant_product(u, v, rules, config.cap_steps)
    payload.update(
        method=f"rewrite:{rules.kind}",
        product=result.format(),
        steps=len(trace.steps),
        trace=[list(step) for step in trace.steps[:200]],
        oracle_agrees=result == oracle,
    )
    return payload, 0 if result == oracle else 4


def cmd_critical(config: RunConfig, args) -> tuple[dict, int]:
    s = Session(config)
    if args.candidate == "auto":
        cand = auto_candidate(s.spec, s.field)
        if isinstance(cand, NoBlockBasis):
            raise InvalidSpec(f"{s.spec} has no block-basis candidate; pass --candidate")
    else:
        cand = _parse_candidate(args.candidate, s.spec.n, s.field)
    crit = critical_monomials(cand, s.system)
    payload = s.header()
    payload.update(
        candidate=str(cand),
        method=crit.method,
        sigma_order=len(crit.sigma),
        criticals=[format_monomial(w) for w in crit.monomials],
        trivial=check_triviality(crit, s.basis),
    )
    return payload, 0


def cmd_suite(config: RunConfig, args) -> tuple[dict, int]:
    from .suite import run_suite

    summary = run_suite(args.only, config.workers, config.seed)
    return summary, 0 if summary["passed"] else 1


COMMANDS = {
    "invariants": cmd_invariants,
    "verify": cmd_verify,
    "normal-form": cmd_normal_form,
    "member": cmd_member,
    "dimension": cmd_dimension,
    "product": cmd_product,
    "critical": cmd_critical,
    "suite": cmd_suite,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="coinvariants", description=__doc__.splitlines()[0])
    ap.add_argument("--q", help="field size: 9, 3^2 or q=3^2")
    ap.add_argument("--group", help="group spec, e.g. GL(2), U(1,1), G(2,1,2), P(2,1), W(1,1;m=2)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=_positive, default=1)
    ap.add_argument("--out", help="write JSON here instead of stdout")
    ap.add_argument("--cap-closure", type=_positive, default=groups.CLOSURE_CAP)
    ap.add_argument("--cap-degree", type=_positive, default=ideal.DEGREE_MONOMIAL_CAP)
    ap.add_argument("--cap-factors", type=_positive, default=poly.DIVISOR_CAP)
    ap.add_argument("--cap-steps", type=_positive, default=blockbasis.REWRITE_STEP_CAP)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="dump the generating invariants")
    p.add_argument("--closure", action="store_true", help="also enumerate the group")
    p = sub.add_parser("verify", help="certify a block-basis candidate")
    p.add_argument("--candidate", default="auto", help="'auto' or a monomial such as x1^2*x2")
    p.add_argument("--expect", choices=("block", "none"), default="block")
    p = sub.add_parser("normal-form", help="normal form modulo the invariant ideal")
    p.add_argument("polynomial")
    p = sub.add_parser("member", help="ideal membership")
    p.add_argument("polynomial")
    sub.add_parser("dimension", help="coinvariant dimension and Hilbert series")
    p = sub.add_parser("product", help="product of two elements in the block basis")
    p.add_argument("u")
    p.add_argument("v")
    p = sub.add_parser("critical", help="critical monomials of a candidate")
    p.add_argument("--candidate", default="auto")
    p = sub.add_parser("suite", help="run the acceptance matrix")
    p.add_argument("--only", help="comma-separated criterion names or numbers")
    return ap


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    t0 = time.perf_counter()
    try:
        field = parse_field(args.q) if args.q is not None else None
        config = RunConfig(
            field=field,
            group_text=args.group,
            seed=args.seed,
            workers=args.workers,
            out=args.out,
            cap_closure=args.cap_closure,
            cap_degree=args.cap_degree,
            cap_factors=args.cap_factors,
            cap_steps=args.cap_steps,
        )
        payload, code = COMMANDS[args.command](config, args)
    except UserInputError as exc:
        payload, code = _error_payload(exc, "user_error"), 2
    except CapExceeded as exc:
        payload, code = _error_payload(exc, "cap_exceeded"), 3
    except AlgebraError as exc:
        payload, code = _error_payload(exc, "algebra_error"), 4
    payload = dict(payload)
    timings = payload.setdefault("timings", {})
    timings["total_s"] = round(time.perf_counter() - t0, 6)
    payload["exit_code"] = code
    _emit(payload, args.out)
    return code


def _error_payload(exc: Exception, kind: str) -> dict:
    out = {"error": {"kind": kind, "type": type(exc).__name__, "message": str(exc)}}
    position = getattr(exc, "position", None)
    if position is not None:
        out["error"]["position"] = position
    return out


if __name__ == "__main__":
    sys.exit(main())
