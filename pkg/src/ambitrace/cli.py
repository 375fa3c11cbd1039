"""Command-line front end.

Objects are named per category with a small grammar: atoms such as ``V2``,
``V(1,a)``, ``L(3)`` or ``N``, combined with ``⊗`` (or `` x ``), ``⊕`` (or
`` + ``), a trailing ``*`` for the dual and parentheses. A path ending in
``.json`` loads a Rep document instead.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from . import superk as sk
from . import zoo
from .ambimod import (
    NotAmbidextrousError,
    NotInIdealError,
    ambi_check,
    check_split_canonical,
    clear_caches as _clear_ambi,
    mod_dim,
)
from .decomp import ideal_equal, in_ideal, is_absolutely_indecomposable, split_indecomposables
from .identities import CATEGORIES, fuzz_identities
from .kernel import GF, QQ, FieldSpec
from .repcat import Rep, clear_caches as _clear_repcat, direct_sum, dual, rep_from_json, tensor, unit
from .suite import CRITERIA, run_suite

__all__ = ["DomainError", "build_object", "main", "parse_field", "run"]

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2


class DomainError(Exception):
    """A well-formed request the mathematics refuses (reported with exit code 2)."""

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


class _UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# object grammar
# ---------------------------------------------------------------------------


def parse_field(text: str) -> FieldSpec:
    """``q``/``qq``/``rationals``, ``gf4``, ``GF(25)`` or a bare prime power."""
    s = text.strip().lower().replace(" ", "")
    if s in ("q", "qq", "rational", "rationals"):
        return QQ
    m = re.fullmatch(r"(?:gf)?\(?(\d+)\)?", s)
    if not m:
        raise _UsageError(f"unknown field {text!r}")
    try:
        return GF(int(m.group(1)))
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def _default_field(category: str, p: int | None) -> FieldSpec:
    if category == "klein":
        return GF(4)
    if category == "super":
        return QQ
    return GF(p)


def _split_top(text: str, ops: tuple[str, ...]):
    """Split at the last top-level occurrence of any operator."""
    depth = 0
    for i in range(len(text) - 1, -1, -1):
        ch = text[i]
        if ch == ")":
            depth += 1
        elif ch == "(":
            depth -= 1
        elif depth == 0:
            for op in ops:
                if text.startswith(op, i):
                    return text[:i], text[i + len(op) :]
    return None


def _atom(category: str, text: str, p: int | None, field: FieldSpec) -> Rep:
    s = text.replace(" ", "")
    if category == "cyclic":
        if s in ("k", "1"):
            return zoo.cyclic_module(p, 1, field)
        if s in ("A", "regular"):
            return zoo.cyclic_regular(p, field)
        m = re.fullmatch(r"V_?\(?(\d+)\)?", s)
        if m:
            return zoo.cyclic_module(p, int(m.group(1)), field)
    elif category == "klein":
        return zoo.klein_from_string(s, field)
    elif category == "sl2":
        if s in ("k", "1"):
            return zoo.sl2_restricted_simple(p, 0, field)
        if s == "St":
            return zoo.sl2_restricted_simple(p, p - 1, field)
        m = re.fullmatch(r"L\((\d+)\)", s)
        if m:
            return zoo.sl2_restricted_simple(p, int(m.group(1)), field)
        m = re.fullmatch(r"Vchi\((\d+)(?:,(\d+))?\)", s)
        if m:
            chi = zoo.ChiType("regular-nilpotent", scale=int(m.group(2) or 1))
            return zoo.sl2_baby_verma(p, chi, int(m.group(1)), field)
        m = re.fullmatch(r"Vss\(([^)]*)\)", s)
        if m:
            F = field if field.e > 1 else GF(p, 2)
            lam = F.parse(m.group(1).replace("a", "x"))
            return zoo.sl2_baby_verma(p, zoo.semisimple_chi(lam, F), lam, F)
    elif category == "super":
        if s in ("1", "unit", "k"):
            return unit(field, zoo.gl11_natural(field).flavor)
        if s == "N":
            return zoo.gl11_natural(field)
    raise ValueError(f"unknown {category} object {text!r}")


def build_object(category: str, text: str, p: int | None = None, field: FieldSpec | None = None) -> Rep:
    """Construct an object from the grammar described in the module docstring."""
    s = text.strip()
    if s.endswith(".json"):
        return rep_from_json(Path(s).read_text())
    if category not in CATEGORIES:
        raise _UsageError(f"unknown category {category!r}; choose from {', '.join(CATEGORIES)}")
    if category in ("cyclic", "sl2") and p is None:
        p = 5 if category == "sl2" else None
        if p is None:
            raise _UsageError("the cyclic category needs --p")
    F = field or _default_field(category, p)
    return _build(category, s, p, F)


def _build(category, s, p, F) -> Rep:
    s = s.strip()
    parts = _split_top(s, ("⊕", " + "))
    if parts:
        return direct_sum(_build(category, parts[0], p, F), _build(category, parts[1], p, F))
    parts = _split_top(s, ("⊗", " x "))
    if parts:
        return tensor(_build(category, parts[0], p, F), _build(category, parts[1], p, F))
    if s.endswith("*"):
        return dual(_build(category, s[:-1], p, F))
    if s.startswith("(") and s.endswith(")") and _split_top(s[1:-1], ("⊕", " + ", "⊗", " x ")):
        return _build(category, s[1:-1], p, F)
    return _atom(category, s, p, F)


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------


def _objects(args, *names):
    field = parse_field(args.field) if args.field else None
    try:
        return [build_object(args.category, getattr(args, n), args.p, field) for n in names]
    except _UsageError:
        raise
    except (ValueError, OSError) as exc:
        raise _UsageError(str(exc)) from exc


def _ambi(args):
    (J,) = _objects(args, "module")
    report = ambi_check(J)
    doc = report.to_json()
    pair = report.witness_pair
    doc["witness_pair"] = [str(pair[0]), str(pair[1])] if pair else None
    lines = [f"{doc['object']}: {report.verdict.value}"]
    if pair:
        lines.append(f"witness pair ({pair[0]}, {pair[1]}) at basis index {report.witness}")
    return doc, lines


def _moddim(args):
    J, V = _objects(args, "J", "V")
    try:
        value = mod_dim(J, V)
    except NotAmbidextrousError as exc:
        raise DomainError("not_ambidextrous", str(exc)) from exc
    except NotInIdealError as exc:
        raise DomainError("not_in_ideal", str(exc)) from exc
    return {"J": J.label, "V": V.label, "mod_dim": str(value)}, [str(value)]


def _ideal(args):
    V, J = _objects(args, "V", "J")
    doc = {
        "V": V.label,
        "J": J.label,
        "V_in_I_J": in_ideal(V, J),
        "J_in_I_V": in_ideal(J, V),
        "equal": ideal_equal(V, J),
        "evaluation_splits": check_split_canonical(V, J),
    }
    lines = [f"{k}: {str(v).lower()}" for k, v in doc.items() if isinstance(v, bool)]
    return doc, lines


def _decompose(args):
    (M,) = _objects(args, "module")
    summands = split_indecomposables(M, seed=args.seed)
    dims = [s.rep.dim for s in summands]
    doc = {
        "object": M.label,
        "dim": M.dim,
        "summand_dims": dims,
        "absolutely_indecomposable": [is_absolutely_indecomposable(s.rep) for s in summands],
    }
    return doc, [f"{M.label} = " + " ⊕ ".join(f"[{d}]" for d in dims)]


def _identities(args):
    cats = tuple(args.category.split(",")) if args.category else CATEGORIES
    for c in cats:
        if c not in CATEGORIES:
            raise _UsageError(f"unknown category {c!r}")
    report = fuzz_identities(categories=cats, cases=args.cases, seed=args.seed)
    doc = report.to_json()
    doc["categories"] = list(cats)
    lines = [f"{name}: {len(report.violations[name])} violations in {n} cases" for name, n in report.cases.items()]
    return doc, lines


def _mn(args) -> tuple[int, int]:
    try:
        m, n = (int(x) for x in args.mn.split(","))
    except ValueError as exc:
        raise _UsageError(f"--mn expects 'm,n', got {args.mn!r}") from exc
    if m < 1 or n < 1:
        raise _UsageError("m and n must be positive")
    return m, n


def _weight(text: str, m: int, n: int) -> sk.Weight:
    try:
        if "|" in text:
            return sk.parse_weight(text, m, n)
        return sk.tau(sk.parse_partition(text), m, n)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def _superk_atyp(args):
    m, n = _mn(args)
    lam = _weight(args.lam, m, n)
    a = sk.atypicality(lam)
    doc = {"weight": str(lam), "atypicality": a, "defect": sk.defect(m, n), "typical": a == 0}
    return doc, [f"atyp({lam}) = {a} (defect {doc['defect']})"]


def _superk_dim(args):
    m, n = _mn(args)
    lam = _weight(args.lam, m, n)
    try:
        value = sk.typical_dim(lam)
    except sk.AtypicalWeightError as exc:
        raise DomainError("atypical_weight", str(exc)) from exc
    return {"weight": str(lam), "typical_dim": str(value)}, [str(value)]


def _superk_chain(args):
    m, n = _mn(args)
    lam = _weight(args.lam, m, n)
    try:
        chain = sk.atypicality_chain(lam)
    except (sk.ChainError, ValueError) as exc:
        raise DomainError("chain", str(exc)) from exc
    doc = {
        "weight": str(lam),
        "atypicality": sk.atypicality(lam),
        "chain": [str(w) for w in chain],
        "partitions": [",".join(map(str, sk.tau(w))) for w in chain],
    }
    return doc, [" -> ".join(doc["chain"])]


def _superk_gkw(args):
    m, n = _mn(args)
    L, J = _weight(args.L, m, n), _weight(args.J, m, n)
    try:
        verdict = sk.gkw_check(L, J)
    except ValueError as exc:
        raise DomainError("gkw", str(exc)) from exc
    doc = {"L": str(L), "J": str(J), "verdict": verdict.value}
    return doc, [verdict.value]


def _paper_suite(args):
    keys = args.only.split(",") if args.only else list(CRITERIA)
    unknown = [k for k in keys if k not in CRITERIA]
    if unknown:
        raise _UsageError(f"unknown criteria {unknown}; choose from {', '.join(CRITERIA)}")
    results = run_suite(seed=args.seed, keys=keys)
    doc = {"seed": args.seed, "passed": all(r.passed for r in results), "criteria": [r.to_json() for r in results]}
    width = max(len(r.key) for r in results)
    lines = []
    for r in results:
        ok = sum(c.passed for c in r.checks)
        lines.append(f"{r.key:<{width}}  {'PASS' if r.passed else 'FAIL'}  {ok}/{len(r.checks)}  {r.seconds:6.2f}s  {r.title}")
        lines += [f"{'':<{width}}    failed: {c.name} ({c.detail})" for c in r.checks if not c.passed]
    return doc, lines


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    objects = argparse.ArgumentParser(add_help=False)
    objects.add_argument("--category", choices=CATEGORIES, required=True)
    objects.add_argument("--p", type=int, help="prime for the cyclic and sl2 categories")
    objects.add_argument("--field", help="q, gf4, GF(25), ...")

    mn = argparse.ArgumentParser(add_help=False)
    mn.add_argument("--mn", required=True, help="m,n of gl(m|n)")

    parser = argparse.ArgumentParser(prog="ambitrace", description="Ambidextrous traces and modified dimensions.")
    parser.add_argument("--output", choices=("text", "json"), default="text")
    parser.add_argument("--seed", type=int, default=0, help="overridden by AMBITRACE_SEED")
    parser.add_argument("--paper-suite", action="store_true", help="run the full reproduction battery")
    parser.add_argument("--only", help="comma-separated criterion keys for --paper-suite")
    sub = parser.add_subparsers(dest="verb")

    p = sub.add_parser("ambi", parents=[common, objects], help="ambidexterity verdict for an object")
    p.add_argument("--module", required=True)
    p = sub.add_parser("moddim", parents=[common, objects], help="modified dimension d_J(V)")
    p.add_argument("--J", required=True)
    p.add_argument("--V", required=True)
    p = sub.add_parser("ideal", parents=[common, objects], help="ideal membership both ways")
    p.add_argument("--V", required=True)
    p.add_argument("--J", required=True)
    p = sub.add_parser("decompose", parents=[common, objects], help="indecomposable summands")
    p.add_argument("--module", required=True)
    p = sub.add_parser("verify-identities", parents=[common], help="seeded ribbon identity fuzzing")
    p.add_argument("--category", help=f"comma-separated subset of {','.join(CATEGORIES)}")
    p.add_argument("--cases", type=int, default=100)
    for verb, helptext in (
        ("superk-atyp", "atypicality of a weight"),
        ("superk-dim", "typical modified dimension"),
        ("superk-chain", "constant-atypicality chain"),
    ):
        p = sub.add_parser(verb, parents=[common, mn], help=helptext)
        p.add_argument("--lambda", dest="lam", required=True, help="weight 'a,b|c' or hook partition '3,2,1'")
    p = sub.add_parser("superk-gkw", parents=[common, mn], help="generalized Kac-Wakimoto verdict")
    p.add_argument("--L", required=True)
    p.add_argument("--J", required=True)
    return parser


_VERBS = {
    "ambi": _ambi,
    "moddim": _moddim,
    "ideal": _ideal,
    "decompose": _decompose,
    "verify-identities": _identities,
    "superk-atyp": _superk_atyp,
    "superk-dim": _superk_dim,
    "superk-chain": _superk_chain,
    "superk-gkw": _superk_gkw,
}


def _emit(doc, lines, output: str, stream) -> None:
    if output == "json":
        stream.write(json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    else:
        stream.write("\n".join(lines) + "\n")


def run(argv=None, stdout=None) -> int:
    """Execute one command and return its exit code."""
    stdout = stdout or sys.stdout
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
        return EXIT_OK if code == 0 else EXIT_USAGE
    env_seed = os.environ.get("AMBITRACE_SEED")
    if env_seed is not None:
        try:
            args.seed = int(env_seed)
        except ValueError:
            print(f"ambitrace: AMBITRACE_SEED must be an integer, got {env_seed!r}", file=sys.stderr)
            return EXIT_USAGE
    if args.paper_suite == bool(args.verb):
        parser.print_usage(sys.stderr)
        print("ambitrace: give exactly one of a verb or --paper-suite", file=sys.stderr)
        return EXIT_USAGE
    # fresh caches so that output does not depend on earlier calls in the same process
    _clear_repcat()
    _clear_ambi()
    try:
        handler = _paper_suite if args.paper_suite else _VERBS[args.verb]
        doc, lines = handler(args)
    except _UsageError as exc:
        print(f"ambitrace: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        _emit({"error": {"kind": exc.kind, "message": str(exc)}}, [f"error ({exc.kind}): {exc}"], args.output, stdout)
        return EXIT_DOMAIN
    _emit(doc, lines, args.output, stdout)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
