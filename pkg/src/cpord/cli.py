"""Command-line front end: ``cpord <verb> <subverb> [options]``.

Exit codes: 0 on success or a passing suite, 1 on a domain/validation
error or a failing suite, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence, Tuple

from cpord.dedekind import (
    Block,
    GapPoint,
    completion_order,
    dedekind_sections,
    gap_characteristic,
    make_suborder,
    remainder,
)
from cpord.errors import CpordError, OrdinalSyntaxError, ValidationError
from cpord.ordinal import (
    Ordinal,
    add,
    classify,
    cofinality_class,
    compare,
    format_ordinal,
    is_isolated,
    ordinal_to_json,
    parse_ordinal,
)
from cpord.phi import phi_apply, phi_invert, phi_preimage_subbasic
from cpord.stepfn import (
    IndicatorFn,
    StepFn,
    determining_sequence,
    eval_fn,
    make_stepfn,
    xor_add,
)
from cpord.verify import (
    DEFAULT_POOL,
    FamilySpec,
    VerifyReport,
    verify_continuity_table,
    verify_dedekind,
    verify_group_axioms,
    verify_homomorphism,
    verify_injectivity,
    verify_ordinal_laws,
    verify_uniqueness,
)

PAIR_DEFAULT_SIZE = 6


class UsageError(Exception):
    def __init__(self, message, usage=""):
        self.usage = usage
        super().__init__(message)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message, self.format_usage())

    def print_help(self, file=None):
        raise _HelpRequested(self.format_help())


class _HelpRequested(Exception):
    pass


# argument parsing helpers ---------------------------------------------------

def _split_top_level(text: str, sep: str = ",") -> List[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_ordinal_list(text: Optional[str]) -> List[Ordinal]:
    if text is None or not text.strip():
        return []
    return [parse_ordinal(p) for p in _split_top_level(text)]


def parse_set(text: str) -> List[Block]:
    """Parse ``"[0,w) + [w+1, w*2)"`` into raw blocks."""
    blocks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace() or ch in "+∪":
            i += 1
            continue
        if ch != "[":
            raise OrdinalSyntaxError(f"expected '[' to open a block, found {ch!r}", i)
        depth = 0
        j = i + 1
        while j < n:
            c = text[j]
            if c == "(":
                depth += 1
            elif c == ")" and depth:
                depth -= 1
            elif c in ")]" and depth == 0:
                break
            j += 1
        if j >= n:
            raise OrdinalSyntaxError("unterminated block", i)
        inner = _split_top_level(text[i + 1:j])
        if len(inner) != 2:
            raise OrdinalSyntaxError("a block needs exactly two endpoints", i)
        start, end = (parse_ordinal(p) for p in inner)
        blocks.append(Block(start, end, text[j] == "]"))
        i = j + 1
    return blocks


def _stepfn_from_args(tau, initial, changes) -> StepFn:
    return make_stepfn(parse_ordinal(tau), initial, parse_ordinal_list(changes))


# text / JSON rendering ------------------------------------------------------

def _ords(points) -> str:
    return ", ".join(format_ordinal(p) for p in points)


def emit(value, fmt: str = "text") -> str:
    """Render a module value as stable text or schema-exact JSON."""
    if fmt == "json":
        if isinstance(value, Ordinal):
            data = ordinal_to_json(value)
        elif hasattr(value, "to_json"):
            data = value.to_json()
        elif isinstance(value, (list, tuple)):
            data = [ordinal_to_json(v) if isinstance(v, Ordinal) else v.to_json() if hasattr(v, "to_json") else v for v in value]
        else:
            data = value
        return json.dumps(data, sort_keys=False)
    if isinstance(value, Ordinal):
        return format_ordinal(value)
    if isinstance(value, StepFn):
        return "\n".join([
            f"domain: {format_ordinal(value.domain)}",
            f"initial: {value.initial}",
            f"changes: [{_ords(value.changes)}]",
        ])
    if isinstance(value, IndicatorFn):
        return f"domain: {format_ordinal(value.domain)}\nsupport: {{{_ords(value.support)}}}"
    if isinstance(value, VerifyReport):
        return value.text()
    return str(value)


def _stepfn_with_pool(args, pair=False) -> FamilySpec:
    tau = parse_ordinal(args.tau)
    if args.pool is not None:
        pool = parse_ordinal_list(args.pool)
    else:
        pool = [p for p in DEFAULT_POOL if p < tau]
        if pair:
            pool = pool[:PAIR_DEFAULT_SIZE]
    return FamilySpec(tau, tuple(pool))


# command handlers -----------------------------------------------------------

def _cmd_ord(args):
    a = parse_ordinal(args.a)
    if args.sub == "add":
        return emit(add(a, parse_ordinal(args.b)), args.format)
    if args.sub == "cmp":
        word = {-1: "less", 0: "equal", 1: "greater"}[compare(a, parse_ordinal(args.b))]
        return json.dumps(word) if args.format == "json" else word
    if args.sub == "cls":
        info = {
            "kind": classify(a).value,
            "isolated": is_isolated(a),
            "cofinality": cofinality_class(a).value,
        }
        if args.format == "json":
            return json.dumps(info)
        return "\n".join(f"{k}: {str(v).lower() if isinstance(v, bool) else v}" for k, v in info.items())
    return emit(a, args.format)  # "show"


def _cmd_fn(args):
    f = _stepfn_from_args(args.tau, args.initial, args.changes)
    if args.sub == "make":
        return emit(f, args.format)
    if args.sub == "eval":
        value = eval_fn(f, parse_ordinal(args.at))
        return json.dumps(value) if args.format == "json" else str(value)
    if args.sub == "add":
        g = _stepfn_from_args(args.tau, args.other_initial, args.other_changes)
        return emit(xor_add(f, g), args.format)
    initial, seq = determining_sequence(f)
    if args.format == "json":
        return json.dumps({"initial": initial, "sequence": [ordinal_to_json(s) for s in seq]})
    return f"<{initial}, <{_ords(seq)}>>"


def _cmd_phi(args):
    tau = parse_ordinal(args.tau)
    if args.sub == "apply":
        f = make_stepfn(tau, args.initial, parse_ordinal_list(args.changes))
        return emit(phi_apply(f, allow_countable_cofinality=args.override_cofinality), args.format)
    if args.sub == "invert":
        g = IndicatorFn.make(add(tau, 1), parse_ordinal_list(args.support))
        return emit(phi_invert(g), args.format)
    pred = phi_preimage_subbasic(parse_ordinal(args.x), args.bit, tau)
    return emit(pred, args.format)


def _cmd_dedekind(args):
    X = make_suborder(parse_ordinal(args.ambient), parse_set(args.set))
    if args.sub == "sections":
        gaps = dedekind_sections(X)
        if args.format == "json":
            return emit(gaps, "json")
        return "\n".join(f"gap left_part={g.left_part} sup={format_ordinal(g.sup_in_ambient)}" for g in gaps)
    if args.sub == "remainder":
        rem = remainder(X)
        return emit(rem, "json") if args.format == "json" else _ords(rem)
    if args.sub == "complete":
        entries = completion_order(X)
        if args.format == "json":
            return json.dumps([
                {"gap": e.to_json()} if isinstance(e, GapPoint) else {"block": e.to_json()}
                for e in entries
            ])
        return "\n".join(
            f"gap {format_ordinal(e.sup_in_ambient)}" if isinstance(e, GapPoint) else f"block {e}"
            for e in entries
        )
    sup = parse_ordinal(args.gap)
    matches = [g for g in dedekind_sections(X) if g.sup_in_ambient == sup]
    if not matches:
        raise ValidationError(f"no Dedekind section of {X} has supremum {format_ordinal(sup)}")
    chi = gap_characteristic(X, matches[0])
    if args.format == "json":
        return json.dumps([{"block": b.to_json(), "value": v} for b, v in chi])
    return "\n".join(f"{b} -> {v}" for b, v in chi)


def _cmd_verify(args):
    override = args.override_cofinality
    if args.sub == "dedekind":
        report = verify_dedekind(args.trials if args.trials is not None else 200, args.seed)
    elif args.sub == "ordinal":
        report = verify_ordinal_laws(args.trials if args.trials is not None else 1000, args.seed)
    elif args.sub == "inject":
        report = verify_injectivity(_stepfn_with_pool(args), allow_countable_cofinality=override)
    elif args.sub == "hom":
        report = verify_homomorphism(_stepfn_with_pool(args, pair=True), allow_countable_cofinality=override)
    elif args.sub == "cont":
        report = verify_continuity_table(_stepfn_with_pool(args), allow_countable_cofinality=override)
    elif args.sub == "unique":
        report = verify_uniqueness(_stepfn_with_pool(args))
    else:
        report = verify_group_axioms(_stepfn_with_pool(args, pair=True))
    text = report.dumps() if args.format == "json" else report.text()
    return text, (0 if report.passed else 1)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    def bit(text):
        if text not in ("0", "1"):
            raise argparse.ArgumentTypeError(f"expected 0 or 1, got {text!r}")
        return int(text)

    parser = _Parser(prog="cpord", description="Step functions on ordinals, the injection phi, Dedekind completions.")
    verbs = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    ord_p = verbs.add_parser("ord", help="ordinal arithmetic")
    ord_sub = ord_p.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    for name in ("add", "cmp"):
        p = ord_sub.add_parser(name, parents=[common])
        p.add_argument("a")
        p.add_argument("b")
    for name in ("cls", "show"):
        ord_sub.add_parser(name, parents=[common]).add_argument("a")

    fn_p = verbs.add_parser("fn", help="step functions on tau")
    fn_sub = fn_p.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    fn_base = _Parser(add_help=False, parents=[common])
    fn_base.add_argument("--tau", required=True)
    fn_base.add_argument("--initial", type=bit, default=0)
    fn_base.add_argument("--changes", default="")
    fn_sub.add_parser("make", parents=[fn_base])
    fn_sub.add_parser("detseq", parents=[fn_base])
    fn_sub.add_parser("eval", parents=[fn_base]).add_argument("--at", required=True)
    p = fn_sub.add_parser("add", parents=[fn_base])
    p.add_argument("--other-initial", type=bit, default=0)
    p.add_argument("--other-changes", default="")

    phi_p = verbs.add_parser("phi", help="the map phi into C_p(tau+1)")
    phi_sub = phi_p.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    p = phi_sub.add_parser("apply", parents=[common])
    p.add_argument("--tau", required=True)
    p.add_argument("--initial", type=bit, default=0)
    p.add_argument("--changes", default="")
    p.add_argument("--override-cofinality", action="store_true")
    p = phi_sub.add_parser("invert", parents=[common])
    p.add_argument("--tau", required=True)
    p.add_argument("--support", default="")
    p = phi_sub.add_parser("preimage", parents=[common])
    p.add_argument("--tau", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--bit", type=bit, required=True)

    dk_p = verbs.add_parser("dedekind", help="sections and remainder of a suborder")
    dk_sub = dk_p.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    for name in ("sections", "remainder", "complete", "chi"):
        p = dk_sub.add_parser(name, parents=[common])
        p.add_argument("--ambient", required=True)
        p.add_argument("--set", required=True)
        if name == "chi":
            p.add_argument("--gap", required=True, help="supremum of the section")

    vf_p = verbs.add_parser("verify", help="run a verification suite")
    vf_sub = vf_p.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    for name in ("inject", "hom", "cont", "unique", "group", "dedekind", "ordinal"):
        p = vf_sub.add_parser(name, parents=[common])
        p.add_argument("--tau", default="w1")
        p.add_argument("--pool", default=None, help="comma-separated change-point pool")
        p.add_argument("--seed", type=int, default=1)
        p.add_argument("--trials", type=int, default=None)
        p.add_argument("--override-cofinality", action="store_true")
    return parser


_HANDLERS = {
    "ord": _cmd_ord,
    "fn": _cmd_fn,
    "phi": _cmd_phi,
    "dedekind": _cmd_dedekind,
    "verify": _cmd_verify,
}


def _run(argv: Sequence[str]) -> Tuple[int, str, bool]:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
        result = _HANDLERS[args.verb](args)
    except _HelpRequested as exc:
        return 0, str(exc).rstrip("\n"), False
    except UsageError as exc:
        text = f"{exc.usage}cpord: error: {exc}" if exc.usage else f"cpord: error: {exc}"
        return 2, text, True
    except CpordError as exc:
        return 1, str(exc), True
    if isinstance(result, tuple):
        text, code = result
        return code, text, False
    return 0, result, False


def dispatch(argv: Sequence[str]) -> Tuple[int, str]:
    code, text, _ = _run(argv)
    return code, text


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, text, is_error = _run(sys.argv[1:] if argv is None else argv)
    stream = sys.stderr if is_error else sys.stdout
    if text:
        print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
