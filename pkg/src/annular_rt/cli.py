"""Command-line entry point: ``annular-rt <command> ...``.

Every command is deterministic.  The only randomness is ``verify --fuzz``,
and that is seeded explicitly by ``--seed``.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Sequence

from .ktheory import crossingless_class, good_class_formula, results_to_csv
from .matchings import Matching, MatchingError, enumerate_matchings, is_good
from .render import render_matching, render_word
from .rt_rep import (
    Conventions,
    UnsupportedGenerator,
    check_lemma_computation,
    psi_word,
    t1_table_report,
    verify_relations,
)
from .tangles import Generator, Kind, TangleError, TangleWord
from .tensor import ArityError

DEFAULT_CAP = 14
CAP_ENV = "ANNULAR_RT_CAP"


class CliError(Exception):
    pass


def _conventions(args) -> Conventions:
    return Conventions(literal_t1=args.literal_t1, rot_chain=args.rot_chain)


def _cap(args) -> int:
    cap = args.cap
    if cap is None:
        env = os.environ.get(CAP_ENV)
        cap = int(env) if env else DEFAULT_CAP
    if cap != DEFAULT_CAP:
        print(f"warning: arity cap set to {cap} (default {DEFAULT_CAP}); "
              f"memory grows like 2^{cap}", file=sys.stderr)
    return cap


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {out}: {exc.strerror}") from None


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


# -- commands ---------------------------------------------------------------

def cmd_invariant(args) -> int:
    word = TangleWord.parse(args.word, arity=args.arity)
    op = psi_word(word, _conventions(args))
    if args.format == "json":
        _emit(_dump(op.to_json()), args.out)
    elif op.domain_arity == 0 and op.codomain_arity == 0:
        _emit(f"{op.entry(0, 0)}\n", args.out)
    else:
        _emit(op.to_table() + "\n", args.out)
    return 0


def _check_cap(N: int, cap: int) -> None:
    if N > cap:
        raise CliError(f"m+2n = {N} exceeds the arity cap {cap}; raise it with --cap")


def cmd_class(args) -> int:
    alpha = Matching.parse(args.matching)
    _check_cap(alpha.size, _cap(args))
    res = crossingless_class(alpha, _conventions(args))
    if args.format == "json":
        _emit(_dump(res.to_json()), args.out)
    elif args.format == "csv":
        _emit(results_to_csv([res], args.basis), args.out)
    else:
        _emit(res.text(args.basis) + "\n", args.out)
    return 0


def cmd_enumerate(args) -> int:
    if args.m < 1 or args.n < 0:
        raise CliError("need m >= 1 and n >= 0")
    _check_cap(args.m + 2 * args.n, _cap(args))
    conv = _conventions(args)
    results = [crossingless_class(a, conv) for a in enumerate_matchings(args.m, args.n)]
    if args.format == "json":
        text = "".join(_dump(r.to_json()) for r in results)
    elif args.format == "csv":
        text = results_to_csv(results, args.basis)
    else:
        text = "".join(r.text(args.basis) + "\n" for r in results)
    _emit(text, args.out)
    return 0


def _random_word(rng: random.Random, n: int, length: int) -> TangleWord:
    """A random word of arity-preserving generators on n strands."""
    choices = [Generator(Kind.ROT, n), Generator(Kind.ROT_INV, n), Generator(Kind.WIND, n, n)]
    for i in range(1, n + 1):
        choices.append(Generator(Kind.TWIST, n, i, 1))
        choices.append(Generator(Kind.TWIST, n, i, 2))
    for i in range(1, n):
        choices.append(Generator(Kind.CROSS, n, i, 1))
        choices.append(Generator(Kind.CROSS, n, i, 2))
    return TangleWord.of(*(rng.choice(choices) for _ in range(length)), arity=n)


def _fuzz(count: int, seed: int, conv: Conventions) -> dict:
    """Functoriality on random words: psi(a b) == psi(a) psi(b)."""
    rng = random.Random(seed)
    failures = []
    for trial in range(count):
        n = rng.randint(1, 4)
        a = _random_word(rng, n, rng.randint(0, 4))
        b = _random_word(rng, n, rng.randint(0, 4))
        if psi_word(a @ b, conv) != psi_word(a, conv) @ psi_word(b, conv):
            failures.append({"trial": trial, "outer": str(a), "inner": str(b)})
    return {"seed": seed, "trials": count, "failures": failures}


def cmd_verify(args) -> int:
    if not 1 <= args.n_max <= 8:
        raise CliError("n_max must lie in 1..8")
    conv = _conventions(args)
    ledger = verify_relations(args.n_max, conv)
    code = ledger.exit_code()
    fuzz = _fuzz(args.fuzz, args.seed, conv) if args.fuzz else None
    if fuzz and fuzz["failures"]:
        code = 1
    if args.format == "json":
        obj = ledger.to_json()
        if fuzz is not None:
            obj["fuzz"] = fuzz
        _emit(json.dumps(obj, indent=2) + "\n", args.out)
    else:
        lines = [f"t1_table_corrected={ledger.t1_table_corrected} rot_chain={ledger.rot_chain_sign} n_max={args.n_max}"]
        for r in ledger.relations:
            status = "holds" if r.holds else "FAILS"
            line = f"({r.relation_id}) {r.reading:<9} chain={r.rot_chain} instances={r.instances:<4} {status}"
            if r.counterexample:
                line += f"  e.g. {r.counterexample}"
            if r.note:
                line += f"  [{r.note}]"
            lines.append(line)
        if fuzz is not None:
            lines.append(f"fuzz: {fuzz['trials']} trials, seed {fuzz['seed']}, {len(fuzz['failures'])} failures")
        lines.append(f"exit code {code}")
        _emit("\n".join(lines) + "\n", args.out)
    return code


def _class_easy_reports(bound: int) -> list[dict]:
    reports = []
    for N in range(1, bound + 1):
        for n in range(0, (N - 1) // 2 + 1):
            m = N - 2 * n
            for beta in enumerate_matchings(m, n):
                if not is_good(beta):
                    continue
                rep = good_class_formula(beta)
                if not rep.discrepancies:
                    continue
                entry = rep.to_json()
                entry["matching"] = str(beta)
                entry["identity"] = n == 0
                reports.append(entry)
    return reports


def cmd_check_lemmas(args) -> int:
    if not 2 <= args.k_max <= 8:
        raise CliError("k_max must lie in 2..8")
    conv = _conventions(args)
    t1 = t1_table_report()
    lemma = {k: [d.to_json() for d in check_lemma_computation(k, conv)] for k in range(2, args.k_max + 1)}
    easy = _class_easy_reports(args.class_bound)
    if args.format == "json":
        obj = {"t1_table": t1,
               "rotation_closed_form": {str(k): v for k, v in lemma.items()},
               "good_class_coefficient": easy}
        _emit(json.dumps(obj, indent=2) + "\n", args.out)
        return 0
    out = ["[t(1) table] tabulated entry vs id + q*g*f:"]
    out += [f"  {e['input']}: tabulated {e['literal']}, forced {e['derived']}" for e in t1] or ["  none"]
    out.append("[rotation closed form] composed chain vs stated closed form:")
    for k, diffs in lemma.items():
        out.append(f"  k={k}: {len(diffs)} differing columns")
        for d in diffs:
            idx = "".join(map(str, d["input"]))
            out.append(f"    v_{idx}: composed {d['composed']}  closed form {d['closed_form']}")
    out.append("[good-class coefficient] literal (-q)^(sum i J_i) vs corrected prod(-q^-i):")
    for e in easy:
        tag = "  <- identity matching, contradicts the base class" if e["identity"] else ""
        out.append(f"  {e['matching']}: {len(e['discrepancies'])} differing entries{tag}")
        for d in e["discrepancies"]:
            out.append(f"    v_{''.join(map(str, d['index']))}: literal {d['literal']}  corrected {d['corrected']}")
    _emit("\n".join(out) + "\n", args.out)
    return 0


def cmd_render(args) -> int:
    text = args.input.strip()
    if text.startswith("{") or text.startswith("m="):
        svg = render_matching(Matching.parse(text))
    else:
        svg = render_word(TangleWord.parse(text, arity=args.arity))
    _emit(svg, args.out)
    return 0


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rot-chain", type=int, choices=(1, 2), default=1,
                        help="crossing sign used in the rotation chain (default 1)")
    common.add_argument("--literal-t1", action="store_true",
                        help="use the tabulated t(1) table instead of id + q*g*f")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--cap", type=int, default=None,
                        help=f"largest allowed m+2n (default {DEFAULT_CAP}, env {CAP_ENV})")

    p = argparse.ArgumentParser(prog="annular-rt", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("invariant", parents=[common], help="print psi of a tangle word")
    s.add_argument("word", help="e.g. 'f(2,1) t(2,1,1) g(2,1)'; empty string with --arity for the identity")
    s.add_argument("--arity", type=int, default=None)
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_invariant)

    s = sub.add_parser("class", parents=[common], help="K-theory class of one matching")
    s.add_argument("matching", help="e.g. 'm=2 n=1 cups=[[4,1]]' or a JSON object")
    s.add_argument("--basis", choices=("v", "lambda"), default="v")
    s.add_argument("--format", choices=("text", "json", "csv"), default="text")
    s.set_defaults(func=cmd_class)

    s = sub.add_parser("enumerate", parents=[common], help="classes of every matching in Cross(m,n)")
    s.add_argument("m", type=int)
    s.add_argument("n", type=int)
    s.add_argument("--basis", choices=("v", "lambda"), default="v")
    s.add_argument("--format", choices=("text", "json", "csv"), default="json")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("verify", parents=[common], help="check the tangle relations under psi")
    s.add_argument("n_max", type=int, nargs="?", default=4)
    s.add_argument("--fuzz", type=int, default=0, help="number of random functoriality trials")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("check-lemmas", parents=[common], help="discrepancy reports for stated closed forms")
    s.add_argument("k_max", type=int, nargs="?", default=6)
    s.add_argument("--class-bound", type=int, default=6, help="largest m+2n for the good-class report")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_check_lemmas)

    s = sub.add_parser("render", parents=[common], help="SVG of a matching or tangle word")
    s.add_argument("input")
    s.add_argument("--arity", type=int, default=None)
    s.set_defaults(func=cmd_render)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, MatchingError, TangleError, ArityError, UnsupportedGenerator, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
