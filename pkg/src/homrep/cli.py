"""Command-line front end.

Every subcommand prints a plain result by default and a JSON run report with
``--json``.  Exit codes: 0 pass, 1 fail, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Sequence

from . import forkcalc, functors, oracles, partitions, presentations
from .words import parse_braid

DEFAULT_LIMITS = {"max_m": 5, "max_n": 10, "max_cutoff": 12, "max_genus": 6}
CONFIG_ENV = "HOMREP_CONFIG"


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    parameters: dict
    status: str = "pass"  # pass | fail | inconclusive
    payload: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)

    def fail(self, example) -> None:
        self.status = "fail"
        self.counterexamples.append(example)

    def to_json(self) -> dict:
        if self.status == "fail" and not self.counterexamples:
            raise AssertionError("a failing report needs a counterexample")
        return {
            "command": self.command,
            "parameters": self.parameters,
            "status": self.status,
            "payload": self.payload,
            "counterexamples": self.counterexamples,
        }


def load_limits() -> dict:
    limits = dict(DEFAULT_LIMITS)
    path = os.environ.get(CONFIG_ENV)
    if path:
        with open(path) as fh:
            limits.update(json.load(fh).get("limits", {}))
    return limits


def _cap(args, name: str, value: int, limit_key: str) -> None:
    if args.no_limits:
        return
    limit = load_limits()[limit_key]
    if value > limit:
        raise UsageError(f"--{name} {value} exceeds the configured limit {limit} (use --no-limits)")


# -- subcommands ------------------------------------------------------------------------


def cmd_dim(args) -> tuple[RunReport, str]:
    _cap(args, "m", args.m, "max_m")
    value = partitions.lb_rank(args.m, args.n)
    rep = RunReport("dim", {"m": args.m, "n": args.n}, payload={"rank": value})
    return rep, str(value)


def cmd_matrix(args) -> tuple[RunReport, str]:
    _cap(args, "m", args.m, "max_m")
    _cap(args, "n", args.n, "max_n")
    if args.n < 2:
        raise UsageError("matrices need n >= 2")
    try:
        word = parse_braid(args.word, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    mat = forkcalc.braid_matrix(args.m, args.n, word.letters)
    rep = RunReport("matrix", {"m": args.m, "n": args.n, "word": args.word}, payload={"matrix": mat.to_json()})
    text = mat.to_latex() if args.latex else json.dumps(mat.to_json(), sort_keys=True)
    return rep, text


def _verify_braid(rep: RunReport, max_m: int, max_n: int) -> None:
    for m in range(1, max_m + 1):
        for n in range(2, max_n + 1):
            g = {(i, s): forkcalc.generator_matrix(m, n, i, s) for i in range(1, n) for s in (1, -1)}
            for i in range(1, n):
                if not (g[i, 1] @ g[i, -1]).is_identity():
                    rep.fail({"m": m, "n": n, "relation": f"s{i} s{i}^-1"})
            for i in range(1, n - 1):
                if g[i, 1] @ g[i + 1, 1] @ g[i, 1] != g[i + 1, 1] @ g[i, 1] @ g[i + 1, 1]:
                    rep.fail({"m": m, "n": n, "relation": f"braid {i}"})
            for i in range(1, n):
                for j in range(i + 2, n):
                    if g[i, 1] @ g[j, 1] != g[j, 1] @ g[i, 1]:
                        rep.fail({"m": m, "n": n, "relation": f"commute {i},{j}"})
    rep.payload["braid"] = {"max_m": max_m, "max_n": max_n}


def _verify_oracle(rep: RunReport, m: int, max_n: int) -> None:
    witnesses = {}
    for n in range(2, max_n + 1):
        ours = [forkcalc.generator_matrix(m, n, i) for i in range(1, n)]
        if m == 1:
            verdict = oracles.compare_reps(ours, oracles.burau_reduced_generators(n))
        else:
            ref = [oracles.lkb_reference(n, i) for i in range(1, n)]
            verdict = oracles.compare_reps(ours, ref, oracles.lkb_basis_change(n))
        if verdict.ok:
            witnesses[n] = verdict.witness
        else:
            rep.fail(dict(verdict.counterexample or {}, n=n))
    rep.payload[f"oracle_m{m}"] = witnesses


def _verify_naturality(rep: RunReport, max_m: int, max_n: int) -> None:
    for m in range(1, max_m + 1):
        f = functors.lb_tabulate(m, max_n + 1)
        for n in range(2, max_n + 1):
            for i, s in functors.all_generators(n):
                if not functors.naturality_holds(f, n, i, s):
                    rep.fail({"m": m, "n": n, "generator": [i, s]})
    rep.payload["naturality"] = {"max_m": max_m, "max_n": max_n}


def _verify_calibration(rep: RunReport) -> None:
    stored = forkcalc.load_calibration()
    digest = forkcalc.oracle_digest(stored)
    expected = stored.validated_by.get("digest")
    rep.payload["calibration"] = {"key": list(stored.key()), "digest": digest}
    if digest != expected:
        rep.fail({"calibration": "digest mismatch", "stored": expected, "computed": digest})


def cmd_verify(args) -> tuple[RunReport, str]:
    rep = RunReport("verify", {"suite": args.suite, "m": args.m, "max_n": args.max_n, "quick": args.quick})
    if args.suite == "oracle":
        if args.m not in (1, 2):
            raise UsageError("verify oracle takes --m 1 or --m 2")
        max_n = args.max_n or (8 if args.m == 1 else 5)
        _cap(args, "max-n", max_n, "max_n")
        _verify_oracle(rep, args.m, max_n)
    elif args.suite == "braid":
        _verify_braid(rep, args.m or 3, args.max_n or 5)
    elif args.suite == "naturality":
        _verify_naturality(rep, args.m or 3, args.max_n or 5)
    elif args.suite == "calibration":
        _verify_calibration(rep)
    elif args.suite == "all":
        small = args.quick
        _verify_calibration(rep)
        _verify_braid(rep, 2 if small else 3, 4 if small else 6)
        _verify_oracle(rep, 1, 5 if small else 8)
        _verify_oracle(rep, 2, 4 if small else 5)
        _verify_naturality(rep, 2 if small else 3, 4 if small else 5)
        for m in (1, 2) if small else (1, 2, 3):
            res = functors.diffeva_check(m, 4 if small else 5)
            if not res.ok:
                rep.fail(dict(res.counterexample or {}, m=m))
        for name, group in _abelian_presets_expected():
            if str(group[0]) != group[1]:
                rep.fail({"preset": name, "got": str(group[0]), "expected": group[1]})
    return rep, f"{rep.status} ({len(rep.counterexamples)} counterexamples)"


def _abelian_presets_expected():
    return [
        ("braid n=4", (presentations.abelianization(presentations.braid_presentation(4)), "Z")),
        ("loop n=3", (presentations.abelianization(presentations.loop_braid_presentation(3)), "Z + Z/2")),
        (
            "loop-ext n=3",
            (presentations.abelianization(presentations.loop_braid_presentation(3, True)), "(Z/2)^3"),
        ),
    ]


def _functor(args, cutoff: int):
    if args.functor == "lb":
        return functors.lb_tabulate(args.m, cutoff)
    return functors.moriyama_tabulate(args.m, cutoff)


def cmd_degree(args) -> tuple[RunReport, str]:
    _cap(args, "m", args.m, "max_m")
    _cap(args, "cutoff", args.cutoff, "max_cutoff")
    f = _functor(args, args.cutoff)
    report = functors.degree_report(f, args.cutoff)
    rep = RunReport(
        "degree",
        {"functor": args.functor, "m": args.m, "cutoff": args.cutoff},
        status=report.status,
        payload=report.to_json(),
    )
    text = (
        f"strong degree {report.strong_degree} (very strong: {report.very_strong}), "
        f"weak degree {report.weak_degree}"
    )
    return rep, text


def cmd_delta_iso(args) -> tuple[RunReport, str]:
    _cap(args, "m", args.m, "max_m")
    _cap(args, "cutoff", args.cutoff, "max_cutoff")
    res = functors.diffeva_check(args.m, args.cutoff)
    rep = RunReport("delta-iso", {"m": args.m, "cutoff": args.cutoff}, payload=res.to_json())
    if not res.ok:
        rep.fail(res.counterexample or {"reason": "mismatch"})
    return rep, ("pass" if res.ok else "fail") + f" ({res.checked} matrices, identification {res.identification})"


def _presentation(args):
    preset = args.preset
    if args.file:
        with open(args.file) as fh:
            return presentations.Presentation.from_json(json.load(fh))
    if preset is None:
        raise UsageError("give --preset or --file")
    n = args.n
    if preset == "braid":
        return presentations.braid_presentation(n)
    if preset == "loop":
        return presentations.loop_braid_presentation(n)
    if preset == "loop-ext":
        return presentations.loop_braid_presentation(n, extended=True)
    if preset in ("orientable", "surface", "nonorientable"):
        kind = "nonorientable" if preset == "nonorientable" else "orientable"
        return presentations.bellingeri_presentation(kind, args.genus, args.punctures, n)
    if preset == "disc":
        return presentations.disc_braid_presentation(n, args.punctures)
    raise UsageError(f"unknown preset {preset}")


def cmd_abelianize(args) -> tuple[RunReport, str]:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    try:
        pres = _presentation(args)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    group = presentations.abelianization(pres)
    rep = RunReport(
        "abelianize",
        {"preset": args.preset, "n": args.n, "genus": args.genus, "punctures": args.punctures},
        payload={"group": group.to_json(), "text": str(group), "generators": len(pres.generators)},
    )
    return rep, str(group)


def cmd_quotient_image(args) -> tuple[RunReport, str]:
    ambient, gens, kill = presentations.loop_quotient_data(args.theorem, args.m)
    group = presentations.subgroup_image(ambient, [g for _, g in gens], kill)
    rep = RunReport(
        "quotient-image",
        {"theorem": args.theorem, "m": args.m},
        payload={
            "ambient": str(ambient),
            "spanning": {name: g for name, g in gens},
            "relations": kill,
            "group": group.to_json(),
            "text": str(group),
        },
    )
    return rep, str(group)


def cmd_moriyama(args) -> tuple[RunReport, str]:
    _cap(args, "m", args.m, "max_m")
    _cap(args, "g", args.g, "max_genus")
    ranks = {g: partitions.moriyama_rank(args.m, g) for g in range(args.g + 1)}
    listed = {g: len(partitions.enum_Q(args.m, g)) if g else 0 for g in range(args.g + 1)}
    rep = RunReport("moriyama", {"m": args.m, "g": args.g}, payload={"ranks": ranks})
    for g in ranks:
        if ranks[g] != listed[g]:
            rep.fail({"g": g, "formula": ranks[g], "labels": listed[g]})
    return rep, " ".join(str(ranks[g]) for g in sorted(ranks))


def cmd_partitions(args) -> tuple[RunReport, str]:
    if args.moriyama:
        if args.g is None:
            raise UsageError("--moriyama needs --g")
        args.kind, args.n = ("Qdelta" if args.k else "Q"), args.g
    elif args.n is None:
        raise UsageError("--n is required")
    if args.kind == "P":
        labels = partitions.enum_P(args.m, args.n)
    elif args.kind == "Pdelta":
        labels = partitions.enum_P_delta(args.m, args.k, args.n)
    elif args.kind == "Q":
        labels = partitions.enum_Q(args.m, args.n)
    else:
        labels = partitions.enum_Q_delta(args.m, args.k, args.n)
    as_json = json.loads(json.dumps(labels))
    rep = RunReport(
        "partitions", {"kind": args.kind, "m": args.m, "k": args.k, "n": args.n}, payload={"labels": as_json}
    )
    return rep, "\n".join(json.dumps(x) for x in as_json)


# -- parser ---------------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="homrep", description="Homological representations of braid-type groups.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the full JSON run report")
    common.add_argument("--no-limits", action="store_true", help="ignore the configured size limits")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("dim", parents=[common], help="rank of LB_m(n)")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_dim)

    s = sub.add_parser("matrix", parents=[common], help="matrix of a braid word on LB_m(n)")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--word", required=True, help='e.g. "s1 s2^-1"')
    s.add_argument("--latex", action="store_true")
    s.set_defaults(func=cmd_matrix)

    s = sub.add_parser("verify", parents=[common], help="verification suites")
    s.add_argument("suite", choices=["oracle", "braid", "naturality", "calibration", "all"])
    s.add_argument("--m", type=int)
    s.add_argument("--max-n", type=int)
    s.add_argument("--quick", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("degree", parents=[common], help="polynomial degree report")
    s.add_argument("--functor", choices=["lb", "moriyama"], default="lb")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--cutoff", type=int, default=8)
    s.set_defaults(func=cmd_degree)

    s = sub.add_parser("delta-iso", parents=[common], help="check delta LB_m = tau LB_{m-1}")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--cutoff", type=int, default=5)
    s.set_defaults(func=cmd_delta_iso)

    s = sub.add_parser("abelianize", parents=[common], help="abelianization of a presentation")
    s.add_argument("--preset", choices=["braid", "loop", "loop-ext", "surface", "orientable", "nonorientable", "disc"])
    s.add_argument("--file", help="presentation JSON file")
    s.add_argument("--n", type=int, default=3, help="number of strands")
    s.add_argument("--genus", type=int, default=1)
    s.add_argument("--punctures", type=int, default=0)
    s.set_defaults(func=cmd_abelianize)

    s = sub.add_parser("quotient-image", parents=[common], help="loop braid quotient groups")
    s.add_argument("--theorem", choices=["alpha", "beta", "gamma"], required=True)
    s.add_argument("--m", type=int, required=True)
    s.set_defaults(func=cmd_quotient_image)

    s = sub.add_parser("moriyama", parents=[common], help="Moriyama ranks for genus 0..g")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--g", type=int, required=True)
    s.set_defaults(func=cmd_moriyama)

    s = sub.add_parser("partitions", parents=[common], help="list basis labels")
    s.add_argument("--kind", choices=["P", "Pdelta", "Q", "Qdelta"], default="P")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, help="length for P, object for Pdelta, genus for Q")
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--moriyama", action="store_true", help="list Q labels (k = 0 for Q_m(g))")
    s.add_argument("--g", type=int, help="genus, with --moriyama")
    s.set_defaults(func=cmd_partitions)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        report, text = args.func(args)
    except UsageError as exc:
        print(str(exc), file=err)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    if args.json:
        print(json.dumps(report.to_json(), sort_keys=True, indent=1), file=out)
    else:
        print(text, file=out)
    return 0 if report.status == "pass" else 1


def main() -> None:  # pragma: no cover
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
