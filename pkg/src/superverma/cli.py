"""Command line interface: ``superverma <command> [options]``.

Weights are comma-separated rationals (``--lambda 1,-1/2``) or JSON lists.
Every option can also come from a JSON file given with ``--config``; flags
given on the command line win.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from .algebra import build_algebra, fmt_weight, parse_algebra_json, w_sub
from .characters import ParabolicDatum
from .errors import ConsistencyError, DepthError, SpecError, SupervermaError
from .formula import eval_formula, verify_offset
from .irreducibility import delta_classes, irreducibility_report
from .linalg import det, vec
from .verma import DEFAULT_DEPTH, brute_determinant, build_irrep_l, gram_block, normalization

EXIT_VERIFY_FAIL = 5

DEFAULTS = {"depth": DEFAULT_DEPTH, "samples": 3, "seed": 0, "format": "json", "pi_l": []}


def parse_weight(text) -> tuple:
    if isinstance(text, (list, tuple)):
        items = [str(x) for x in text]
    else:
        text = str(text).strip()
        if text.startswith("["):
            items = [str(x) for x in json.loads(text)]
        else:
            items = [t for t in text.split(",") if t.strip()]
    try:
        return tuple(Fraction(t.strip()) for t in items)
    except (ValueError, ZeroDivisionError):
        raise SpecError(f"cannot parse weight {text!r}") from None


def parse_indices(text) -> list[int]:
    if isinstance(text, list):
        return [int(x) for x in text]
    text = str(text).strip()
    if text.startswith("["):
        return [int(x) for x in json.loads(text)]
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise SpecError(f"cannot parse index list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="superverma",
                                description="Determinants and irreducibility of parabolic Verma "
                                            "modules over basic classical Lie superalgebras.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with default values for the options")
    common.add_argument("--algebra", choices=["gl", "osp", "d21a"], help="algebra family")
    common.add_argument("--m", type=int, help="gl: m; osp: M (the orthogonal size)")
    common.add_argument("--n", type=int, help="gl: n; osp: n in osp(M|2n)")
    common.add_argument("--alpha", help="parameter of D(2,1;alpha), a rational")
    common.add_argument("--positivity", help="regular element fixing the positive system")
    common.add_argument("--allow-purely-even", action="store_true", default=None,
                        help="accept gl(m|0) as a purely even test system")
    common.add_argument("--pi-l", help="indices of the Levi simple roots, e.g. 0,2")
    common.add_argument("--lambda", dest="lam", help="highest weight")
    grp = common.add_mutually_exclusive_group()
    grp.add_argument("--mu", help="weight of the block")
    grp.add_argument("--eta", help="offset lambda - mu")
    common.add_argument("--depth", type=int, help=f"height truncation (default {DEFAULT_DEPTH})")
    common.add_argument("--samples", type=int, help="number of sampled weights (verify)")
    common.add_argument("--seed", type=int, help="random seed (verify)")
    common.add_argument("--format", choices=["json", "table"], help="output format")
    common.add_argument("--brute-check", action="store_true", default=None,
                        help="cross-check against the brute-force Gram matrices")
    common.add_argument("--corrupt-exponent", action="store_true", default=None,
                        help=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("describe", parents=[common], help="roots, simple roots, rho and classes")
    sub.add_parser("det", parents=[common], help="factored determinant formula")
    sub.add_parser("gram", parents=[common], help="Gram matrix and brute-force determinant")
    sub.add_parser("verify", parents=[common], help="compare formula and brute force")
    sub.add_parser("irreducible", parents=[common], help="irreducibility report")
    return p


class Job:
    """Options merged from the config file and the command line."""

    def __init__(self, args: argparse.Namespace):
        conf: dict = {}
        if args.config:
            try:
                with open(args.config) as fh:
                    conf = json.load(fh)
            except (OSError, json.JSONDecodeError) as exc:
                raise SpecError(f"cannot read config {args.config}: {exc}") from None
            if not isinstance(conf, dict):
                raise SpecError("config must be a JSON object")
        self.conf = conf
        self.args = args

    def get(self, key: str, arg: str | None = None):
        v = getattr(self.args, arg or key, None)
        if v is not None:
            return v
        if key in self.conf:
            return self.conf[key]
        return DEFAULTS.get(key)

    def datum(self) -> ParabolicDatum:
        alg = self.conf.get("algebra", {})
        if isinstance(alg, str):
            alg = {"family": alg}
        alg = dict(alg)
        for key in ("m", "n", "alpha", "positivity"):
            v = getattr(self.args, key, None)
            if v is not None:
                alg[key] = v
        if self.args.algebra is not None:
            alg["family"] = self.args.algebra
        if "family" not in alg:
            raise SpecError("no algebra given (use --algebra or a config file)")
        if alg["family"] == "d21a":
            alg.setdefault("m", 0)
            alg.setdefault("n", 0)
        if isinstance(alg.get("positivity"), str) and alg["positivity"] != "standard":
            alg["positivity"] = [str(x) for x in parse_weight(alg["positivity"])]
        spec, pos = parse_algebra_json(alg)
        rs = build_algebra(spec, pos, allow_purely_even=bool(self.get("allow_purely_even")))
        return ParabolicDatum(rs, parse_indices(self.get("pi_l")))

    def lam(self, pd: ParabolicDatum) -> tuple:
        v = self.get("lambda", "lam")
        if v is None:
            raise SpecError("--lambda is required")
        lam = parse_weight(v)
        if len(lam) != pd.rs.rank:
            raise SpecError(f"lambda needs {pd.rs.rank} coordinates {pd.rs.labels}")
        return lam

    def eta(self, pd: ParabolicDatum, lam: tuple | None) -> tuple:
        """lambda - mu, from --mu/--eta (command line first, then the config file)."""
        if self.args.mu is not None:
            mu, eta = self.args.mu, None
        elif self.args.eta is not None:
            mu, eta = None, self.args.eta
        else:
            mu, eta = self.conf.get("mu"), self.conf.get("eta")
            if mu is not None and eta is not None:
                raise SpecError("give either mu or eta, not both")
        if mu is not None:
            if lam is None:
                raise SpecError("this command takes an offset (--eta), not mu")
            out = w_sub(lam, parse_weight(mu))
        elif eta is not None:
            out = parse_weight(eta)
        else:
            out = (Fraction(0),) * pd.rs.rank
        if len(out) != pd.rs.rank:
            raise SpecError(f"weights need {pd.rs.rank} coordinates")
        return vec(out)

    def depth(self) -> int:
        d = int(self.get("depth"))
        if d < 0:
            raise SpecError("depth must be non-negative")
        return d


def _table(headers: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [[str(h) for h in headers]] + [[_cell(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _cell(c) -> str:
    if isinstance(c, list):
        return "(" + ", ".join(str(x) for x in c) + ")"
    if c is None:
        return "-"
    return str(c)


def cmd_describe(job: Job) -> tuple[dict, str]:
    pd = job.datum()
    rs = pd.rs
    out = rs.describe()
    out["levi"] = pd.describe()
    out["classes"] = [c.to_json() for c in delta_classes(pd)]
    text = [f"{out['algebra']}  coordinates {', '.join(rs.labels)}",
            _table(["root", "parity", "isotropic"],
                   [[r["root"], r["parity"], r["isotropic"]] for r in out["positive_roots"]]),
            "",
            _table(["index", "simple root", "parity"],
                   [[s["index"], s["root"], s["parity"]] for s in out["simple_roots"]]),
            "",
            f"rho = {_cell(out['rho'])}",
            f"Levi simple roots: {', '.join(_cell(a) for a in out['levi']['pi_l']) or 'none'}",
            f"nilradical: {', '.join(_cell(a) for a in out['levi']['delta_n'])}",
            f"classes: {'; '.join(' '.join(_cell(m) for m in c['members']) for c in out['classes'])}"]
    return out, "\n".join(text)


def cmd_det(job: Job) -> tuple[dict, str]:
    pd = job.datum()
    lam = job.lam(pd)
    eta = job.eta(pd, lam)
    mu = w_sub(lam, eta)
    res = eval_formula(pd, lam, mu)
    out = {"algebra": pd.rs.spec.label, "pi_l": pd.describe()["pi_l"], "formula": res.to_json()}
    if job.get("brute_check"):
        h = sum(pd.positive_coords(eta))
        if h > job.depth():
            raise DepthError(f"height {h} exceeds depth {job.depth()}")
        irrep = build_irrep_l(pd, lam, job.depth())
        b = brute_determinant(pd, irrep, mu)
        out["brute"] = str(b)
        out["ratio"] = None if res.value == 0 else str(b / res.value)
    text = _table(["root", "kind", "r", "exponent", "value"],
                  [[fmt_weight(f.root.weight), f.kind, f.r, f.exponent, f.value]
                   for f in res.factors])
    text += f"\n\nproduct = {res.value}" + ("  (vanishes)" if res.is_zero else "")
    if "brute" in out:
        text += f"\nbrute = {out['brute']}  ratio = {out['ratio']}"
    return out, text


def cmd_gram(job: Job) -> tuple[dict, str]:
    pd = job.datum()
    lam = job.lam(pd)
    mu = w_sub(lam, job.eta(pd, lam))
    irrep = build_irrep_l(pd, lam, job.depth())
    block = gram_block(pd, irrep, mu)
    raw = det(block.matrix)
    value = raw * normalization(pd, block)
    out = {"algebra": pd.rs.spec.label, "lambda": fmt_weight(lam), "block": block.to_json(),
           "raw_det": str(raw), "det": str(value)}
    if block.size == 0:
        out["note"] = "empty block"
    rows = block.matrix.to_rows()
    text = "\n".join("  ".join(str(x) for x in r) for r in rows) or "(empty block)"
    text += f"\n\ndet = {value}"
    return out, text


def cmd_verify(job: Job) -> tuple[dict, str]:
    pd = job.datum()
    eta = job.eta(pd, None)
    rep = verify_offset(pd, eta, samples=int(job.get("samples")), seed=int(job.get("seed")),
                        corrupt=bool(job.get("corrupt_exponent")))
    out = rep.to_json()
    text = _table(["lambda", "brute", "formula", "ratio"],
                  [[s["lambda"], s["brute"], s["formula"], s["ratio"]] for s in out["samples"]])
    text += f"\n\n{'PASS' if rep.passed else 'FAIL'}  c = {out['constant_c']}"
    if rep.reason:
        text += f"  ({rep.reason})"
    return out, text


def cmd_irreducible(job: Job) -> tuple[dict, str]:
    pd = job.datum()
    lam = job.lam(pd)
    depth = job.depth()
    rep = irreducibility_report(pd, lam, depth,
                                brute_depth=depth if job.get("brute_check") else None)
    out = rep.to_json()
    text = [f"verdict: {rep.verdict}",
            f"Psi non-iso: {', '.join(_cell(x['root']) + ' n=' + str(x['n']) for x in out['psi']['noniso']) or 'empty'}",
            f"Psi iso: {', '.join(_cell(x) for x in out['psi']['iso']) or 'empty'}",
            f"M: {out['M']}  M+: {out['M_plus']}  M++: {out['M_plus_plus']}"]
    if rep.brute_check is not None:
        text.append(f"brute check to depth {depth}: agrees = {rep.brute_check['agrees']}")
    return out, "\n".join(text)


COMMANDS = {"describe": cmd_describe, "det": cmd_det, "gram": cmd_gram,
            "verify": cmd_verify, "irreducible": cmd_irreducible}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = Job(args)
        out, text = COMMANDS[args.command](job)
    except SupervermaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    if job.get("format") == "table":
        print(text)
    else:
        print(json.dumps(out, indent=2))
    if args.command == "verify" and not out["pass"]:
        return EXIT_VERIFY_FAIL
    if args.command == "irreducible" and out["brute_check"] and not out["brute_check"]["agrees"]:
        return ConsistencyError.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
