"""Command-line front end.

Usage::

    fundform <command> [problem] [--q N] [--max-q N] [--max-terms N] [--seed N] [--json PATH]

``problem`` is a declaration ``m=<int> n=<int> k=<int> L = <expr>``, a path to
a file holding one, or the name of a bundled gallery entry.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import warnings
from dataclasses import dataclass
from importlib import resources
from typing import Callable, Dict, List, Optional

from . import identities, operator_checks, variational as var
from .forms import ScalarForm, form_to_json, format_form
from .multiindex import enumerate_upto
from .parser import ExprSyntaxError, IndexOutOfRange, parse_expr
from .random_forms import random_case, random_vv_form
from .symbolic import RatExpr, max_order
from .vvforms import VectorValuedForm

COMMANDS = (
    "check-homogeneous",
    "hilbert",
    "euler-lagrange",
    "theta",
    "verify-recovery",
    "verify-closure",
    "verify-identities",
    "verify-lemmas",
)

_HEADER = re.compile(
    r"\s*m\s*=\s*(?P<m>\d+)\s+n\s*=\s*(?P<n>\d+)\s+k\s*=\s*(?P<k>\d+)\s+L\s*=\s*",
)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class ProblemDecl:
    m: int
    n: int
    k: int
    lagrangian: str
    L: RatExpr

    def to_lagrangian(self) -> var.Lagrangian:
        return var.Lagrangian(self.m, self.n, self.k, self.L)

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "k": self.k, "L": str(self.L)}


def _strip_comments(text: str) -> str:
    # blank out comments so error columns still line up
    return re.sub(r"#[^\n]*", lambda mt: " " * len(mt.group()), text)


def parse_problem(text: str) -> ProblemDecl:
    clean = _strip_comments(text)
    mt = _HEADER.match(clean)
    if mt is None:
        pos = len(clean) - len(clean.lstrip())
        raise ExprSyntaxError("expected 'm=<int> n=<int> k=<int> L = <expr>'", text, pos)
    m, n, k = (int(mt.group(g)) for g in "mnk")
    if m < 1 or n < 1 or k < 1:
        raise IndexOutOfRange("m, n and k must be positive")
    start = mt.end()
    body = clean[start:]
    try:
        L = parse_expr(body, m=m, n=n)
    except ExprSyntaxError as exc:
        raise ExprSyntaxError(str(exc).rsplit(" at line", 1)[0], text, start + exc.pos) from None
    if max_order(L) > k:
        raise IndexOutOfRange(f"expression has order {max_order(L)} > declared k={k}")
    return ProblemDecl(m, n, k, body.strip(), L)


def gallery() -> Dict[str, str]:
    out = {}
    for entry in sorted(resources.files("fundform").joinpath("gallery").iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".lag"):
            out[entry.name[:-4]] = entry.read_text()
    return out


def load_problem(source: str) -> ProblemDecl:
    entries = gallery()
    if source in entries:
        return parse_problem(entries[source])
    if "=" not in source:
        try:
            with open(source) as fh:
                return parse_problem(fh.read())
        except FileNotFoundError:
            raise UsageError(f"no such file or gallery entry: {source}") from None
    return parse_problem(source)


# -- reporting -----------------------------------------------------------------

class Report:
    def __init__(self, command: str, problem: Optional[ProblemDecl], max_terms: int):
        self.command = command
        self.problem = problem
        self.max_terms = max_terms
        self.results: List[dict] = []
        self.lines: List[str] = []
        self.first_failure: Optional[str] = None

    @property
    def passed(self) -> bool:
        return all(r.get("pass", True) for r in self.results)

    def text(self, s: str) -> None:
        self.lines.append(s)

    def add(self, name: str, passed: Optional[bool] = None, value=None, **extra) -> None:
        entry = {"name": name}
        entry.update(extra)
        if value is not None:
            entry["value"] = _jsonable(value)
        if passed is not None:
            entry["pass"] = bool(passed)
        self.results.append(entry)
        shown = f" = {_text(value, self.max_terms)}" if value is not None else ""
        mark = "" if passed is None else ("  [ok]" if passed else "  [FAIL]")
        self.lines.append(f"{name}{shown}{mark}")
        if passed is False and self.first_failure is None:
            self.first_failure = f"{name}: {_text(value, None) if value is not None else 'failed'}"

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "problem": self.problem.to_json() if self.problem else None,
            "results": self.results,
            "pass": self.passed,
        }


def _text(value, max_terms: Optional[int]) -> str:
    if isinstance(value, ScalarForm):
        return format_form(value, max_terms)
    if isinstance(value, VectorValuedForm):
        if value.is_zero():
            return "0"
        parts = []
        for key, w in value.sorted_components():
            dt = " ∧ ".join(f"dt{i}" for i in key) or "1"
            parts.append(f"[{format_form(w, max_terms)}] ⊗ {dt}")
        return " + ".join(parts)
    if isinstance(value, RatExpr):
        s = str(value)
        if max_terms is not None and value.size() > max_terms:
            return s[:200] + f"... ({value.size()} terms, see --json)"
        return s
    return str(value)


def _jsonable(value):
    if isinstance(value, ScalarForm):
        return {"degree": value.degree, "terms": form_to_json(value)}
    if isinstance(value, VectorValuedForm):
        return value.to_json()
    if isinstance(value, (RatExpr, int)) or value is None or isinstance(value, bool):
        return str(value) if isinstance(value, RatExpr) else value
    return str(value)


# -- commands ------------------------------------------------------------------

def cmd_check_homogeneous(decl: ProblemDecl, args, rep: Report) -> None:
    report = var.check_homogeneous(decl.to_lagrangian())
    for I, j, res in report.violations:
        rep.add(f"residual d^{I!r}_{j}", False, res, I=repr(I), j=j)
    rep.add("homogeneous", report.is_homogeneous, report.is_homogeneous)


def cmd_hilbert(decl: ProblemDecl, args, rep: Report) -> None:
    lag = decl.to_lagrangian()
    thetas = var.hilbert_forms(lag)
    for i, th in enumerate(thetas, start=1):
        rep.add(f"theta^{i}", None, th)
    via_p = var.hilbert_from_theta1(var.theta(lag, 1))
    rep.add("P d Theta_0 matches display", all(a == b for a, b in zip(thetas, via_p)))


def cmd_euler_lagrange(decl: ProblemDecl, args, rep: Report) -> None:
    lag = decl.to_lagrangian()
    coord = var.euler_lagrange_coordinate(lag)
    rep.add("epsilon (coordinate)", None, coord)
    if var.check_homogeneous(lag).is_homogeneous:
        intrinsic = var.euler_lagrange_intrinsic(lag)
        rep.add("intrinsic route agrees", intrinsic == coord, coord - intrinsic if intrinsic != coord else None)
    else:
        rep.text("(not homogeneous; intrinsic route skipped)")
    rep.add("null", None, coord.is_zero())


def cmd_theta(decl: ProblemDecl, args, rep: Report) -> None:
    q = 1 if args.q is None else args.q
    if not 0 <= q <= decl.m:
        raise UsageError(f"--q must satisfy 0 <= q <= m={decl.m}")
    rep.add(f"Theta_{q}", None, var.theta(decl.to_lagrangian(), q))


def cmd_verify_recovery(decl: ProblemDecl, args, rep: Report) -> None:
    lag = decl.to_lagrangian()
    if args.q is not None:
        if not 0 <= args.q <= decl.m - 1:
            raise UsageError(f"--q must satisfy 0 <= q <= m-1={decl.m - 1}")
        qs = [args.q]
    else:
        qs = list(range(min(decl.m, 2)))
    for q in qs:
        res = var.verify_recovery(lag, q)
        rep.add(f"i_T Theta_{q + 1} = {decl.m - q} Theta_{q}", res.passed, None if res.passed else res.residual)


def cmd_verify_closure(decl: ProblemDecl, args, rep: Report) -> None:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        c = var.verify_closure(decl.to_lagrangian())
    for w in caught:
        rep.text(f"warning: {w.message}")
    rep.add("is_null", None, c.is_null)
    rep.add("dTheta_m_zero", None, c.dTheta_m_zero)
    rep.add("closure equivalence" + ("" if c.asserted else " (not asserted)"), c.passed)


def cmd_verify_lemmas(decl: ProblemDecl, args, rep: Report) -> None:
    lag = decl.to_lagrangian()
    m = decl.m
    thetas = var.hilbert_forms(lag)
    res = var.check_hilbert_contractions(lag, thetas)
    rep.add("Hilbert form contractions", res.passed, None if res.passed else res.residual)
    ok = True
    first = None
    for I in enumerate_upto(m, 2):
        if I.length == 0:
            continue
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                r = var.check_hilbert_derivative(lag, I, i, j, thetas)
                if not r.passed and first is None:
                    first = r.residual
                ok &= r.passed
    rep.add("Hilbert form derivative formula (|I| <= 2)", ok, first)
    for q in range(m):
        r = var.check_source_decomposition(lag, q)
        rep.add(f"E_q = (-1)^q (d Theta_q - d_T Theta_q+1), q={q}", r.passed, None if r.passed else r.residual)
    if m >= 2:
        r = var.check_source_contraction(lag, 0)
        rep.add("i_T E_1 = m E_0", r.passed, None if r.passed else r.residual)
        r = var.check_hilbert_symmetry(lag, thetas)
        rep.add("S^i theta^j = S^j theta^i", r.passed, None if r.passed else r.residual)
    if decl.k == 1:
        r = var.check_first_order(lag)
        rep.add("first-order formula", r.passed, None if r.passed else r.residual)
    if args.seed is not None:
        _random_operator_checks(args.seed, rep)


def _random_operator_checks(seed: int, rep: Report, cases: int = 20) -> None:
    counts = {"commutators": 0, "S^J D_p expansion": 0, "i_k D_p expansion": 0, "bicomplex": 0}
    bad: Dict[str, str] = {}
    for offset in range(cases):
        rng, m, n, order, degree, w = random_case(seed * 1000 + offset)
        groups = {
            "commutators": operator_checks.commutators(w, m),
            "S^J D_p expansion": operator_checks.s_D_expansion(w, m, slot_power=degree >= 2),
            "bicomplex": operator_checks.bicomplex(
                random_vv_form(rng, m, n, order, rng.randint(0, 2), rng.randint(0, m))
            ),
        }
        if degree >= 1:
            groups["i_k D_p expansion"] = operator_checks.contraction_D_expansion(w, m)
        for name, residuals in groups.items():
            counts[name] += 1
            fails = operator_checks.failures(residuals)
            if fails and name not in bad:
                bad[name] = f"{fails[0][0]}: {fails[0][1]}"
    for name, n in counts.items():
        rep.add(f"random {name} ({n} forms, seed {seed})", name not in bad, bad.get(name))


def cmd_verify_identities(decl, args, rep: Report) -> None:
    max_q = 12 if args.max_q is None else args.max_q
    sweeps = identities.all_sweeps(max_q=max_q, max_b=min(max_q, 10))
    for name, reports in sweeps.items():
        n_fail = sum(not r.passed for r in reports)
        rep.text(f"-- {name}: {len(reports) - n_fail}/{len(reports)} pass")
        shown = 0
        for r in reports:
            rep.results.append(r.to_json())
            if not r.passed and rep.first_failure is None:
                rep.first_failure = r.row()
            limit = args.max_terms if name != "H" else None
            if limit is None or shown < limit or not r.passed:
                rep.lines.append(r.row())
                shown += 1
        if shown < len(reports):
            rep.lines.append(f"   ... {len(reports) - shown} more rows (see --json)")


DISPATCH: Dict[str, Callable] = {
    "check-homogeneous": cmd_check_homogeneous,
    "hilbert": cmd_hilbert,
    "euler-lagrange": cmd_euler_lagrange,
    "theta": cmd_theta,
    "verify-recovery": cmd_verify_recovery,
    "verify-closure": cmd_verify_closure,
    "verify-identities": cmd_verify_identities,
    "verify-lemmas": cmd_verify_lemmas,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fundform", description="Exact variational calculus of homogeneous Lagrangians.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("problem", nargs="?", help="declaration text, file path, or gallery name")
    p.add_argument("--json", metavar="PATH", help="write the full report as JSON ('-' for stdout)")
    p.add_argument("--q", type=int)
    p.add_argument("--max-q", type=int)
    p.add_argument("--max-terms", type=int, default=200)
    p.add_argument("--seed", type=int)
    return p


def run_command(cmd: str, decl: Optional[ProblemDecl], args) -> Report:
    rep = Report(cmd, decl, args.max_terms)
    DISPATCH[cmd](decl, args, rep)
    return rep


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    decl = None
    try:
        if args.command != "verify-identities":
            if args.problem is None:
                raise UsageError(f"{args.command} needs a problem declaration")
            decl = load_problem(args.problem)
        rep = run_command(args.command, decl, args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"fundform: error: {exc}", file=sys.stderr)
        return 2
    except (ExprSyntaxError, IndexOutOfRange) as exc:
        print(f"fundform: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except var.NotHomogeneous as exc:
        print(f"fundform: {exc}", file=sys.stderr)
        return 1

    if args.json == "-":
        json.dump(rep.to_json(), sys.stdout, indent=2)
        print()
    else:
        if decl is not None:
            print(f"problem: m={decl.m} n={decl.n} k={decl.k} L = {decl.L}")
        for line in rep.lines:
            print(line)
        if args.json:
            with open(args.json, "w") as fh:
                json.dump(rep.to_json(), fh, indent=2)
    if not rep.passed:
        sys.stdout.flush()
        print(f"first failure: {rep.first_failure}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
