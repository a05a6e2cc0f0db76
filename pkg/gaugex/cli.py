"""
Command-line front end: ``gaugex <command> ...``.

Exit codes are 0 when everything passes, 1 when a check or defect fails
and 2 for usage, parse and input errors. With ``--json`` every result is
printed as one JSON object per line, exact rationals as ``"p/q"`` strings.
"""

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional

import numpy as np
import pandas as pd

from gaugex.analysis.classify import Analyzer, classify
from gaugex.banach.lp import simplex_min_norm
from gaugex.banach.norms import NormedSpace, eps_iso_check, op_norm
from gaugex.banach.perturbation import certify_delta, certify_trials
from gaugex.core.errors import GaugexError
from gaugex.core.extended import format_value
from gaugex.core.report import CheckReport
from gaugex.embound.checks import check_comparison, check_embound
from gaugex.embound.transform import as_embounded, embound, recover
from gaugex.io.matrix_file import load_rows
from gaugex.io.structure_file import dump_structure, load_signature, load_structure
from gaugex.runner.config import JSON, RunConfig
from gaugex.runner.selftest import SUITES, run_selftest
from gaugex.structure.evaluate import eval_formula
from gaugex.structure.gauged import GaugedStructure, validate
from gaugex.structure.graph import graph_transform
from gaugex.structure.macros import build_down, build_up, dyadic_window, inf_window, sup_window
from gaugex.structure.prenex import prenex, quantifier_prefix
from gaugex.structure.ultraproduct import los_check, principal_ultraproduct
from gaugex.syntax.formula import formula_to_sexpr
from gaugex.syntax.parse import parse_formula, parse_rational
from gaugex.syntax.signature import Signature
from gaugex.theories.theory import SHIPPED, Theory, check_theory, load_shipped_theory, load_theory_file

logger = logging.getLogger("gaugex")

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LEVEL_ENV = "GAUGEX_LOG_LEVEL"
QUIET_ENV = "GAUGEX_QUIET"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


# ----------------------------------------------------------------------
# Output
# ----------------------------------------------------------------------


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return format_value(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_jsonable(v) for v in items]
    if isinstance(value, np.generic):
        return value.item()
    return value


class Output:
    """Writes human text or JSON lines to ``stream``."""

    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def record(self, kind: str, data: Dict[str, Any], human: Optional[str] = None) -> None:
        if self.fmt == JSON:
            print(json.dumps(_jsonable(dict(record=kind, **data))), file=self.stream)
        else:
            print(human if human is not None else _human(data), file=self.stream)

    def frame(self, kind: str, frame: pd.DataFrame, title: str = "") -> None:
        if self.fmt == JSON:
            for row in frame.to_dict(orient="records"):
                self.record(kind, row)
        else:
            if title:
                print(title, file=self.stream)
            if not frame.empty:
                print(frame.to_string(index=False), file=self.stream)

    def report(self, report: CheckReport) -> None:
        self.frame("violation", report.to_frame(), str(report))
        self.record(
            "summary",
            {
                "subject": report.subject,
                "passed": report.passed,
                "violations": len(report.violations),
                "checked": report.checked,
            },
            human=f"checked: {report.checked}" if report.checked else "",
        )


def _human(data: Dict[str, Any]) -> str:
    return "\n".join(f"{k}: {format_value(v) if isinstance(v, Fraction) else v}" for k, v in data.items())


# ----------------------------------------------------------------------
# Input helpers
# ----------------------------------------------------------------------


def _read_text(path: Optional[str], inline: Optional[str], what: str) -> str:
    if inline is not None:
        return inline
    if path is None:
        raise GaugexError(f"give a {what} with --{what} FILE or --expr TEXT")
    p = Path(path).expanduser()
    if not p.exists():
        raise FileNotFoundError(f"{what.capitalize()} file not found: {p}")
    return p.read_text()


def _signature(args) -> Signature:
    if getattr(args, "signature", None):
        return load_signature(args.signature)
    return Signature()


def _formula(args, sig: Signature):
    return parse_formula(_read_text(args.formula, args.expr, "formula"), sig)


def _structure(path: str, cfg: RunConfig, sig_path: Optional[str] = None) -> GaugedStructure:
    sig = load_signature(sig_path) if sig_path else None
    M = load_structure(path, sig)
    cfg.caps.check_points(M.size)
    return M


def _assignment(pairs: Optional[List[str]]) -> Dict[str, str]:
    """``x=a,y=b`` or ``x=a y=b`` as a variable to point mapping."""
    out: Dict[str, str] = {}
    items = [part for chunk in pairs or [] for part in chunk.split(",") if part.strip()]
    for item in items:
        if "=" not in item:
            raise GaugexError(f"assignment must look like x=point, got '{item}'")
        var, point = item.split("=", 1)
        out[var.strip()] = point.strip()
    return out


def _write_or_print(text: str, cfg: RunConfig, out: Output, kind: str) -> None:
    if cfg.output is not None:
        cfg.output.write_text(text)
        out.record(kind, {"written": str(cfg.output)}, human=f"wrote {cfg.output}")
    elif out.fmt == JSON:
        out.record(kind, {"text": text})
    else:
        print(text, end="" if text.endswith("\n") else "\n", file=out.stream)


def _relational(M: GaugedStructure) -> GaugedStructure:
    if M.signature.is_relational:
        return M
    logger.info("structure has function symbols; applying the graph transform")
    return graph_transform(M)


# ----------------------------------------------------------------------
# Handlers
# ----------------------------------------------------------------------


def cmd_analyze(args, cfg: RunConfig, out: Output) -> int:
    sig = _signature(args)
    phi = _formula(args, sig)
    result = classify(phi, sig)
    out.record(
        "analysis",
        {
            "bounded": result.bounded,
            "bound": result.bound,
            "free_vars": result.free_vars,
            "eventually_constant": result.eventually_constant,
            "thresholds": result.thresholds,
            "modulus": result.modulus.to_sexpr() if result.modulus is not None else None,
        },
    )
    return EXIT_OK


def cmd_eval(args, cfg: RunConfig, out: Output) -> int:
    M = _structure(args.structure, cfg, args.signature)
    phi = _formula(args, M.signature)
    sigma = _assignment(args.assign)
    value = eval_formula(M, phi, sigma)
    record = {"formula": formula_to_sexpr(phi), "assignment": sigma, "value": value}
    out.record("value", record, human=format_value(value))
    return EXIT_OK


def cmd_validate(args, cfg: RunConfig, out: Output) -> int:
    M = _structure(args.structure, cfg, args.signature)
    report = validate(M, check_moduli=not args.no_moduli, limit=args.limit)
    out.report(report)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_prenex(args, cfg: RunConfig, out: Output) -> int:
    phi = _formula(args, _signature(args))
    psi = prenex(phi)
    prefix = " ".join(f"{q} {x}" for q, x in quantifier_prefix(psi))
    out.record("prenex", {"formula": formula_to_sexpr(psi), "prefix": prefix}, human=formula_to_sexpr(psi))
    return EXIT_OK


def cmd_expand_macro(args, cfg: RunConfig, out: Output) -> int:
    phi = _formula(args, _signature(args))
    r, r_prime = parse_rational(args.r), parse_rational(args.r_prime)
    m, s = dyadic_window(r, r_prime)
    an = Analyzer()
    build: Dict[str, Callable] = {
        "down": lambda: build_down(phi, args.var, r, r_prime, an),
        "up": lambda: build_up(phi, args.var, r, r_prime, an),
        "sup": lambda: sup_window(phi, args.var, r, r_prime),
        "inf": lambda: inf_window(phi, args.var, r, r_prime),
    }
    psi = build[args.kind]()
    text = formula_to_sexpr(psi)
    out.record("macro", {"kind": args.kind, "m": m, "s": s, "formula": text}, human=text)
    return EXIT_OK


def cmd_embound(args, cfg: RunConfig, out: Output) -> int:
    M = _relational(_structure(args.structure, cfg, args.signature))
    E = embound(M, args.infinity)
    _write_or_print(dump_structure(E.structure), cfg, out, "embounded")
    return EXIT_OK


def cmd_recover(args, cfg: RunConfig, out: Output) -> int:
    N = _structure(args.structure, cfg, args.signature)
    M = recover(as_embounded(N, args.infinity))
    _write_or_print(dump_structure(M), cfg, out, "recovered")
    return EXIT_OK


def cmd_check_embound(args, cfg: RunConfig, out: Output) -> int:
    M = _relational(_structure(args.structure, cfg, args.signature))
    report = check_comparison(M) if args.comparison_only else check_embound(M)
    out.report(report)
    return EXIT_OK if report.passed else EXIT_FAIL


def _theory(name_or_path: str, sig: Signature) -> Theory:
    if name_or_path in SHIPPED:
        return load_shipped_theory(name_or_path)
    stem = Path(name_or_path).name.rsplit(".", 1)[0]
    if not Path(name_or_path).expanduser().exists() and stem in SHIPPED:
        return load_shipped_theory(stem)
    return load_theory_file(name_or_path, sig)


def _select_groups(T: Theory, groups: Optional[List[str]]) -> Theory:
    if not groups:
        return T
    unknown = set(groups) - set(T.groups)
    if unknown:
        raise GaugexError(f"theory has no group(s) {sorted(unknown)}; available: {T.groups}")
    return Theory(
        T.signature,
        [c for c in T.conditions if c.group in groups],
        [s for s in T.schemes if s.group in groups],
    )


def cmd_check_theory(args, cfg: RunConfig, out: Output) -> int:
    M = _structure(args.structure, cfg, args.signature)
    T = _select_groups(_theory(args.theory, M.signature), args.group)
    report = check_theory(M, T, cfg.eps, cfg.n)
    summary = f"{len(report.rows)} instances, max defect {format_value(report.max_defect)}"
    out.frame("defect", report.to_frame(), summary)
    for label, eps, n in report.skipped:
        out.record("skipped", {"label": label, "eps": eps, "n": n}, human=f"skipped {label} at eps={format_value(eps)}")
    out.record(
        "summary",
        {"passed": report.passed, "max_defect": report.max_defect},
        human="PASS" if report.passed else "FAIL",
    )
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_ultraproduct(args, cfg: RunConfig, out: Output) -> int:
    Ms = [_structure(p, cfg, args.signature) for p in args.structures]
    U = principal_ultraproduct(Ms, args.index)
    status = EXIT_OK
    if args.check:
        sig = Ms[args.index].signature
        formulas = [parse_formula(_read_text(p, None, "formula"), sig) for p in args.check]
        sigma = _assignment(args.assign)
        report = los_check(Ms, args.index, formulas, [sigma])
        out.report(report)
        status = EXIT_OK if report.passed else EXIT_FAIL
    _write_or_print(dump_structure(U), cfg, out, "ultraproduct")
    return status


def cmd_bm_certify(args, cfg: RunConfig, out: Output) -> int:
    space = NormedSpace.parse(args.space)
    B = np.asarray(load_rows(args.basis), dtype=float)
    banach = cfg.section("banach")
    cap = cfg.caps.simplex_vectors
    delta = certify_delta(B, args.eps, space, cap, cfg.tol)
    s = simplex_min_norm(B, space, cap, cfg.tol)
    out.record("delta", {"space": str(space), "eps": args.eps, "simplex_min": s, "delta": delta})
    trials = int(args.trials if args.trials is not None else banach.get("trials", 1000))
    if trials <= 0:
        return EXIT_OK
    rng = np.random.default_rng(int(args.seed if args.seed is not None else banach.get("seed", 0)))
    report = certify_trials(B, args.eps, space, trials, rng, cfg.tol, cap)
    out.record("certification", dict(report.as_dict(), passed=report.passed))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_bm_check(args, cfg: RunConfig, out: Output) -> int:
    A = load_rows(args.matrix)
    space = NormedSpace.parse(args.space) if args.space else NormedSpace(A.shape[0])
    status = EXIT_OK
    exact = op_norm(A, space)
    out.record("op_norm", {"space": str(space), "op_norm": exact})
    for eps in args.eps or ["0"]:
        check = eps_iso_check(A, Fraction(eps), space, cfg.tol)
        out.record(
            "iso",
            {
                "eps": eps,
                "ok": check.ok,
                "norm": check.norm,
                "inverse_norm": check.inverse_norm,
                "upper_margin": check.upper_margin,
                "lower_margin": check.lower_margin,
                "tol": check.tol,
            },
        )
        if not check.ok:
            status = EXIT_FAIL
    return status


def cmd_selftest(args, cfg: RunConfig, out: Output) -> int:
    rec = run_selftest(cfg.settings, args.suite, cfg.caps)
    out.frame("suite", rec.summary(), "selftest")
    for name, stats in rec.suites.items():
        for detail in stats.failures[:3]:
            out.record("failure", {"suite": name, "detail": detail}, human=f"[{name}] {detail}")
    out.record("summary", {"passed": rec.passed, **rec.metrics}, human="PASS" if rec.passed else "FAIL")
    return EXIT_OK if rec.passed else EXIT_FAIL


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", type=str, default=None, help="YAML file merged over the shipped defaults")
    p.add_argument("--json", action="store_true", help="One JSON object per result line")
    p.add_argument("-o", "--output", type=str, default=None, help="Write the resulting structure here")
    p.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    p.add_argument("-q", "--quiet", action="store_true", help="Warnings and errors only")
    return p


def _formula_args(p: argparse.ArgumentParser, signature: bool = True) -> None:
    p.add_argument("--formula", type=str, default=None, help="File holding one formula")
    p.add_argument("--expr", type=str, default=None, help="Formula text")
    if signature:
        p.add_argument("--signature", type=str, default=None, help="Signature file")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="gaugex", description="Unbounded continuous logic over gauged structures")
    sub = parser.add_subparsers(dest="cmd", required=True)

    # formulas ----------------------------------------------------------------
    p = sub.add_parser("analyze", parents=[common], help="Boundedness, thresholds and modulus of a formula")
    _formula_args(p)
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser("eval", parents=[common], help="Evaluate a formula in a structure")
    p.add_argument("structure", type=str)
    _formula_args(p)
    p.add_argument("--assign", nargs="*", metavar="VAR=POINT", help="Variable assignment")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("prenex", parents=[common], help="Prenex form of a formula")
    _formula_args(p)
    p.set_defaults(handler=cmd_prenex)

    p = sub.add_parser("expand-macro", parents=[common], help="Expand a restricted quantifier")
    _formula_args(p)
    p.add_argument("--var", type=str, required=True)
    p.add_argument("--r", type=str, required=True, help="Inner radius")
    p.add_argument("--r-prime", type=str, required=True, help="Outer radius")
    p.add_argument("--kind", choices=["down", "up", "sup", "inf"], default="sup")
    p.set_defaults(handler=cmd_expand_macro)

    # structures --------------------------------------------------------------
    p = sub.add_parser("validate", parents=[common], help="Metric, gauge and modulus axioms of a structure")
    p.add_argument("structure", type=str)
    p.add_argument("--signature", type=str, default=None)
    p.add_argument("--no-moduli", action="store_true", help="Skip the modulus clauses")
    p.add_argument("--limit", type=int, default=5, help="Violations kept per modulus check")
    p.set_defaults(handler=cmd_validate)

    for name, handler, text in (
        ("embound", cmd_embound, "Embounded structure with a point at infinity"),
        ("recover", cmd_recover, "Original structure from an embounded one"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("structure", type=str)
        p.add_argument("out", type=str, nargs="?", default=None, help="Output file, same as -o")
        p.add_argument("--signature", type=str, default=None)
        p.add_argument("--infinity", type=str, default=None, help="Name of the point at infinity")
        p.set_defaults(handler=handler)

    p = sub.add_parser("check-embound", parents=[common], help="Every emboundment property")
    p.add_argument("structure", type=str)
    p.add_argument("--signature", type=str, default=None)
    p.add_argument("--comparison-only", action="store_true")
    p.set_defaults(handler=cmd_check_embound)

    p = sub.add_parser("check-theory", parents=[common], help="Defect table of a theory in a structure")
    p.add_argument("structure", type=str)
    p.add_argument("theory", type=str, help=f"Theory file or one of {sorted(SHIPPED)}")
    p.add_argument("--signature", type=str, default=None)
    p.add_argument("--eps", type=str, default=None, help="Comma separated epsilons, e.g. 1,1/2")
    p.add_argument("--n", type=str, default=None, help="Comma separated radii for n-schemes")
    p.add_argument("--group", nargs="*", default=None, help="Only these groups")
    p.set_defaults(handler=cmd_check_theory)

    p = sub.add_parser("ultraproduct-principal", parents=[common], help="Principal ultraproduct of structures")
    p.add_argument("structures", nargs="+", type=str)
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--signature", type=str, default=None)
    p.add_argument("--check", nargs="*", default=None, metavar="FORMULA_FILE", help="Formulas to compare")
    p.add_argument("--assign", nargs="*", metavar="VAR=POINT")
    p.set_defaults(handler=cmd_ultraproduct)

    # Banach-Mazur ------------------------------------------------------------
    p = sub.add_parser("bm-certify", parents=[common], help="Perturbation radius of a basis")
    p.add_argument("--space", type=str, required=True, help="e.g. l1:3")
    p.add_argument("--basis", type=str, required=True, help="One vector per row")
    p.add_argument("--eps", type=str, required=True)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(handler=cmd_bm_certify)

    p = sub.add_parser("bm-check", parents=[common], help="Operator norm and eps-isomorphism check")
    p.add_argument("--matrix", type=str, required=True)
    p.add_argument("--space", type=str, default=None, help="Default l1 of the matrix size")
    p.add_argument("--eps", nargs="*", default=None)
    p.set_defaults(handler=cmd_bm_check)

    p = sub.add_parser("selftest", parents=[common], help="Run the property suites")
    p.add_argument("--suite", nargs="*", choices=SUITES, default=None)
    p.set_defaults(handler=cmd_selftest)
    return parser


# ----------------------------------------------------------------------
# Entry point
# ----------------------------------------------------------------------


def configure_logging(verbose: bool = False, quiet: bool = False, environ: Optional[Dict[str, str]] = None) -> int:
    environ = os.environ if environ is None else environ
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    env_level = environ.get(LEVEL_ENV, "").upper()
    if env_level in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        level = getattr(logging, env_level)
    elif environ.get(QUIET_ENV, "").lower() in ("true", "1", "yes"):
        level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT)
    logging.getLogger().setLevel(level)
    return level


def _inputs(args) -> Iterable[str]:
    for key in ("structure", "basis", "matrix"):
        value = getattr(args, key, None)
        if value:
            yield value
    yield from getattr(args, "structures", None) or []


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    configure_logging(args.verbose, args.quiet)
    try:
        cfg = RunConfig.build(
            args.cmd,
            inputs=list(_inputs(args)),
            output=args.output or getattr(args, "out", None),
            config_file=args.config,
            eps=getattr(args, "eps", None) if args.cmd == "check-theory" else None,
            n=getattr(args, "n", None),
            fmt=JSON if args.json else None,
        )
        return args.handler(args, cfg, Output(cfg.fmt))
    except (GaugexError, FileNotFoundError, ValueError) as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
