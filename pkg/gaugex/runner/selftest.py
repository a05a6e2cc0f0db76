"""
Property suites run by ``gaugex selftest``.

Each suite draws its inputs from :mod:`gaugex.runner.corpus` with a fixed
seed and records one case per comparison in a :class:`RunRecorder`. Sizes
come from the ``selftest`` section of the run configuration.
"""

import itertools
import logging
import math
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from gaugex.analysis.classify import Analyzer, bound, classify, limit_formula
from gaugex.analysis.synthesis import synthesize_modulus
from gaugex.banach.lp import simplex_min_norm, simplex_min_norm_grid
from gaugex.banach.norms import KINDS, NormedSpace, eps_iso_check, op_norm
from gaugex.banach.perturbation import certify_trials
from gaugex.core.extended import format_value
from gaugex.core.modulus import respects_check, respects_check_grid
from gaugex.embound.checks import check_embound, theta_subadditivity_grid
from gaugex.runner import corpus
from gaugex.runner.config import Caps
from gaugex.runner.telemetry import RunRecorder
from gaugex.structure.evaluate import Evaluator, evaluation_table
from gaugex.structure.gauged import GaugedStructure, validate
from gaugex.structure.graph import graph_transform
from gaugex.structure.macros import build_down, build_up, inf_window, sup_window
from gaugex.structure.prenex import is_prenex, prenex
from gaugex.structure.ultraproduct import los_check
from gaugex.syntax.formula import Formula, formula_to_sexpr, free_vars
from gaugex.theories.models import measure_algebra, sampled_normed_structure
from gaugex.theories.theory import Theory, check_theory, load_shipped_theory, load_theory, matrix_sup

logger = logging.getLogger(__name__)

SUITES = (
    "bound",
    "constancy",
    "modulus",
    "window",
    "prenex",
    "embound",
    "theories",
    "graph",
    "los",
    "banach",
)

UNIVERSAL_GROUPS = ("lattice", "modularity", "zero", "metric")
BANACH_CORE = ("norm", "addition", "scaling")

WINDOW_RADII = (Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(5, 2), Fraction(3))


def _short(phi: Formula, width: int = 120) -> str:
    text = formula_to_sexpr(phi)
    return text if len(text) <= width else text[: width - 3] + "..."


class SelfTest:
    """The acceptance corpus.

    Args:
        settings: The ``selftest`` configuration section.
        banach: The ``banach`` configuration section.
        recorder: Receives one suite per property.
        caps: Size caps for the generated models.
    """

    def __init__(
        self,
        settings: Dict[str, Any],
        banach: Optional[Dict[str, Any]] = None,
        recorder: Optional[RunRecorder] = None,
        caps: Optional[Caps] = None,
    ):
        self.settings = dict(settings)
        self.caps = caps or Caps()
        self.banach = dict(banach or {})
        self.rec = recorder or RunRecorder()
        self.rng = np.random.default_rng(int(self.settings.get("seed", 0)))
        self.structures: List[GaugedStructure] = corpus.random_structures(
            self.rng, int(self.settings.get("structures", 100)), int(self.settings.get("max_points", 6))
        )
        self.depth = int(self.settings.get("formula_depth", 4))
        self.rec.add(seed=self.settings.get("seed", 0), structures=len(self.structures))

    def _get(self, key: str, default: int) -> int:
        return int(self.settings.get(key, default))

    def _formulas(self, count: int, bounded: bool = False, depth: Optional[int] = None) -> List[Formula]:
        return corpus.random_formulas(self.rng, count, ("x", "y"), depth or self.depth, bounded)

    def _pairs(self, formulas: List[Formula]):
        """Each formula with a structure and an assignment of its free variables."""
        for i, phi in enumerate(formulas):
            M = self.structures[i % len(self.structures)]
            yield phi, M, corpus.random_assignment(self.rng, M, sorted(free_vars(phi)))

    # -- formula suites --------------------------------------------------

    def suite_bound(self) -> None:
        formulas = self._formulas(self._get("formulas", 500), bounded=True)
        with self.rec.suite("bound") as s:
            for phi, M, sigma in self._pairs(formulas):
                ev = Evaluator(M)
                value = ev.formula(phi, {x: M.index(p) for x, p in sigma.items()})
                B = bound(phi)
                self.rec.case(s, value <= B, f"{_short(phi)}: {format_value(value)} > {format_value(B)}")

    def suite_constancy(self) -> None:
        formulas = self._formulas(self._get("formulas", 500))
        with self.rec.suite("constancy") as s:
            for phi, M, sigma in self._pairs(formulas):
                an = Analyzer()
                result = classify(phi, analyzer=an)
                ev = Evaluator(M, an)
                env = {x: M.index(p) for x, p in sigma.items()}
                for x in sorted(result.eventually_constant):
                    C = result.threshold(x)
                    lim = limit_formula(phi, x)
                    rest = {y: i for y, i in env.items() if y != x}
                    expected = ev.formula(lim, rest)
                    for b in range(M.size):
                        if M.gauge[b] >= C:
                            got = ev.formula(phi, dict(rest, **{x: b}))
                            self.rec.case(s, got == expected, f"{_short(phi)} at {x}={M.points[b]}")

    def suite_modulus(self) -> None:
        formulas = self._formulas(self._get("structures", 100), depth=min(self.depth, 3))
        with self.rec.suite("modulus") as s:
            for phi, M, _ in self._pairs(formulas):
                delta = synthesize_modulus(phi, M.signature)
                table = evaluation_table(M, phi)
                report = respects_check(table, delta, limit=1)
                self.rec.case(s, report.passed, f"{_short(phi)}: {report.first()}")
            for _ in range(self._get("modulus_tables", 1000)):
                table = corpus.random_finite_map(self.rng, int(self.rng.integers(2, 5)))
                delta = corpus.random_modulus(self.rng)
                closed = respects_check(table, delta, limit=1).passed
                grid = respects_check_grid(table, delta).passed
                self.rec.case(s, closed == grid, f"closed-form {closed} vs grid {grid} for {delta.to_sexpr()}")

    def suite_window(self) -> None:
        formulas = self._formulas(self._get("window_draws", 500), bounded=True)
        with self.rec.suite("window") as s:
            for phi, M, sigma in self._pairs(formulas):
                x = "x"
                r, r_prime = sorted(self.rng.choice(WINDOW_RADII, size=2, replace=False))
                an = Analyzer()
                ev = Evaluator(M, an)
                rest = {y: M.index(p) for y, p in sigma.items() if y != x}
                values = [ev.formula(phi, dict(rest, x=b)) for b in range(M.size)]
                inside = [v for b, v in zip(range(M.size), values) if M.gauge[b] <= r]
                near = [v for b, v in zip(range(M.size), values) if M.gauge[b] < r_prime]
                K = Fraction(max(1, math.ceil(bound(phi))))

                sup_value = ev.formula(sup_window(phi, x, r, r_prime), rest)
                lo, hi = max(inside, default=Fraction(0)), max(near + [Fraction(0)])
                self.rec.case(s, lo <= sup_value <= hi, f"sup window {_short(phi)} r={r} r'={r_prime}")

                inf_value = ev.formula(inf_window(phi, x, r, r_prime), rest)
                lo, hi = min(near + [K]), min(inside + [K])
                self.rec.case(s, lo <= inf_value <= hi, f"inf window {_short(phi)} r={r} r'={r_prime}")

                down, up = build_down(phi, x, r, r_prime, an), build_up(phi, x, r, r_prime, an)
                for b, v in zip(range(M.size), values):
                    env = dict(rest, x=b)
                    if M.gauge[b] <= r:
                        ok = ev.formula(down, env) == v and ev.formula(up, env) == v
                        self.rec.case(s, ok, f"inside {_short(phi)}")
                    elif M.gauge[b] >= r_prime:
                        ok = ev.formula(down, env) == 0 and ev.formula(up, env) == K
                        self.rec.case(s, ok, f"outside {_short(phi)}")

    def suite_prenex(self) -> None:
        formulas = self._formulas(self._get("formulas", 500))
        with self.rec.suite("prenex") as s:
            for phi, M, sigma in self._pairs(formulas):
                psi = prenex(phi)
                ev = Evaluator(M)
                env = {x: M.index(p) for x, p in sigma.items()}
                same = ev.formula(psi, env) == ev.formula(phi, env)
                self.rec.case(s, same and is_prenex(psi), _short(phi))

    # -- structure suites --------------------------------------------------

    def suite_embound(self) -> None:
        with self.rec.suite("embound") as s:
            for M in self.structures:
                report = check_embound(graph_transform(M))
                self.rec.case(s, report.passed, str(report.first()))
            size = self._get("theta_grid", 40)
            report = theta_subadditivity_grid(size, 4)
            self.rec.case(s, report.passed, str(report.first()))

    def suite_theories(self) -> None:
        T = load_shipped_theory("measure_algebra")
        atoms_cap = self.caps.measure_algebra_atoms
        weights = corpus.measure_weights(self._get("measure_atoms", 3), self._get("measure_denominator", 8))
        conditions = [c for c in T.conditions if c.group in UNIVERSAL_GROUPS]
        schemes = [sc for sc in T.schemes if sc.group in UNIVERSAL_GROUPS]
        size = min(len(weights), self._get("measure_samples", 12))
        picks = {int(i) for i in self.rng.choice(len(weights), size=size, replace=False)}
        with self.rec.suite("theories") as s:
            for i, w in enumerate(weights):
                A = measure_algebra(w, cap=atoms_cap)
                self.rec.case(s, validate(A).passed, f"measure algebra {w} fails validation")
                ev = Evaluator(A, Analyzer())
                bad = [c.label for c in conditions if c.defect(ev.formula(c.formula, {})) != 0]
                bad += [sc.label for sc in schemes if matrix_sup(A, sc, ev) != 0]
                self.rec.case(s, not bad, f"weights {w}: {bad}")
                if i in picks:
                    report = check_theory(A, T)
                    failed = [r.label for r in report.failures() if r.group in UNIVERSAL_GROUPS]
                    self.rec.case(s, not failed, f"weights {w} instances: {failed}")
            single = check_theory(measure_algebra([1], cap=atoms_cap), T)
            atomless = [r for r in single.by_label("atomless") if r.defect > 0]
            self.rec.case(s, bool(atomless), "single atom has zero atomless defect")

            banach = load_shipped_theory("banach")
            core = Theory(banach.signature, [], [sc for sc in banach.schemes if sc.group in BANACH_CORE])
            for p in ("1", "inf"):
                V = sampled_normed_structure(1, p, cap=self.caps.sampled_points)
                report = check_theory(V, core, [Fraction(1, 2)], [1, 2])
                self.rec.case(s, report.passed, f"sampled l{p}: {[r.label for r in report.failures()]}")

    def suite_graph(self) -> None:
        eps = [Fraction(1), Fraction(1, 2), Fraction(1, 4)]
        with self.rec.suite("graph") as s:
            for M in self.structures[: max(1, len(self.structures) // 5)]:
                GM = graph_transform(M)
                T = load_theory("(graph-axioms neg 1 id) (graph-axioms o 0 id)", GM.signature)
                report = check_theory(GM, T, eps_list=eps)
                self.rec.case(s, report.passed, str([r.label for r in report.failures()]))

    def suite_los(self) -> None:
        formulas = self._formulas(self._get("los_formulas", 20))
        Ms = self.structures[:5]
        with self.rec.suite("los") as s:
            for j, M in enumerate(Ms):
                sigmas = [{"x": a, "y": b} for a, b in itertools.product(M.points, repeat=2)]
                report = los_check(Ms, j, formulas, sigmas)
                self.rec.case(s, report.passed, str(report.first()))

    # -- Banach-Mazur --------------------------------------------------------

    def suite_banach(self) -> None:
        tol = float(self.banach.get("tol", 1e-9))
        dims = [int(d) for d in self.settings.get("bm_dims", [1, 2, 3, 4])]
        combos = [(kind, dim) for kind in KINDS for dim in dims]
        per = max(1, self._get("bm_trials", 1000) // len(combos))
        eps_choices = (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8))
        with self.rec.suite("banach") as s:
            for kind, dim in combos:
                space = NormedSpace(dim, kind)
                k = int(self.rng.integers(1, dim + 1))
                B = corpus.random_basis(self.rng, k, dim)
                eps = eps_choices[int(self.rng.integers(len(eps_choices)))]
                report = certify_trials(B, eps, space, trials=per, rng=self.rng, tol=tol)
                self.rec.case(s, report.passed, f"{space} eps={eps}: {len(report.failures)} failed trials")
                lp = simplex_min_norm(B, space, tol=tol)
                grid = simplex_min_norm_grid(B, space)
                self.rec.case(s, abs(lp - grid) <= 1e-6, f"{space}: LP {lp} vs grid {grid}")
                P = np.identity(dim)[self.rng.permutation(dim)] * self.rng.choice([-1.0, 1.0], size=dim)
                iso = eps_iso_check(P, 0, space, tol)
                ok = iso.ok and abs(op_norm(P, space) - 1) <= tol and abs(iso.inverse_norm - 1) <= tol
                self.rec.case(s, ok, f"{space}: signed permutation is not an isometry")

    def run(self, only: Optional[List[str]] = None) -> RunRecorder:
        for name in only or SUITES:
            runner: Callable[[], None] = getattr(self, f"suite_{name}")
            logger.info("selftest suite '%s'", name)
            runner()
        return self.rec


def run_selftest(
    settings: Dict[str, Any], only: Optional[List[str]] = None, caps: Optional[Caps] = None
) -> RunRecorder:
    """Run the suites named in ``only`` (default all) from a merged configuration."""
    return SelfTest(settings.get("selftest", {}), settings.get("banach", {}), caps=caps).run(only)
