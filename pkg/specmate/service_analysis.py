import logging
import time
from contextlib import contextmanager

from specmate.congruence_solver import DEFAULT_CAP, solve_master
from specmate.errors import InternalInconsistencyError, PreconditionError, SolutionOverflowError
from specmate.factorization import RHO_MAX_STEPS, RHO_RETRIES, TRIAL_DIVISION_LIMIT
from specmate.graph import Graph
from specmate.graph6 import emit_graph6
from specmate.level_bound import compute_level_bound
from specmate.model_report import AnalysisReport
from specmate.omega import Verdict, VerdictStats, VerdictStatus, build_omega, enumerate_n_cliques, render_verdict
from specmate.walk_matrix import Controllability, build_walk_data

logger = logging.getLogger(__name__)

REASON_UNSUPPORTED = "unsupported-rank"
REASON_OVERFLOW = "overflow"
REASON_INCONSISTENT = "internal-inconsistency"


class _Timer:
    def __init__(self):
        self.stages: dict[str, float] = {}

    @contextmanager
    def stage(self, name: str):
        start = time.perf_counter()
        try:
            yield
        finally:
            self.stages[name] = (time.perf_counter() - start) * 1000.0


def analyze(
    g: Graph,
    cap: int = DEFAULT_CAP,
    trial_limit: int = TRIAL_DIVISION_LIMIT,
    rho_steps: int = RHO_MAX_STEPS,
    rho_retries: int = RHO_RETRIES,
) -> AnalysisReport:
    """Run the whole DGS decision procedure on one graph."""
    graph6 = emit_graph6(g) if g.n <= 62 else ""
    timer = _Timer()
    fields: dict = {"graph": g, "graph6": graph6, "cap": cap, "timings_ms": timer.stages}

    with timer.stage("walk"):
        wd = build_walk_data(g)
    fields["controllability"] = wd.klass
    if wd.klass is Controllability.UNSUPPORTED:
        verdict = Verdict.undecided(REASON_UNSUPPORTED, f"rank W = {wd.rank} <= n-2")
        return AnalysisReport(verdict=verdict, **fields)

    try:
        with timer.stage("level"):
            lb = compute_level_bound(g, wd, trial_limit, rho_steps, rho_retries)
        fields["level"] = lb
        fields["walk_d_n"] = lb.d
        L = lb.L
        if L == 1:
            edges = g.n * (g.n - 1) // 2
            stats = VerdictStats(1, g.n, edges, 1, timer.stages)
            fields.update(solution_count=g.n, omega_size=(g.n, edges), clique_count=1)
            return AnalysisReport(verdict=Verdict(VerdictStatus.DGS, stats=stats), **fields)

        with timer.stage("solve"):
            master = solve_master(g, wd, lb, cap)
        fields.update(
            solution_count=len(master),
            prime_stats=master.per_prime,
            product_size=master.product_size,
        )
        with timer.stage("omega"):
            omega = build_omega(master.solutions, g, L)
        fields["omega_size"] = (omega.order, omega.edge_count)
        with timer.stage("cliques"):
            cliques = enumerate_n_cliques(omega, g.n)
        fields["clique_count"] = len(cliques)
        with timer.stage("verdict"):
            verdict = render_verdict(g, wd, omega, cliques)
    except SolutionOverflowError as exc:
        logger.info("%s: %s", graph6, exc)
        stats = VerdictStats(fields["level"].L, timings_ms=timer.stages)
        return AnalysisReport(verdict=Verdict.undecided(REASON_OVERFLOW, str(exc), stats), **fields)
    except (InternalInconsistencyError, PreconditionError) as exc:
        logger.error("internal inconsistency on %s: %s", graph6, exc)
        return AnalysisReport(verdict=Verdict.undecided(REASON_INCONSISTENT, str(exc)), **fields)

    verdict = Verdict(
        verdict.status,
        mates=verdict.mates,
        stats=VerdictStats(
            verdict.stats.L,
            verdict.stats.omega_vertices,
            verdict.stats.omega_edges,
            verdict.stats.clique_count,
            timer.stages,
        ),
    )
    return AnalysisReport(verdict=verdict, **fields)
