import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from specmate.congruence_solver import DEFAULT_CAP
from specmate.graph import random_gnp_half
from specmate.model_report import AnalysisReport, BatchRow, BatchSummary
from specmate.options import SolverOptions
from specmate.service_analysis import analyze
from specmate.walk_matrix import Controllability

logger = logging.getLogger(__name__)

_PROGRESS_EVERY = 100


@dataclass(frozen=True)
class _Draw:
    index: int
    seed: int
    n: int
    cap: int
    solver: SolverOptions


def _analyze_draw(draw: _Draw) -> AnalysisReport:
    g = random_gnp_half(draw.n, draw.seed)
    return analyze(
        g,
        draw.cap,
        trial_limit=draw.solver.trial_division_limit,
        rho_steps=draw.solver.rho_max_steps,
        rho_retries=draw.solver.rho_retries,
    )


class BatchWorker:
    """Analyzes random G(n, 1/2) graphs until `count` supported ones are collected.

    Draw i uses seed + i. Draws are consumed strictly in index order, so the
    accepted rows and the discard count do not depend on `jobs`.
    """

    def __init__(
        self,
        n: int,
        count: int,
        seed: int,
        cap: int = DEFAULT_CAP,
        jobs: int = 1,
        solver: SolverOptions | None = None,
    ):
        if n < 1 or count < 1:
            raise ValueError(f"batch needs n >= 1 and count >= 1, got n={n}, count={count}")
        self._n = n
        self._count = count
        self._seed = seed
        self._cap = cap
        self._jobs = max(1, jobs)
        self._solver = solver or SolverOptions()
        self._discarded = 0

    @property
    def discarded(self) -> int:
        return self._discarded

    def _draws(self, start: int, size: int) -> list[_Draw]:
        return [
            _Draw(i, self._seed + i, self._n, self._cap, self._solver)
            for i in range(start, start + size)
        ]

    def run(self) -> BatchSummary:
        rows: list[BatchRow] = []
        self._discarded = 0
        next_index = 0
        executor = ProcessPoolExecutor(max_workers=self._jobs) if self._jobs > 1 else None
        try:
            while len(rows) < self._count:
                size = max(self._count - len(rows), self._jobs * 4)
                draws = self._draws(next_index, size)
                next_index += size
                if executor is None:
                    reports = map(_analyze_draw, draws)
                else:
                    reports = executor.map(_analyze_draw, draws, chunksize=max(1, size // (self._jobs * 4)))
                for draw, report in zip(draws, reports):
                    if report.controllability is Controllability.UNSUPPORTED:
                        self._discarded += 1
                        continue
                    rows.append(BatchRow(draw.index, draw.seed, report))
                    if len(rows) % _PROGRESS_EVERY == 0:
                        logger.info("batch n=%d: %d/%d graphs analyzed", self._n, len(rows), self._count)
                    if len(rows) == self._count:
                        break
        finally:
            if executor is not None:
                executor.shutdown(cancel_futures=True)
        return BatchSummary.from_rows(self._n, self._seed, self._cap, rows, self._discarded)


def batch(
    n: int,
    count: int,
    seed: int,
    cap: int = DEFAULT_CAP,
    jobs: int = 1,
    solver: SolverOptions | None = None,
) -> BatchSummary:
    return BatchWorker(n, count, seed, cap, jobs, solver).run()
