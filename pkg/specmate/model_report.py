from dataclasses import dataclass, field

from specmate.graph import Graph
from specmate.graph6 import emit_graph6
from specmate.level_bound import LevelBound
from specmate.omega import MateReport, Verdict, VerdictStatus
from specmate.walk_matrix import Controllability

SCHEMA_VERSION = 1


def _big(value: int | None) -> str | None:
    return None if value is None else str(value)


@dataclass(frozen=True)
class AnalysisReport:
    graph: Graph
    graph6: str
    controllability: Controllability
    verdict: Verdict
    cap: int
    walk_d_n: int | None = None
    level: LevelBound | None = None
    solution_count: int | None = None
    omega_size: tuple[int, int] | None = None
    clique_count: int | None = None
    prime_stats: tuple = ()
    product_size: int | None = None
    timings_ms: dict[str, float] = field(default_factory=dict)

    @property
    def status(self) -> VerdictStatus:
        return self.verdict.status

    @property
    def L(self) -> int | None:
        return None if self.level is None else self.level.L

    @property
    def mates(self) -> tuple[MateReport, ...]:
        return self.verdict.mates

    @property
    def total_ms(self) -> float:
        return sum(self.timings_ms.values())

    def to_dict(self, timings: bool = True) -> dict:
        level = None
        if self.level is not None:
            lb = self.level
            level = {
                "L": _big(lb.L),
                "basic_L": _big(lb.basic_L),
                "primes": [
                    {
                        "p": _big(pp.p),
                        "t": pp.t,
                        "basic_exponent": pp.basic_exponent,
                        "d_n": _big(pp.d_n),
                        "certified": pp.certified,
                    }
                    for pp in lb.primes
                ],
                "eliminated": [{"p": _big(e.p), "rule": e.rule} for e in lb.eliminated],
                "incomplete_factorization": lb.incomplete_factorization,
            }
        data = {
            "schema_version": SCHEMA_VERSION,
            "graph6": self.graph6,
            "n": self.graph.n,
            "cap": self.cap,
            "controllability": self.controllability.value,
            "snf_summary": {
                "d_n": _big(self.walk_d_n),
                "per_prime": {str(pp.p): _big(pp.d_n) for pp in self.level.primes} if self.level else {},
            },
            "delta": _big(self.level.delta) if self.level else None,
            "delta_gcd": _big(self.level.delta_gcd) if self.level else None,
            "level": level,
            "step1": [
                {"modulus": _big(s.modulus), "linear": s.linear_count, "filtered": s.filtered_count}
                for s in self.prime_stats
            ],
            "product_size": self.product_size,
            "solution_count": self.solution_count,
            "omega": None if self.omega_size is None else {
                "vertices": self.omega_size[0],
                "edges": self.omega_size[1],
            },
            "clique_count": self.clique_count,
            "verdict": {
                "status": self.verdict.status.value,
                "reason_code": self.verdict.reason_code,
                "reason": self.verdict.reason,
                "mates": [
                    {
                        "graph6": emit_graph6(m.mate),
                        "clique": list(m.clique),
                        "level": _big(m.level),
                        "symmetric": m.symmetric,
                        "preimages": m.preimages,
                    }
                    for m in self.verdict.mates
                ],
            },
        }
        if timings:
            data["timings_ms"] = {k: round(v, 3) for k, v in self.timings_ms.items()}
        return data

    def render_text(self) -> str:
        lines = [
            f"graph6:          {self.graph6}",
            f"vertices:        {self.graph.n}",
            f"controllability: {self.controllability.value}",
        ]
        if self.walk_d_n is not None:
            lines.append(f"d_n:             {self.walk_d_n}")
        if self.level is not None:
            lb = self.level
            lines.append(f"discriminant:    {lb.delta}")
            lines.append(f"gcd(delta, d_n): {lb.delta_gcd}")
            for pp in lb.primes:
                kind = "" if pp.certified else " (unfactored, basic estimate)"
                lines.append(f"  p={pp.p}: t={pp.t} (basic {pp.basic_exponent}), d_n={pp.d_n}{kind}")
            for e in lb.eliminated:
                lines.append(f"  p={e.p} eliminated: {e.rule}")
            lines.append(f"L:               {lb.L} (basic estimate {lb.basic_L})")
        if self.solution_count is not None:
            lines.append(f"solutions:       {self.solution_count}")
        if self.omega_size is not None:
            lines.append(f"Omega:           {self.omega_size[0]} vertices, {self.omega_size[1]} edges")
        if self.clique_count is not None:
            lines.append(f"cliques:         {self.clique_count}")
        verdict = self.verdict.status.value
        if self.verdict.reason:
            verdict += f" ({self.verdict.reason_code}: {self.verdict.reason})"
        lines.append(f"verdict:         {verdict}")
        for m in self.verdict.mates:
            kind = "symmetric" if m.symmetric else "asymmetric"
            lines.append(f"  mate {emit_graph6(m.mate)}  level {m.level}, {kind}, {m.preimages} clique(s)")
        if self.timings_ms:
            lines.append("timings (ms):    " + ", ".join(f"{k} {v:.1f}" for k, v in self.timings_ms.items()))
        return "\n".join(lines)


@dataclass(frozen=True)
class BatchRow:
    index: int
    seed: int
    report: AnalysisReport

    def csv_fields(self) -> list:
        r = self.report
        return [
            self.index,
            self.seed,
            r.graph6,
            r.controllability.value,
            "" if r.L is None else r.L,
            "" if r.omega_size is None else r.omega_size[0],
            "" if r.clique_count is None else r.clique_count,
            r.status.value,
            f"{r.total_ms:.3f}",
        ]


CSV_HEADER = [
    "index",
    "seed",
    "graph6",
    "controllability",
    "L",
    "omega_vertices",
    "clique_count",
    "verdict",
    "millis",
]


@dataclass(frozen=True)
class BatchSummary:
    n: int
    count: int
    seed: int
    cap: int
    dgs: int
    dgs_omega_complete: int
    non_dgs: int
    undecided: int
    discarded_unsupported: int
    rows: tuple[BatchRow, ...] = ()

    @classmethod
    def from_rows(cls, n: int, seed: int, cap: int, rows, discarded: int) -> "BatchSummary":
        rows = tuple(rows)
        statuses = [row.report.status for row in rows]
        complete = sum(
            1
            for row in rows
            if row.report.status is VerdictStatus.DGS
            and row.report.omega_size is not None
            and row.report.omega_size[0] == n
            and row.report.omega_size[1] == n * (n - 1) // 2
        )
        return cls(
            n=n,
            count=len(rows),
            seed=seed,
            cap=cap,
            dgs=statuses.count(VerdictStatus.DGS),
            dgs_omega_complete=complete,
            non_dgs=statuses.count(VerdictStatus.NON_DGS),
            undecided=statuses.count(VerdictStatus.UNDECIDED),
            discarded_unsupported=discarded,
            rows=rows,
        )

    @property
    def dgs_fraction(self) -> float:
        return self.dgs / self.count if self.count else 0.0

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "n": self.n,
            "count": self.count,
            "seed": self.seed,
            "cap": self.cap,
            "tallies": {
                "DGS": self.dgs,
                "DGS_omega_complete": self.dgs_omega_complete,
                "NonDGS": self.non_dgs,
                "Undecided": self.undecided,
            },
            "discarded_unsupported": self.discarded_unsupported,
        }
