"""Seeded batch experiments comparing the solvers to the exact oracle.

An experiment spec is a JSON object::

    {
      "seed": 0,
      "groups": [
        {"solver": "mrct", "count": 200, "n": [5, 7], "density": 0.5,
         "weights": [1, 9], "epsilon": "1"},
        {"solver": "sroct", "count": 200, "n": [4, 7], "requirements": [0, 3]},
        {"solver": "w2mrct", "count": 200, "n": [4, 7], "lambdas": ["1", "3/2", "2"]}
      ],
      "timing_threads": [1, 2]
    }

Each instance gets one perturbation trial (seed = instance seed), so the
recorded Fail rate is per trial.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import ConstructionInvalid
from .generators import random_connected_graph
from .graph import Graph, TwoSourceSpec
from .isolation import PerturbationConfig
from .mrct import ApproxParams, parallel_mrct
from .oracle import exact_mrct, exact_sroct, exact_w2mrct
from .outcomes import Fail
from .sroct import parallel_sroct
from .two_mrct import weighted_2mrct

SOLVERS = ("mrct", "sroct", "w2mrct")


@dataclass
class InstanceRecord:
    solver: str
    index: int
    n: int
    seed: int
    status: str
    cost: int | None = None
    optimum: int | None = None
    bound: Fraction | None = None
    within_bound: bool | None = None
    slack: Fraction | None = None
    lam: Fraction | None = None

    @property
    def ratio(self) -> Fraction | None:
        if self.cost is None or self.optimum is None:
            return None
        if self.optimum == 0:
            return Fraction(1) if self.cost == 0 else None
        return Fraction(self.cost, self.optimum)


@dataclass
class GroupSummary:
    solver: str
    instances: int = 0
    fails: int = 0
    fail_allowance: Fraction = Fraction(0)
    violations: int = 0
    construction_invalid: int = 0
    max_ratio: Fraction = Fraction(0)
    invalid_instances: list[str] = field(default_factory=list)


@dataclass
class ExperimentReport:
    records: list[InstanceRecord] = field(default_factory=list)
    groups: list[GroupSummary] = field(default_factory=list)
    timings: dict[int, float] = field(default_factory=dict)

    def lines(self) -> list[str]:
        out = []
        for r in self.records:
            parts = [f"instance {r.solver}-{r.index}", f"n={r.n}", f"seed={r.seed}", f"status={r.status}"]
            if r.cost is not None:
                parts += [f"cost={r.cost}", f"optimum={r.optimum}"]
            if r.ratio is not None:
                parts.append(f"ratio={r.ratio}")
            if r.within_bound is not None:
                parts.append(f"within-bound={str(r.within_bound).lower()}")
            if r.slack is not None:
                parts.append(f"slack={r.slack}")
            out.append(" ".join(parts))
        for g in self.groups:
            p = g.solver
            out += [
                f"{p}-instances {g.instances}",
                f"{p}-fails {g.fails}",
                f"{p}-violations {g.violations}",
                f"{p}-construction-invalid {g.construction_invalid}",
                f"{p}-max-ratio {float(g.max_ratio):.6f}",
            ]
        for k, secs in sorted(self.timings.items()):
            out.append(f"time-threads-{k} {secs:.3f}")
        return out


def _spec_lambda(text: Any) -> Fraction:
    return Fraction(str(text))


def _instance(rng: random.Random, group: dict, index: int) -> tuple[Graph, TwoSourceSpec | None]:
    lo, hi = group.get("n", [5, 7])
    n = rng.randint(lo, hi)
    reqs = group.get("requirements")
    g = random_connected_graph(
        rng, n, group.get("density", 0.5), tuple(group.get("weights", [1, 9])), tuple(reqs) if reqs else None
    )
    spec = None
    if group["solver"] == "w2mrct":
        lams = group.get("lambdas", ["1"])
        lam = _spec_lambda(lams[index % len(lams)])
        s1, s2 = rng.sample(range(n), 2)
        spec = TwoSourceSpec(s1, s2, lam.numerator, lam.denominator)
    return g, spec


def run_instance(
    solver: str,
    g: Graph,
    spec: TwoSourceSpec | None,
    cfg: PerturbationConfig,
    epsilon: Fraction = Fraction(1),
    workers: int = 1,
) -> InstanceRecord:
    """Solve one instance, compare with the exact optimum and check the proven bound exactly."""
    rec = InstanceRecord(solver, 0, g.n, cfg.seed, "ok")
    try:
        if solver == "mrct":
            res = parallel_mrct(g, epsilon, cfg, workers=workers)
        elif solver == "sroct":
            res = parallel_sroct(g, cfg, workers=workers)
        elif solver == "w2mrct":
            assert spec is not None
            rec.lam = spec.lam
            res = weighted_2mrct(g, spec, cfg, workers=workers)
        else:
            raise ValueError(f"unknown solver {solver!r}")
    except ConstructionInvalid:
        rec.status = "construction-invalid"
        return rec
    if isinstance(res, Fail):
        rec.status = "fail"
        return rec

    if solver == "mrct":
        opt = exact_mrct(g).cost.value
        cost = res.original_cost.value
        bound = ApproxParams.from_epsilon(epsilon).guarantee(g.n)
        ok = cost <= bound * opt
    elif solver == "sroct":
        opt = exact_sroct(g).cost.value
        cost = res.original_src_cost.value
        # Best root under perturbed weights is within 2x the perturbed optimum,
        # and perturbing adds at most ``perturbation_bound`` to any tree.
        bound = 2 * (opt + res.perturbation_bound)
        ok = cost <= bound and cost <= res.guarantee * opt
        rec.slack = res.slack
    else:
        opt = exact_w2mrct(g, spec).cost.value
        cost = res.original_cost.value
        bound = 2 * (opt + res.perturbation_bound)
        ok = cost <= bound and cost <= res.guarantee * opt
        rec.slack = res.slack
    rec.cost, rec.optimum, rec.within_bound = cost, opt, ok
    rec.bound = Fraction(bound)
    return rec


def run_experiment(spec: dict, workers: int = 1) -> ExperimentReport:
    report = ExperimentReport()
    rng = random.Random(spec.get("seed", 0))
    a = spec.get("denom_exp", 10)
    b = spec.get("numer_exp", 6)
    timing_cases: list[tuple[Graph, TwoSourceSpec | None, PerturbationConfig, str, Fraction]] = []
    for group in spec.get("groups", []):
        solver = group["solver"]
        if solver not in SOLVERS:
            raise ValueError(f"unknown solver {solver!r}")
        summary = GroupSummary(solver)
        eps = Fraction(str(group.get("epsilon", "1")))
        for i in range(group.get("count", 0)):
            g, tspec = _instance(rng, group, i)
            cfg = PerturbationConfig(rng.getrandbits(63), a, b)
            rec = run_instance(solver, g, tspec, cfg, eps, workers)
            rec.index = i
            report.records.append(rec)
            summary.instances += 1
            summary.fail_allowance += Fraction(1, 2 * g.n)
            if rec.status == "fail":
                summary.fails += 1
            elif rec.status == "construction-invalid":
                summary.construction_invalid += 1
                summary.invalid_instances.append(f"seed={cfg.seed} n={g.n}")
            else:
                if not rec.within_bound:
                    summary.violations += 1
                if rec.ratio is not None and rec.ratio > summary.max_ratio:
                    summary.max_ratio = rec.ratio
            if len(timing_cases) < 5:
                timing_cases.append((g, tspec, cfg, solver, eps))
        report.groups.append(summary)

    for k in spec.get("timing_threads", []):
        start = time.perf_counter()
        for g, tspec, cfg, solver, eps in timing_cases:
            if solver == "mrct":
                parallel_mrct(g, eps, cfg, workers=k)
            elif solver == "sroct":
                parallel_sroct(g, cfg, workers=k)
            else:
                weighted_2mrct(g, tspec, cfg, workers=k)
        report.timings[k] = time.perf_counter() - start
    return report
