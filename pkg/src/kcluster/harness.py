"""Differential fuzzing of the DP solvers against the exhaustive oracle."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from . import mutants
from .errors import BudgetError
from .instance_gen import GenSpec, enumerate_canonical, gen_random
from .interval import solve_interval_all
from .interval_model import NirForm, to_nir
from .oracle import (
    PROFILE_MAX_N,
    brute_force_kcluster,
    connectivity_check,
    instance_digest,
    subset_profile,
)
from .proper import solve_proper_all

__all__ = [
    "Finding",
    "InstanceResult",
    "FuzzConfig",
    "FuzzSummary",
    "remove_node",
    "compare_instance",
    "shrink",
    "random_instance",
    "run_fuzz",
    "check_forms",
]

SOLVERS: dict[str, Callable] = {"interval": solve_interval_all, "proper": solve_proper_all}


@dataclass(frozen=True)
class Finding:
    """A disagreement or an unsound witness for one ``(method, connected, k)``."""

    method: str
    connected: bool
    k: int | None
    kind: str  # "value", "witness" or "error"
    dp_value: int | None = None
    oracle_value: int | None = None
    dp_witness: tuple[int, ...] = ()
    detail: str = ""


@dataclass
class InstanceResult:
    reach: tuple[int, ...]
    comparisons: int = 0
    findings: list[Finding] = field(default_factory=list)
    skipped: bool = False
    origin: dict = field(default_factory=dict)


def remove_node(f: NirForm, v: int) -> NirForm:
    """Normal form of the graph with node ``v`` deleted (stair shape is kept)."""
    if f.n == 1:
        raise ValueError("cannot remove the only node")
    reach = []
    for u, x in enumerate(f.reach, start=1):
        if u < v:
            reach.append(x - 1 if u + x >= v else x)
        elif u > v:
            reach.append(x)
    return NirForm(tuple(reach))


def compare_instance(f: NirForm, budget: int = PROFILE_MAX_N) -> InstanceResult:
    """Run every applicable solver on ``f`` for all ``k`` and both modes."""
    result = InstanceResult(f.reach)
    try:
        profile = subset_profile(f, max_n=budget)
    except BudgetError:
        result.skipped = True
        return result
    methods = ["interval", "proper"] if f.is_stair() else ["interval"]
    for method in methods:
        for connected in (False, True):
            try:
                sols = SOLVERS[method](f, connected, strict=False)
            except Exception as exc:  # a crash is a disagreement, not a harness failure
                result.findings.append(
                    Finding(method, connected, None, "error", detail=f"{type(exc).__name__}: {exc}")
                )
                continue
            for k, sol in enumerate(sols):
                result.comparisons += 1
                expected = profile.value(k, connected)
                if sol.value != expected:
                    result.findings.append(
                        Finding(method, connected, k, "value", sol.value, expected, sol.nodes)
                    )
                elif not sol.sound or (
                    connected and sol.feasible and not connectivity_check(f, sol.nodes)
                ):
                    result.findings.append(
                        Finding(
                            method, connected, k, "witness", sol.value, expected, sol.nodes,
                            f"witness has {len(sol.nodes)} nodes and {sol.edges} edges",
                        )
                    )
    return result


def shrink(f: NirForm, failing: Callable[[NirForm], bool]) -> NirForm:
    """Delete nodes one at a time while ``failing`` stays true."""
    current = f
    progress = True
    while progress and current.n > 1:
        progress = False
        for v in range(1, current.n + 1):
            candidate = remove_node(current, v)
            if failing(candidate):
                current = candidate
                progress = True
                break
    return current


def counterexample(result: InstanceResult, budget: int) -> dict:
    """Minimize the first finding of ``result`` into a JSON-ready record."""
    first = result.findings[0]

    def failing(g: NirForm) -> bool:
        if first.method == "proper" and not g.is_stair():
            return False
        again = compare_instance(g, budget)
        return any(
            fd.method == first.method and fd.connected == first.connected
            for fd in again.findings
        )

    original = NirForm(result.reach)
    small = shrink(original, failing)
    found = [
        fd
        for fd in compare_instance(small, budget).findings
        if fd.method == first.method and fd.connected == first.connected
    ]
    fd = found[0] if found else first
    if not found:
        small = original
    oracle_witness = None
    if fd.k is not None:
        ref = brute_force_kcluster(small, fd.k, fd.connected)
        oracle_witness = list(ref.nodes) if ref.feasible else None
    return {
        "type": "counterexample",
        "digest": instance_digest(small),
        "reach": list(small.reach),
        "original_reach": list(original.reach),
        "origin": result.origin,
        "method": fd.method,
        "connected": fd.connected,
        "k": fd.k,
        "kind": fd.kind,
        "dp_value": fd.dp_value,
        "oracle_value": fd.oracle_value,
        "dp_witness": list(fd.dp_witness),
        "oracle_witness": oracle_witness,
        "detail": fd.detail,
    }


def random_instance(seed: int, trial: int, n_min: int, n_max: int) -> tuple[NirForm, dict]:
    """Deterministic random realization for one trial, converted to NIR form."""
    rng = random.Random((seed << 32) ^ trial)
    n = rng.randint(n_min, n_max)
    cls = rng.choice(("interval", "proper"))
    spec = GenSpec(
        n=n,
        cls=cls,
        seed=rng.getrandbits(64),
        hi=rng.randint(max(1, n // 2), 3 * n),
        unit=rng.randint(0, 6),
    )
    form, _ = to_nir(gen_random(spec))
    origin = {"trial": trial, "class": cls, "n": n, "seed": spec.seed, "hi": spec.hi, "unit": spec.unit}
    return form, origin


@dataclass
class FuzzConfig:
    exhaustive_n: int = 0
    trials: int = 0
    seed: int = 0
    n_min: int = 8
    n_max: int = 14
    budget: int = PROFILE_MAX_N
    workers: int = 1
    mutant: str | None = None


@dataclass
class FuzzSummary:
    instances: int = 0
    comparisons: int = 0
    disagreements: int = 0
    unsound: int = 0
    skipped: int = 0
    counterexamples: list[dict] = field(default_factory=list)
    # disagreements + unsound findings per solver
    by_method: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.disagreements == 0 and self.unsound == 0

    def line(self) -> str:
        return (
            f"instances={self.instances} comparisons={self.comparisons} "
            f"disagreements={self.disagreements} unsound={self.unsound} skipped={self.skipped}"
            + "".join(f" {m}_findings={c}" for m, c in sorted(self.by_method.items()))
        )

    def to_json(self) -> dict:
        return {
            "type": "summary",
            "instances": self.instances,
            "comparisons": self.comparisons,
            "disagreements": self.disagreements,
            "unsound": self.unsound,
            "skipped": self.skipped,
            "by_method": dict(sorted(self.by_method.items())),
            "ok": self.ok,
        }


def _job(task: tuple) -> InstanceResult:
    kind, payload, cfg = task
    with mutants.inject(cfg.mutant):
        if kind == "reach":
            f, origin = NirForm(payload), {"exhaustive": True}
        else:
            f, origin = random_instance(cfg.seed, payload, cfg.n_min, cfg.n_max)
        result = compare_instance(f, cfg.budget)
        result.origin = origin
        if result.findings:
            result.origin["record"] = counterexample(result, cfg.budget)
    return result


def _tasks(cfg: FuzzConfig) -> Iterator[tuple]:
    for n in range(1, cfg.exhaustive_n + 1):
        for f in enumerate_canonical(n):
            yield ("reach", f.reach, cfg)
    for t in range(cfg.trials):
        yield ("trial", t, cfg)


def iter_results(cfg: FuzzConfig) -> Iterator[InstanceResult]:
    """Per-instance results in task order, serial or from a process pool."""
    tasks = _tasks(cfg)
    if cfg.workers <= 1:
        yield from map(_job, tasks)
        return
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        yield from pool.map(_job, tasks, chunksize=64)


def _tally(summary: FuzzSummary, findings: list[Finding]) -> None:
    for fd in findings:
        if fd.kind == "witness":
            summary.unsound += 1
        else:
            summary.disagreements += 1
        summary.by_method[fd.method] = summary.by_method.get(fd.method, 0) + 1


def run_fuzz(cfg: FuzzConfig, emit: Callable[[dict], None] | None = None) -> FuzzSummary:
    """Run the campaign; ``emit`` receives each counterexample record as it is found."""
    summary = FuzzSummary()
    for result in iter_results(cfg):
        summary.instances += 1
        if result.skipped:
            summary.skipped += 1
            continue
        summary.comparisons += result.comparisons
        _tally(summary, result.findings)
        if result.findings:
            record = result.origin.pop("record")
            summary.counterexamples.append(record)
            if emit is not None:
                emit(record)
    return summary


def check_forms(forms: Iterable[NirForm], budget: int = PROFILE_MAX_N) -> FuzzSummary:
    """Compare a fixed collection of forms (no shrinking); handy in tests."""
    summary = FuzzSummary()
    for f in forms:
        result = compare_instance(f, budget)
        summary.instances += 1
        summary.skipped += result.skipped
        summary.comparisons += result.comparisons
        _tally(summary, result.findings)
    return summary
