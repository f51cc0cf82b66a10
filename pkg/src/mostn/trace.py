"""Trajectory tracing: representative selection per tracking vector and the trace log.

Each iteration, candidates are taken from the best non-domination ranks until
at least n solutions are available; each of the n tracking vectors is then
assigned the candidate with the best Tchebycheff score, ties going to the
newest solution after excluding the vector's previous representative.
Representatives are mapped to hypercube locations in decision space.
"""

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Sequence

import numpy as np

from .core import Solution, non_dominated_sort
from .decomposition import WeightVector, tchebycheff

LocationKey = tuple[int, ...]

TRACE_HEADER = "algo,problem,run,iter,vector,loc,f1,f2,f3,scalar,birth"


class TraceParseError(ValueError):
    """Malformed trace file; message carries file and line."""


def location_of(x: Sequence[float], precision: float) -> LocationKey:
    """Hypercube index of a point: floor(x_i / precision) per coordinate.

    Floor (toward -inf) keeps negative coordinates binning consistently.
    """
    if precision <= 0.0:
        raise ValueError(f"precision must be positive, got {precision}")
    key = []
    for i, c in enumerate(x):
        if not math.isfinite(c):
            raise ValueError(f"coordinate {i} is not finite: {c!r}")
        key.append(math.floor(c / precision))
    return tuple(key)


def rebin_location(key: LocationKey, old_precision: float, new_precision: float) -> LocationKey:
    """Re-bin a cube index to a different precision via the cube's lower corner.

    Exact when new_precision is an integer multiple of old_precision.
    """
    if new_precision <= 0.0:
        raise ValueError(f"precision must be positive, got {new_precision}")
    return tuple(math.floor(i * old_precision / new_precision) for i in key)


def select_candidates(pop: Sequence[Solution], n: int) -> list[Solution]:
    """Union of the best ranks 0..r, with r minimal so that at least n
    solutions are collected; population order is preserved within ranks."""
    if len(pop) < n:
        raise ValueError(f"population of {len(pop)} cannot provide {n} candidates")
    ranked = non_dominated_sort(pop)
    out: list[Solution] = []
    rank = 0
    while len(out) < n:
        out.extend(ranked.front(rank))
        rank += 1
    return out


def assign_representatives(
    candidates: Sequence[Solution],
    vectors: Sequence[WeightVector],
    z: Sequence[float],
    prev: Sequence[Solution | None],
) -> list[Solution]:
    """Pick one representative per tracking vector from the candidate set.

    For each vector independently: the Tchebycheff argmin wins; exact-score
    ties first drop the candidate equal to the vector's previous
    representative (when another tied candidate remains), then prefer the
    largest birth stamp, then the lowest candidate index.
    """
    if not candidates:
        raise ValueError("no candidates to assign")
    if len(prev) != len(vectors):
        raise ValueError("prev assignment length must match vector count")
    F = np.array([c.f for c in candidates], dtype=float)
    zarr = np.asarray(z, dtype=float)
    reps: list[Solution] = []
    for v, w in enumerate(vectors):
        scores = np.max(np.asarray(w)[None, :] * np.abs(F - zarr[None, :]), axis=1)
        best = scores.min()
        tied = [i for i in range(len(candidates)) if scores[i] == best]
        if len(tied) > 1 and prev[v] is not None:
            fresh = [i for i in tied if candidates[i].x != prev[v].x]
            if fresh:
                tied = fresh
        newest = max(candidates[i].birth for i in tied)
        tied = [i for i in tied if candidates[i].birth == newest]
        reps.append(candidates[tied[0]])
    return reps


@dataclass(frozen=True)
class TraceRecord:
    """One (iteration, vector) observation of a representative solution."""

    iteration: int
    vector: int
    loc: LocationKey
    objectives: tuple[float, ...]
    scalar: float
    birth: int


@dataclass
class RunTrace:
    """All trace records of one run, with the metadata to reproduce it."""

    algo: str
    problem: str
    run: int
    seed: int
    config_digest: str
    n_vectors: int
    precision: float
    records: list[TraceRecord] = field(default_factory=list)


class TraceBuilder:
    """Accumulates per-iteration representative records during a run."""

    def __init__(
        self,
        algo: str,
        problem: str,
        run: int,
        vectors: Sequence[WeightVector],
        precision: float,
        seed: int,
        config_digest: str = "",
    ):
        self.algo = algo
        self.problem = problem
        self.run = run
        self.vectors = [tuple(v) for v in vectors]
        self.precision = precision
        self.seed = seed
        self.config_digest = config_digest
        self.records: list[TraceRecord] = []
        self._prev: list[Solution | None] = [None] * len(self.vectors)

    def observe(self, iteration: int, population: Sequence[Solution], z: Sequence[float]) -> None:
        candidates = select_candidates(population, len(self.vectors))
        reps = assign_representatives(candidates, self.vectors, z, self._prev)
        for v, rep in enumerate(reps):
            self.records.append(
                TraceRecord(
                    iteration=iteration,
                    vector=v,
                    loc=location_of(rep.x, self.precision),
                    objectives=rep.f,
                    scalar=tchebycheff(rep.f, self.vectors[v], z),
                    birth=rep.birth,
                )
            )
            self._prev[v] = rep

    def finish(self) -> RunTrace:
        return RunTrace(
            algo=self.algo,
            problem=self.problem,
            run=self.run,
            seed=self.seed,
            config_digest=self.config_digest,
            n_vectors=len(self.vectors),
            precision=self.precision,
            records=list(self.records),
        )


# -- trace file format ---------------------------------------------------------
#
# UTF-8 CSV, LF line endings.  A comment line carries the run metadata, then
# the fixed header.  Floats use 17 significant digits (round-trip exact),
# `loc` joins the cube indices with underscores, and `f3` is empty for
# two-objective problems.

def _fmt(v: float) -> str:
    return format(v, ".17g")


def write_trace(trace: RunTrace, sink: str | Path | IO[str]) -> None:
    """Serialize a run trace; bit-exact and order-preserving."""
    if isinstance(sink, (str, Path)):
        with open(sink, "w", encoding="utf-8", newline="\n") as fh:
            _write_trace(trace, fh)
    else:
        _write_trace(trace, sink)


def _write_trace(trace: RunTrace, fh: IO[str]) -> None:
    fh.write(
        f"# mostn-trace algo={trace.algo} problem={trace.problem} run={trace.run}"
        f" seed={trace.seed} n_vectors={trace.n_vectors}"
        f" precision={_fmt(trace.precision)} config={trace.config_digest}\n"
    )
    fh.write(TRACE_HEADER + "\n")
    for r in trace.records:
        loc = "_".join(str(i) for i in r.loc)
        f3 = _fmt(r.objectives[2]) if len(r.objectives) > 2 else ""
        fh.write(
            f"{trace.algo},{trace.problem},{trace.run},{r.iteration},{r.vector},"
            f"{loc},{_fmt(r.objectives[0])},{_fmt(r.objectives[1])},{f3},"
            f"{_fmt(r.scalar)},{r.birth}\n"
        )


def read_trace(source: str | Path | IO[str]) -> RunTrace:
    """Parse one trace file back into a RunTrace."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as fh:
            return _read_trace(fh, str(source))
    return _read_trace(source, getattr(source, "name", "<stream>"))


def _read_trace(fh: IO[str], name: str) -> RunTrace:
    meta: dict[str, str] = {}
    records: list[TraceRecord] = []
    header_seen = False
    trace: RunTrace | None = None
    for lineno, raw in enumerate(fh, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line:
            continue
        if line.startswith("#"):
            for token in line[1:].split():
                if "=" in token:
                    k, _, val = token.partition("=")
                    meta[k] = val
            continue
        if not header_seen:
            if line != TRACE_HEADER:
                raise TraceParseError(f"{name}:{lineno}: unexpected header {line!r}")
            header_seen = True
            continue
        parts = line.split(",")
        if len(parts) != 11:
            raise TraceParseError(f"{name}:{lineno}: expected 11 fields, got {len(parts)}")
        try:
            algo, problem, run_s, iter_s, vec_s, loc_s, f1, f2, f3, scalar, birth = parts
            loc = tuple(int(t) for t in loc_s.split("_"))
            objectives = (float(f1), float(f2)) if f3 == "" else (float(f1), float(f2), float(f3))
            record = TraceRecord(
                iteration=int(iter_s),
                vector=int(vec_s),
                loc=loc,
                objectives=objectives,
                scalar=float(scalar),
                birth=int(birth),
            )
        except ValueError as exc:
            raise TraceParseError(f"{name}:{lineno}: {exc}") from exc
        if trace is None:
            trace = RunTrace(
                algo=algo,
                problem=problem,
                run=int(run_s),
                seed=int(meta.get("seed", "0")),
                config_digest=meta.get("config", ""),
                n_vectors=int(meta.get("n_vectors", "0")),
                precision=float(meta.get("precision", "0.001")),
            )
        elif (algo, problem, int(run_s)) != (trace.algo, trace.problem, trace.run):
            raise TraceParseError(f"{name}:{lineno}: mixed run identities in one file")
        records.append(record)
    if not header_seen:
        raise TraceParseError(f"{name}: missing header line")
    if trace is None:
        trace = RunTrace(
            algo=meta.get("algo", ""),
            problem=meta.get("problem", ""),
            run=int(meta.get("run", "0")),
            seed=int(meta.get("seed", "0")),
            config_digest=meta.get("config", ""),
            n_vectors=int(meta.get("n_vectors", "0")),
            precision=float(meta.get("precision", "0.001")),
        )
    trace.records = records
    if trace.n_vectors == 0 and records:
        trace.n_vectors = max(r.vector for r in records) + 1
    return trace
