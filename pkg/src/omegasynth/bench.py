"""Benchmark harness: synthesize every automaton in a corpus with each method
and tabulate the compactness metrics."""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from statistics import mean

from .automata import NBA, AutomatonError, accepting_source_states, degeneralize
from .elimination import EliminationOrder
from .expr.metrics import measure
from .expr.simplify import DEFAULT_RULES, simplify
from .formats import InputError, load
from .synthesis import SynthesisMethod, synthesize_state_based, synthesize_transition
from .timeouts import PhaseTimeout, time_limit

CSV_COLUMNS = [
    "file", "method", "simplified", "status", "states", "acc_sources",
    "pairs", "rpn", "tllen", "h", "elapsed_ms",
]
METRICS = ("rpn", "tllen", "h")


@dataclass
class BenchRecord:
    file: str
    method: str
    simplified: bool
    status: str = "ok"
    states: int | None = None
    acc_sources: int | None = None
    pairs: int | None = None
    rpn: int | None = None
    tllen: int | None = None
    h: int | None = None
    elapsed_ms: float | None = None
    source: str = ""
    error: str = ""

    def __post_init__(self):
        if self.status == "ok" and None in (self.rpn, self.tllen, self.h):
            raise ValueError("ok records need all metrics")

    def row(self) -> dict:
        d = asdict(self)
        d["simplified"] = "yes" if self.simplified else "no"
        if self.elapsed_ms is not None:
            d["elapsed_ms"] = f"{self.elapsed_ms:.3f}"
        return {k: ("" if d[k] is None else d[k]) for k in CSV_COLUMNS}


def corpus_files(corpus: Path) -> list[Path]:
    """Primary inputs of a corpus directory; ``x.sba.hoa`` files are only
    used as the paired state-based counterpart of ``x.tba.hoa``."""
    files = []
    for p in sorted(corpus.iterdir()):
        if not p.is_file() or p.suffix not in (".hoa", ".json"):
            continue
        if p.name.endswith((".sba.hoa", ".sba.json")):
            continue
        files.append(p)
    return files


def _paired(path: Path) -> Path | None:
    for tba, sba in ((".tba.hoa", ".sba.hoa"), (".tba.json", ".sba.json")):
        if path.name.endswith(tba):
            cand = path.with_name(path.name[: -len(tba)] + sba)
            if cand.exists():
                return cand
    return None


def _run_method(nba: NBA, method: str, path: Path, order, simplify_modes, timeout):
    rows = []
    source = ""
    t0 = time.perf_counter()
    with time_limit(timeout, "synthesis"):
        if method == SynthesisMethod.TRANSITION.value:
            target = nba
            n_acc = len(accepting_source_states(nba))
            expr = synthesize_transition(nba, order)
        else:
            paired = _paired(path)
            if paired is not None:
                target, source = load(paired), "paired"
            else:
                target, source = degeneralize(nba), "degeneralized"
            n_acc = len(target.accepting_states)
            expr = synthesize_state_based(target, order)
    synth_time = time.perf_counter() - t0
    base = dict(
        file=path.name, method=method, states=target.num_states,
        acc_sources=n_acc, pairs=len(target.initial) * n_acc, source=source,
    )
    for simplified in simplify_modes:
        t = time.perf_counter()
        try:
            out = expr
            if simplified:
                with time_limit(timeout, "synthesis"):
                    out = simplify(expr, DEFAULT_RULES)
            extra = time.perf_counter() - t
            with time_limit(timeout, "metrics"):
                m = measure(out)
        except PhaseTimeout:
            rows.append(BenchRecord(**base, simplified=simplified, status="timeout"))
            continue
        rows.append(BenchRecord(
            **base, simplified=simplified, rpn=m.rpn, tllen=m.tllen, h=m.star_height,
            elapsed_ms=(synth_time + extra) * 1000,
        ))
    return rows


def bench_file(path: Path, methods, simplify_modes, order=EliminationOrder.LOWEST_INDEX_FIRST, timeout=None):
    path = Path(path)
    try:
        nba = load(path)
        if not nba.is_transition_based:
            raise AutomatonError("corpus inputs must be transition-based")
    except (InputError, AutomatonError) as exc:
        return [
            BenchRecord(path.name, m, s, status="error", error=str(exc))
            for m in methods for s in simplify_modes
        ]
    rows = []
    for method in methods:
        try:
            rows += _run_method(nba, method, path, order, simplify_modes, timeout)
        except PhaseTimeout:
            rows += [BenchRecord(path.name, method, s, status="timeout") for s in simplify_modes]
        except (InputError, AutomatonError) as exc:
            rows += [BenchRecord(path.name, method, s, status="error", error=str(exc)) for s in simplify_modes]
    return rows


def _bench_star(args):
    return bench_file(*args)


def run_bench(corpus, methods=("transition", "state"), simplify_modes=(False, True),
              order=EliminationOrder.LOWEST_INDEX_FIRST, timeout=None, jobs: int = 1):
    """All records, in corpus order then method then simplification mode."""
    files = corpus_files(Path(corpus))
    jobs_args = [(f, list(methods), list(simplify_modes), order, timeout) for f in files]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            chunks = list(pool.map(_bench_star, jobs_args))
    else:
        chunks = [_bench_star(a) for a in jobs_args]
    return [r for chunk in chunks for r in chunk]


def write_csv(records, out) -> None:
    writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in records:
        writer.writerow(r.row())


def summarize(records, baseline="state", candidate="transition") -> dict:
    """Per simplification mode: mean percentage decrease of each metric from
    ``baseline`` to ``candidate`` and the decrease/equal/increase counts.
    Files where either side did not finish are left out."""
    out = {}
    modes = sorted({r.simplified for r in records})
    for simplified in modes:
        by_file: dict[str, dict[str, BenchRecord]] = {}
        for r in records:
            if r.simplified == simplified and r.status == "ok":
                by_file.setdefault(r.file, {})[r.method] = r
        pairs = [(d[baseline], d[candidate]) for d in by_file.values()
                 if baseline in d and candidate in d]
        mode = {"files": len(pairs)}
        for metric in METRICS:
            base = [getattr(b, metric) for b, _ in pairs]
            cand = [getattr(c, metric) for _, c in pairs]
            decreases = [(b - c) / b * 100 for b, c in zip(base, cand) if b > 0]
            mode[metric] = {
                "mean_decrease_pct": mean(decreases) if decreases else 0.0,
                "down": sum(c < b for b, c in zip(base, cand)),
                "equal": sum(c == b for b, c in zip(base, cand)),
                "up": sum(c > b for b, c in zip(base, cand)),
                f"mean_{baseline}": mean(base) if base else 0.0,
                f"mean_{candidate}": mean(cand) if cand else 0.0,
            }
        sources = [d[baseline].source for d in by_file.values() if baseline in d]
        mode["sources"] = {s: sources.count(s) for s in sorted(set(sources)) if s}
        out["yes" if simplified else "no"] = mode
    return out


def format_summary(summary: dict, baseline="state", candidate="transition") -> str:
    buf = io.StringIO()
    for mode, data in summary.items():
        src = ", ".join(f"{k} {v}" for k, v in data["sources"].items()) or "n/a"
        buf.write(
            f"simplified={mode}  files={data['files']}  "
            f"{baseline}-based source: {src}\n"
        )
        buf.write(f"{'metric':<8}{'mean %dec':>10}{'↓':>6}{'=':>6}{'↑':>6}"
                  f"{'mean ' + candidate:>18}{'mean ' + baseline:>14}\n")
        for metric in METRICS:
            m = data[metric]
            buf.write(
                f"{metric:<8}{m['mean_decrease_pct']:>10.1f}{m['down']:>6}{m['equal']:>6}{m['up']:>6}"
                f"{m['mean_' + candidate]:>18.1f}{m['mean_' + baseline]:>14.1f}\n"
            )
    return buf.getvalue()
