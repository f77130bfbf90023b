"""Benchmark driver: operation counts, wall-clock timing and verification runs.

Example::

    fastpcmm-bench --algo all --n 8,16,32 --t 4,8 --trials 10 --out counts.csv
    fastpcmm-bench --mode verify --algo proposed --n 8 --t 8 --trials 5
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import random
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from . import costmodel
from .backends import DEFAULT_PAILLIER_BITS, make_backend
from .counters import OpCounter
from .cussen import DEFAULT_ITERATIONS, compress, vs_mul_encrypted
from .elgamal import MAX_BOUND, serialize_ciphertext
from .pcmm import matmul_plain_oracle, pcmm_proposed, pcmm_schoolbook, pcmm_strassen

log = logging.getLogger(__name__)

ALGOS = ("schoolbook", "strassen", "proposed")
SCHEMES = ("ec-elgamal", "paillier")
MODES = ("count", "time", "verify")
ENGINES = {"schoolbook": pcmm_schoolbook, "strassen": pcmm_strassen, "proposed": pcmm_proposed}


class SpecError(ValueError):
    """The experiment description is invalid or infeasible."""


@dataclass
class ExperimentSpec:
    algos: tuple[str, ...] = ALGOS
    scheme: str = "ec-elgamal"
    ns: tuple[int, ...] = (8,)
    ts: tuple[int, ...] = (4,)
    trials: int = 1
    seed: int = 0
    iterations: int = DEFAULT_ITERATIONS
    mode: str = "count"
    out: Path | None = None
    kind: str = "matrix"
    max_encrypted_n: int = 64
    paillier_bits: int = DEFAULT_PAILLIER_BITS
    jobs: int = 1
    dump: Path | None = None

    def validate(self) -> None:
        if not self.algos or any(a not in ALGOS for a in self.algos):
            raise SpecError(f"algorithms must be drawn from {ALGOS}")
        if self.scheme not in SCHEMES:
            raise SpecError(f"unknown scheme {self.scheme!r}")
        if self.mode not in MODES:
            raise SpecError(f"unknown mode {self.mode!r}")
        if self.kind not in ("matrix", "vector"):
            raise SpecError(f"unknown kind {self.kind!r}")
        if self.kind == "vector" and "strassen" in self.algos:
            raise SpecError("strassen has no vector variant")
        if not self.ns or any(n < 1 for n in self.ns):
            raise SpecError("n values must be >= 1")
        if not self.ts or any(not 1 <= t <= 16 for t in self.ts):
            raise SpecError("t values must lie in [1, 16]")
        if self.trials < 1:
            raise SpecError("trials must be >= 1")
        if not 1 <= self.iterations <= 8:
            raise SpecError("iterations must lie in [1, 8]")
        if "strassen" in self.algos and self.kind == "matrix":
            if any(n & (n - 1) for n in self.ns):
                raise SpecError("strassen needs power-of-two n")
        if self.mode != "count":
            if max(self.ns) > self.max_encrypted_n:
                raise SpecError(
                    f"encrypted runs capped at n <= {self.max_encrypted_n}; raise --max-encrypted-n"
                )
            if self.scheme == "ec-elgamal":
                for n in self.ns:
                    for t in self.ts:
                        if n << (2 * t) > MAX_BOUND:
                            raise SpecError(f"message bound n*2^(2t) for n={n}, t={t} exceeds 2^42")


@dataclass
class ResultRow:
    algo: str
    scheme: str
    n: int
    t: int
    trial: int
    seed: int
    ecsm_count: int
    point_add_count: int
    mod_mul_count: int
    equiv_adds: int
    wall_ns: int | None = None
    verified: bool | None = None


COLUMNS = [f.name for f in fields(ResultRow)]


def _instance(spec: ExperimentSpec, n: int, t: int, trial: int):
    """Seeded operands shared by every algorithm for the same cell and trial."""
    rng = random.Random(f"{spec.seed}-{spec.kind}-{n}-{t}-{trial}")
    hi = 1 << t
    if spec.kind == "vector":
        return [[rng.randrange(hi)] for _ in range(n)], [[rng.randrange(hi)]], rng
    A = [[rng.randrange(hi) for _ in range(n)] for _ in range(n)]
    B = [[rng.randrange(hi) for _ in range(n)] for _ in range(n)]
    return A, B, rng


def _count_row(spec: ExperimentSpec, algo: str, n: int, t: int, trial: int) -> ResultRow:
    c = 2 if spec.scheme == "ec-elgamal" else 1
    if spec.kind == "vector":
        if algo == "schoolbook":
            scalar_muls, adds = n, 0
        else:
            a, _, _ = _instance(spec, n, t, trial)
            counts = compress([r[0] for r in a], spec.iterations).counts
            scalar_muls, adds = counts.mult_count, counts.add_count
        eq = c * (scalar_muls * 2 * t + adds)
    elif algo == "schoolbook":
        scalar_muls, adds = n**3, n * n * (n - 1)
        eq = costmodel.equiv_analytic("schoolbook_mat", n, t, c).total
    elif algo == "strassen":
        scalar_muls, adds = 7 ** (n.bit_length() - 1), costmodel.strassen_block_adds(n)
        eq = costmodel.equiv_analytic("strassen_mat", n, t, c).total
    else:
        A, _, _ = _instance(spec, n, t, trial)
        per_col = [compress([A[i][k] for i in range(n)], spec.iterations).counts for k in range(n)]
        scalar_muls = n * sum(pc.mult_count for pc in per_col)
        adds = n * sum(pc.add_count for pc in per_col) + n * n * (n - 1)
        eq = costmodel.equiv_proposed(n, t, per_col, n, n, c).total
    return _row(spec, algo, n, t, trial, c * scalar_muls, c * adds, eq)


def _row(spec, algo, n, t, trial, ladders, standalone, eq, wall_ns=None, verified=None):
    ec = spec.scheme == "ec-elgamal"
    return ResultRow(
        algo=algo,
        scheme=spec.scheme,
        n=n,
        t=t,
        trial=trial,
        seed=spec.seed,
        ecsm_count=ladders,
        point_add_count=standalone if ec else 0,
        mod_mul_count=0 if ec else standalone,
        equiv_adds=eq,
        wall_ns=wall_ns,
        verified=verified,
    )


def _encrypted_rows(spec: ExperimentSpec, n: int, t: int) -> list[ResultRow]:
    rows = []
    for trial in range(spec.trials):
        A, B, rng = _instance(spec, n, t, trial)
        backend = make_backend(
            spec.scheme,
            seed=rng.getrandbits(64),
            bound=max(n << (2 * t), 2),
            paillier_bits=spec.paillier_bits,
        )
        Benc = backend.encrypt_matrix(B)
        expected = matmul_plain_oracle(A, B)
        for algo in spec.algos:
            counter = OpCounter()
            start = time.perf_counter_ns()
            if spec.kind == "vector":
                if algo == "schoolbook":
                    col = [backend.scheme.scalar_mul(r[0], Benc[0][0], t, counter) for r in A]
                else:
                    col = vs_mul_encrypted(
                        [r[0] for r in A], Benc[0][0], backend.scheme, t, spec.iterations, counter
                    )
                C = [[c] for c in col]
            elif algo == "proposed":
                C = pcmm_proposed(A, Benc, backend.scheme, t, spec.iterations, counter)
            else:
                C = ENGINES[algo](A, Benc, backend.scheme, t, counter)
            elapsed = time.perf_counter_ns() - start
            verified = None
            if spec.mode == "verify":
                verified = backend.decrypt_matrix(C) == expected
                if not verified:
                    log.error("verification failed: %s n=%d t=%d trial=%d", algo, n, t, trial)
            if spec.dump is not None and spec.scheme == "ec-elgamal":
                path = Path(f"{spec.dump}.{algo}.n{n}.t{t}.trial{trial}.bin")
                path.write_bytes(b"".join(serialize_ciphertext(c) for row in C for c in row))
            eq = costmodel.counter_to_equiv(counter)
            ladders = counter.ecsm_count + counter.modexp_count
            standalone = counter.standalone_point_ops + counter.standalone_mod_ops
            rows.append(
                _row(
                    spec, algo, n, t, trial, ladders, standalone, eq.total,
                    wall_ns=elapsed if spec.mode == "time" else None,
                    verified=verified,
                )
            )
    return rows


def _cell(spec: ExperimentSpec, n: int, t: int) -> list[ResultRow]:
    if spec.mode == "count":
        return [
            _count_row(spec, algo, n, t, trial)
            for trial in range(spec.trials)
            for algo in spec.algos
        ]
    return _encrypted_rows(spec, n, t)


def run_experiment(spec: ExperimentSpec) -> list[ResultRow]:
    """Rows for every (n, t, trial, algo) of the spec, in a fixed order.

    Count mode is analytic for schoolbook and Strassen and samples compression
    counts for the proposed engine; no key material is generated. Time mode
    always runs in this process.
    """
    spec.validate()
    cells = [(n, t) for n in spec.ns for t in spec.ts]
    if spec.jobs > 1 and spec.mode != "time":
        with ProcessPoolExecutor(spec.jobs) as pool:
            chunks = list(pool.map(_cell, [spec] * len(cells), *zip(*cells)))
    else:
        chunks = [_cell(spec, n, t) for n, t in cells]
    return [row for chunk in chunks for row in chunk]


def compute_speedup(rows_base: list[ResultRow], rows_new: list[ResultRow], metric: str = "equiv_adds"):
    """Per-(n, t) ratio of mean ``metric`` of the base rows over the new rows."""

    def means(rows):
        acc: dict[tuple[int, int], list[float]] = {}
        for r in rows:
            v = getattr(r, metric)
            if v is None:
                raise ValueError(f"rows carry no {metric}")
            acc.setdefault((r.n, r.t), []).append(v)
        return {k: statistics.fmean(v) for k, v in acc.items()}

    base, new = means(rows_base), means(rows_new)
    if base.keys() != new.keys():
        raise ValueError("speedup grids do not match")
    return {k: base[k] / new[k] for k in sorted(base)}


def render_speedup(table: dict[tuple[int, int], float]) -> str:
    ts = sorted({t for _, t in table})
    ns = sorted({n for n, _ in table})
    lines = ["n\t" + "\t".join(f"t={t}" for t in ts)]
    for n in ns:
        cells = [f"{table[(n, t)]:.2f}" if (n, t) in table else "" for t in ts]
        lines.append(f"{n}\t" + "\t".join(cells))
    return "\n".join(lines)


def emit_csv(rows: list[ResultRow], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(COLUMNS)
        for r in rows:
            writer.writerow(["" if v is None else v for v in (getattr(r, c) for c in COLUMNS)])


def read_csv(path) -> list[ResultRow]:
    def conv(name, raw):
        if raw == "":
            return None
        if name in ("algo", "scheme"):
            return raw
        if name == "verified":
            return raw == "True"
        return int(raw)

    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != COLUMNS:
            raise ValueError(f"unexpected header {reader.fieldnames}")
        return [ResultRow(**{k: conv(k, v) for k, v in rec.items()}) for rec in reader]


def emit_json(rows: list[ResultRow], path) -> None:
    Path(path).write_text(json.dumps([asdict(r) for r in rows], indent=1) + "\n", encoding="utf-8")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fastpcmm-bench", description=__doc__.splitlines()[0])
    p.add_argument("--algo", default="all", choices=ALGOS + ("all",))
    p.add_argument("--scheme", default="ec-elgamal", choices=SCHEMES)
    p.add_argument("--kind", default="matrix", choices=("matrix", "vector"),
                   help="matrix PC-MM or plaintext-vector times ciphertext-scalar")
    p.add_argument("--n", type=_int_list, default=(8,), help="comma-separated dimensions")
    p.add_argument("--t", type=_int_list, default=(4,), help="comma-separated bit-widths")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=DEFAULT_ITERATIONS)
    p.add_argument("--mode", default="count", choices=MODES)
    p.add_argument("--out", type=Path)
    p.add_argument("--json", action="store_true", help="also write a JSON mirror next to --out")
    p.add_argument("--max-encrypted-n", type=int, default=64)
    p.add_argument("--paillier-bits", type=int, default=DEFAULT_PAILLIER_BITS)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--dump", type=Path, help="write output ciphertexts (EC only) with this prefix")
    p.add_argument("--speedup", action="store_true",
                   help="print schoolbook/strassen over proposed ratios of equiv_adds (or wall_ns)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    spec = ExperimentSpec(
        algos=ALGOS if args.algo == "all" else (args.algo,),
        scheme=args.scheme,
        ns=args.n,
        ts=args.t,
        trials=args.trials,
        seed=args.seed,
        iterations=args.iters,
        mode=args.mode,
        out=args.out,
        kind=args.kind,
        max_encrypted_n=args.max_encrypted_n,
        paillier_bits=args.paillier_bits,
        jobs=args.jobs,
        dump=args.dump,
    )
    if spec.kind == "vector" and args.algo == "all":
        spec.algos = ("schoolbook", "proposed")
    try:
        rows = run_experiment(spec)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if spec.out is not None:
        emit_csv(rows, spec.out)
        if args.json:
            emit_json(rows, spec.out.with_suffix(".json"))
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(COLUMNS)
        for r in rows:
            writer.writerow(["" if v is None else v for v in (getattr(r, c) for c in COLUMNS)])

    if args.speedup and "proposed" in spec.algos:
        metric = "wall_ns" if spec.mode == "time" else "equiv_adds"
        new = [r for r in rows if r.algo == "proposed"]
        for base in spec.algos:
            if base == "proposed":
                continue
            table = compute_speedup([r for r in rows if r.algo == base], new, metric)
            print(f"\n{base} / proposed ({metric})", file=sys.stderr)
            print(render_speedup(table), file=sys.stderr)

    if spec.mode == "verify" and not all(r.verified for r in rows):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
