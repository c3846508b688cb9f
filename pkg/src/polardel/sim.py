"""Monte-Carlo harness over an (n, rate) grid."""

import csv
import math
import sys
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .bounds import simulation_r
from .channels import DeletionParams, TrialRng, cascade_transmit, deletion_sets
from .listdecode import decode_received
from .polar import POLICIES, PolarCode, construct_code, polar_encode
from .precode import CrcSpec, Precode, RandomParitySpec, attach_redundancy

PRECODES = ("crc", "random-parity", "none")

CSV_HEADER = ("n,N,rate,k,r,p,d,trials,seed,err_exact,err_inlist,avg_list,"
              "avg_survivors,drops_ambiguous,drops_conflict,ms_per_trial")


class ExperimentError(RuntimeError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    n_values: Tuple[int, ...] = (6, 7, 8, 9, 10, 11)
    p: float = 0.3
    rates: Tuple[float, ...] = (0.5, 0.55, 0.6)
    r_override: Optional[int] = None
    precode: str = "crc"
    crc_polys: Dict[int, str] = field(default_factory=dict)
    d: int = 1
    deletion_mode: str = "uniform"
    fixed_positions: Tuple[int, ...] = ()
    trials: int = 1000
    seed: int = 0
    policy: str = "drop"
    prune_frozen_conflicts: bool = False
    design_p: Optional[float] = None

    def validate(self) -> None:
        if not self.n_values:
            raise ExperimentError("at least one block-length exponent is required")
        if any(n < 0 for n in self.n_values):
            raise ExperimentError("block-length exponents must be non-negative")
        if not 0.0 <= self.p <= 1.0:
            raise ExperimentError(f"erasure probability must lie in [0, 1], got {self.p}")
        if not self.rates:
            raise ExperimentError("at least one rate is required")
        for rate in self.rates:
            if not 0.0 < rate < 1.0 - self.p:
                raise ExperimentError(f"rate {rate} must lie in (0, 1 - p) = (0, {1 - self.p:g})")
        if self.trials < 1:
            raise ExperimentError("trials must be at least 1")
        if self.precode not in PRECODES:
            raise ExperimentError(f"precode must be one of {PRECODES}")
        if self.policy not in POLICIES:
            raise ExperimentError(f"ambiguity policy must be one of {POLICIES}")
        if self.r_override is not None and self.r_override < 0:
            raise ExperimentError("r must be non-negative")
        try:
            DeletionParams(self.d, self.deletion_mode, tuple(self.fixed_positions))
        except ValueError as exc:
            raise ExperimentError(str(exc)) from None
        for n in self.n_values:
            for rate in self.rates:
                build_cell(self, n, rate)


@dataclass(frozen=True, eq=False)
class Cell:
    n: int
    rate: float
    k: int
    r: int
    code: PolarCode
    precode: Precode

    @property
    def N(self) -> int:
        return 1 << self.n

    @property
    def precode_label(self) -> str:
        if isinstance(self.precode, CrcSpec):
            return self.precode.hex
        if isinstance(self.precode, RandomParitySpec):
            return f"random-parity(seed={self.precode.seed})"
        return "none"


def message_length(rate: float, N: int) -> int:
    """``ceil(rate * N)``, robust to binary representation of the rate."""
    return math.ceil(rate * N - 1e-9)


def build_cell(config: ExperimentConfig, n: int, rate: float) -> Cell:
    N = 1 << n
    k = message_length(rate, N)
    if config.precode == "none":
        r = 0
    elif config.r_override is not None:
        r = config.r_override
    else:
        r = simulation_r(N)
    if config.precode == "crc" and r < 1:
        raise ExperimentError("CRC precoding needs r >= 1")
    if k + r > N:
        raise ExperimentError(f"n={n}, rate={rate}: k + r = {k + r} exceeds N = {N}")
    if config.deletion_mode == "fixed" and any(not 0 <= i < N for i in config.fixed_positions):
        raise ExperimentError(f"n={n}: fixed deletion position out of range")
    if config.d > N:
        raise ExperimentError(f"n={n}: cannot delete {config.d} of {N} symbols")

    if config.precode == "crc":
        text = config.crc_polys.get(r)
        precode = CrcSpec.from_hex(text) if text else CrcSpec.default(r)
        if precode.r != r:
            raise ExperimentError(f"CRC generator {precode.hex} has degree {precode.r}, expected {r}")
    elif config.precode == "random-parity":
        seed = int(np.random.SeedSequence((config.seed & (2**64 - 1), n, k, r)).generate_state(1)[0])
        precode = RandomParitySpec.draw(k, r, seed)
    else:
        precode = None

    design_p = config.design_p
    if design_p is None:
        design_p = config.p if 0.0 < config.p < 1.0 else 0.5
    code = construct_code(N, design_p, k + r, r)
    return Cell(n, rate, k, r, code, precode)


@dataclass
class TrialOutcome:
    true_in_list: bool
    exact: bool
    selected_correct: bool
    list_size: int
    survivors: int
    candidates: int
    ambiguous: int
    conflicts: int
    seconds: float
    deleted: Tuple[int, ...] = ()


def run_trial(cell: Cell, config: ExperimentConfig, trial_index: int,
              positions: Optional[Sequence[int]] = None, backend: Optional[str] = None) -> TrialOutcome:
    """Encode a random message, send it through the cascade and decode it.

    ``positions`` forces the deleted positions (used by sweep mode); the
    message and erasure pattern depend only on ``(seed, trial_index)``.
    """
    gen = TrialRng(config.seed, trial_index).generator()
    message = gen.integers(0, 2, size=cell.k, dtype=np.uint8)
    precoded = attach_redundancy(message, cell.precode)
    codeword = polar_encode(precoded, cell.code)
    if positions is not None:
        deletion = DeletionParams(config.d, "fixed", tuple(positions))
    elif config.deletion_mode == "fixed":
        deletion = DeletionParams(config.d, "fixed", tuple(config.fixed_positions))
    else:
        deletion = DeletionParams(config.d, "uniform")
    received, deleted = cascade_transmit(codeword, config.p, deletion, gen)

    start = time.perf_counter()
    out = decode_received(received, cell.code, cell.precode, config.d, config.policy,
                          config.prune_frozen_conflicts, backend)
    elapsed = time.perf_counter() - start

    exact = len(out.survivors) == 1 and np.array_equal(out.survivors[0].vector, precoded)
    selected_ok = out.selected is not None and np.array_equal(out.selected, message)
    return TrialOutcome(
        true_in_list=out.contains(precoded),
        exact=exact,
        selected_correct=selected_ok,
        list_size=len(out.entries),
        survivors=len(out.survivors),
        candidates=out.candidates,
        ambiguous=out.ambiguous,
        conflicts=out.conflicts,
        seconds=elapsed,
        deleted=deleted,
    )


@dataclass
class ExperimentRecord:
    n: int
    N: int
    rate: float
    k: int
    r: int
    p: float
    d: int
    trials: int
    seed: int
    exact_count: int = 0
    inlist_count: int = 0
    selected_count: int = 0
    precrc_single_count: int = 0
    list_total: int = 0
    survivor_total: int = 0
    drops_ambiguous: int = 0
    drops_conflict: int = 0
    candidates_max: int = 0
    seconds: float = 0.0
    precode_label: str = ""

    @property
    def err_exact(self) -> float:
        return 1.0 - self.exact_count / self.trials

    @property
    def err_inlist(self) -> float:
        return 1.0 - self.inlist_count / self.trials

    @property
    def err_selected(self) -> float:
        return 1.0 - self.selected_count / self.trials

    @property
    def avg_list(self) -> float:
        return self.list_total / self.trials

    @property
    def avg_survivors(self) -> float:
        return self.survivor_total / self.trials

    @property
    def ms_per_trial(self) -> float:
        return 1000.0 * self.seconds / self.trials

    def add(self, t: TrialOutcome) -> None:
        self.exact_count += t.exact
        self.inlist_count += t.true_in_list
        self.selected_count += t.selected_correct
        self.precrc_single_count += t.list_size == 1 and t.true_in_list
        self.list_total += t.list_size
        self.survivor_total += t.survivors
        self.drops_ambiguous += t.ambiguous
        self.drops_conflict += t.conflicts
        self.candidates_max = max(self.candidates_max, t.candidates)
        self.seconds += t.seconds


def run_cell(cell: Cell, config: ExperimentConfig, backend: Optional[str] = None) -> ExperimentRecord:
    if config.deletion_mode == "sweep":
        sets = list(deletion_sets(cell.N, config.d))
    else:
        sets = [None]
    rec = ExperimentRecord(cell.n, cell.N, cell.rate, cell.k, cell.r, config.p, config.d,
                           config.trials * len(sets), config.seed,
                           precode_label=cell.precode_label)
    for t in range(config.trials):
        for positions in sets:
            rec.add(run_trial(cell, config, t, positions, backend))
    return rec


def run_experiment(config: ExperimentConfig, progress: Optional[Callable[[str], None]] = None,
                   backend: Optional[str] = None) -> List[ExperimentRecord]:
    """Run every (n, rate) cell; cells are visited n-major."""
    config.validate()
    records = []
    for n in config.n_values:
        for rate in config.rates:
            try:
                cell = build_cell(config, n, rate)
                if progress:
                    progress(f"n={n} N={cell.N} rate={rate:g} k={cell.k} r={cell.r} "
                             f"precode={cell.precode_label} trials={config.trials}")
                rec = run_cell(cell, config, backend)
            except Exception as exc:
                raise ExperimentError(f"cell n={n}, rate={rate:g} failed: {exc}") from exc
            if progress:
                progress(f"  err_exact={rec.err_exact:.4f} err_inlist={rec.err_inlist:.4f} "
                         f"avg_list={rec.avg_list:.2f} ms/trial={rec.ms_per_trial:.1f}")
            records.append(rec)
    return records


def csv_rows(records: Sequence[ExperimentRecord]) -> List[List[str]]:
    rows = []
    for r in records:
        rows.append([
            str(r.n), str(r.N), f"{r.rate:g}", str(r.k), str(r.r), f"{r.p:g}", str(r.d),
            str(r.trials), str(r.seed), f"{r.err_exact:.6f}", f"{r.err_inlist:.6f}",
            f"{r.avg_list:.6f}", f"{r.avg_survivors:.6f}", str(r.drops_ambiguous),
            str(r.drops_conflict), f"{r.ms_per_trial:.3f}",
        ])
    return rows


def write_csv(records: Sequence[ExperimentRecord], stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    writer.writerows(csv_rows(records))


def emit_csv(records: Sequence[ExperimentRecord], out_path) -> None:
    """Write records as CSV to ``out_path`` (``"-"`` for stdout)."""
    if not records:
        raise ValueError("no records to write")
    if str(out_path) == "-":
        write_csv(records, sys.stdout)
        return
    with open(out_path, "w", newline="") as fh:
        write_csv(records, fh)
