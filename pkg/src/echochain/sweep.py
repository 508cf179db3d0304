"""Poincare-sphere sweeps, spectral reports, saturation tables, CSV output."""

from __future__ import annotations

import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields

import numpy as np

from .chain import assemble_dense, build_floquet_pair
from .coherent import CoherentSpec, build_coherent_state, enumerate_grid
from .config import IprBasisChoice, RunConfig
from .dynamics import FidelitySeries, asymptotic_fidelity, fidelity_series
from .linalg import RngStream, unitary_eig
from .measures import compute_report
from .symmetry import (
    BasisKind,
    SpectralReport,
    build_sector,
    ipr,
    sector_basis_matrix,
    sector_matrix,
    spacing_histogram,
    spacing_statistics,
)

FULL_BASIS_QUBIT_CAP = 12
OPS_WARN_THRESHOLD = 1e12
WORKERS_ENV_VAR = "ECHOCHAIN_WORKERS"


@dataclass(frozen=True)
class SweepRow:
    theta: float
    phi: float
    hemisphere: str
    ipr: float
    blp: float
    rhp: float
    nd_max: float
    nd_avg: float
    ng_max: float
    ng_avg: float
    f_asym: float
    f_amp_asym: float
    clamp_events: float


CSV_FIELDS = tuple(f.name for f in fields(SweepRow))


@dataclass(frozen=True, eq=False)
class _SweepContext:
    config: RunConfig
    pairs: tuple
    eigs: tuple
    projector: np.ndarray | None  # momentum-basis columns, None on the full path
    basis_kind: BasisKind


def estimated_amplitude_ops(config: RunConfig) -> float:
    """Rough amplitude-operation count of the evolution part of a sweep."""
    points = len(config.grid.thetas) * len(config.grid.phis)
    per_step = 2 * config.n_qubits * (1 << config.n_qubits)
    return float(points) * config.t_cut * per_step * config.gue_samples


def _prepare_context(config: RunConfig) -> _SweepContext:
    params = config.chain_params
    pairs = tuple(
        build_floquet_pair(params, RngStream(config.seed, m)) for m in range(config.gue_samples)
    )
    choice = config.resolved_ipr_basis
    if choice is IprBasisChoice.SECTOR_K0:
        basis = build_sector(config.n_qubits, 0)
        projector = sector_basis_matrix(basis)
        eigs = tuple(unitary_eig(sector_matrix(pair.plus, basis)) for pair in pairs)
        kind = BasisKind.SECTOR_K0
    else:
        if config.n_qubits > FULL_BASIS_QUBIT_CAP:
            raise ValueError(
                f"FULL eigenbasis refused above {FULL_BASIS_QUBIT_CAP} qubits"
            )
        projector = None
        eigs = tuple(unitary_eig(assemble_dense(pair.plus)) for pair in pairs)
        kind = BasisKind.FULL
    return _SweepContext(config, pairs, eigs, projector, kind)


def _row_for_point(ctx: _SweepContext, spec: CoherentSpec) -> SweepRow:
    config = ctx.config
    psi = build_coherent_state(spec, config.n_qubits)
    ipr_state = psi if ctx.projector is None else ctx.projector.conj().T @ psi
    per_sample: list[tuple[float, ...]] = []
    for pair, eig in zip(ctx.pairs, ctx.eigs):
        series = fidelity_series(pair, psi, config.t_cut)
        report = compute_report(series, normalize=config.normalize_by_tcut)
        tail = asymptotic_fidelity(series, config.tail_window_fraction)
        ipr_value = ipr(ipr_state, eig, ctx.basis_kind).value
        per_sample.append(
            (
                ipr_value,
                report.blp,
                report.rhp,
                report.nd_max,
                report.nd_avg,
                report.ng_max,
                report.ng_avg,
                tail.mean_F2,
                tail.mean_F,
                float(report.clamp_events),
            )
        )
    means = np.mean(np.asarray(per_sample), axis=0)
    row = SweepRow(spec.theta, spec.phi, spec.hemisphere, *(float(x) for x in means))
    if not config.normalize_by_tcut and row.rhp != row.ng_max:
        raise RuntimeError("row identity rhp == ng_max violated")
    if row.nd_avg > row.nd_max + 1e-12:
        raise RuntimeError("row invariant nd_avg <= nd_max violated")
    return row


_WORKER_CTX: _SweepContext | None = None


def _init_worker(ctx: _SweepContext) -> None:
    global _WORKER_CTX
    _WORKER_CTX = ctx


def _worker_task(item: tuple[int, CoherentSpec]) -> tuple[int, SweepRow]:
    index, spec = item
    assert _WORKER_CTX is not None
    return index, _row_for_point(_WORKER_CTX, spec)


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV_VAR, "").strip()
    if raw:
        n = int(raw)
        if n < 1:
            raise ValueError(f"{WORKERS_ENV_VAR} must be >= 1")
        return n
    return os.cpu_count() or 1


def run_sweep(config: RunConfig) -> list[SweepRow]:
    """One row per grid point, in grid order regardless of execution order."""
    estimate = estimated_amplitude_ops(config)
    if estimate > OPS_WARN_THRESHOLD:
        warnings.warn(
            f"sweep estimated at ~{estimate:.1e} amplitude operations; expect a long run",
            stacklevel=2,
        )
    ctx = _prepare_context(config)
    points = enumerate_grid(config.grid)
    workers = worker_count()
    if workers <= 1 or len(points) <= 1:
        return [_row_for_point(ctx, spec) for spec in points]
    rows: list[SweepRow | None] = [None] * len(points)
    chunksize = max(1, len(points) // (workers * 4))
    with ProcessPoolExecutor(
        max_workers=workers, initializer=_init_worker, initargs=(ctx,)
    ) as pool:
        for index, row in pool.map(_worker_task, enumerate(points), chunksize=chunksize):
            rows[index] = row
    return rows  # type: ignore[return-value]


def _format_cell(value) -> str:
    return value if isinstance(value, str) else "%.10g" % value


def write_sweep_csv(rows: list[SweepRow], path: str) -> None:
    """Deterministic CSV: exact field-name header, 10 significant digits, LF."""
    lines = [",".join(CSV_FIELDS)]
    lines.extend(",".join(_format_cell(v) for v in astuple(row)) for row in rows)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def run_spectral(config: RunConfig) -> SpectralReport:
    """Spacing statistics and Brody fit for the U+ propagator."""
    pair = build_floquet_pair(config.chain_params, RngStream(config.seed, 0))
    return spacing_statistics(pair.plus, config.n_qubits)


def write_spacing_histogram(report: SpectralReport, path: str) -> None:
    centers, density = spacing_histogram(report.spacings)
    lines = [f"{c:.10g} {d:.10g}" for c, d in zip(centers, density)]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


@dataclass(frozen=True)
class SaturationRow:
    t_cut: int
    blp: float
    rhp: float
    nd_max: float
    nd_avg: float
    ng_max: float
    ng_avg: float
    blp_per_step: float
    rhp_per_step: float


SATURATION_FIELDS = tuple(f.name for f in fields(SaturationRow))


def run_saturation(
    config: RunConfig, spec: CoherentSpec, checkpoints: list[int]
) -> list[SaturationRow]:
    """Measures on prefixes of a single evolution, one row per cutoff time."""
    if not checkpoints or sorted(checkpoints) != list(checkpoints) or checkpoints[0] < 1:
        raise ValueError("checkpoints must be ascending positive integers")
    pair = build_floquet_pair(config.chain_params, RngStream(config.seed, 0))
    psi = build_coherent_state(spec, config.n_qubits)
    full = fidelity_series(pair, psi, checkpoints[-1])
    rows = []
    for t in checkpoints:
        prefix = FidelitySeries(full.f[: t + 1], t, full.params_fingerprint)
        report = compute_report(prefix)
        rows.append(
            SaturationRow(
                t, report.blp, report.rhp, report.nd_max, report.nd_avg,
                report.ng_max, report.ng_avg, report.blp / t, report.rhp / t,
            )
        )
    return rows


def write_saturation_csv(rows: list[SaturationRow], path: str) -> None:
    lines = [",".join(SATURATION_FIELDS)]
    lines.extend(",".join(_format_cell(v) for v in astuple(row)) for row in rows)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
