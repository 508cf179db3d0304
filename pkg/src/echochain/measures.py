"""Non-Markovianity measures computed from a fidelity-amplitude series.

All four families reduce to positive-increment scans of the discrete series:
blp sums rises of F, rhp sums rises of log F, and the max/average schemes
compare an indicator K (distinguishability D = F, or accumulated divisibility
violation G) against its running minimum or running mean.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .dynamics import FidelitySeries

F_FLOOR = 1e-12


class IndicatorKind(enum.Enum):
    D = "D"
    G = "G"


@dataclass(frozen=True, eq=False)
class IndicatorSeries:
    kind: IndicatorKind
    values: np.ndarray


def _clamped_log_increments(amplitude: np.ndarray) -> tuple[np.ndarray, int]:
    # F is floored at 1e-12 before the log; deep dips otherwise produce
    # arbitrarily large divisibility spikes. Clamped samples are counted.
    clamps = int(np.count_nonzero(amplitude < F_FLOOR))
    log_f = np.log(np.maximum(amplitude, F_FLOOR))
    return np.maximum(np.diff(log_f), 0.0), clamps


def indicator_D(series: FidelitySeries) -> IndicatorSeries:
    """D(t) = F(t) = |f(t)|, the antipodal-equator-pair trace distance."""
    return IndicatorSeries(IndicatorKind.D, series.amplitude)


def indicator_G(series: FidelitySeries) -> IndicatorSeries:
    """G(0) = 0, G(t+1) = G(t) + max(0, log F(t+1) - log F(t))."""
    increments, _ = _clamped_log_increments(series.amplitude)
    return IndicatorSeries(IndicatorKind.G, np.concatenate([[0.0], np.cumsum(increments)]))


def blp(series: FidelitySeries) -> float:
    """Sum of positive increments of F."""
    return float(np.sum(np.maximum(np.diff(series.amplitude), 0.0)))


def rhp(series: FidelitySeries) -> float:
    """Sum of positive increments of log F; identically the final G value."""
    return float(indicator_G(series).values[-1])


def n_max(ind: IndicatorSeries) -> float:
    """max over end times of K(t_f) minus the minimum of K up to t_f."""
    v = ind.values
    return float(max(0.0, np.max(v - np.minimum.accumulate(v))))


def n_avg(ind: IndicatorSeries) -> float:
    """max over end times of K(t_f) minus the mean of K over earlier times."""
    v = ind.values
    if v.size < 2:
        return 0.0
    running_mean = np.cumsum(v)[:-1] / np.arange(1, v.size)
    return float(max(0.0, np.max(v[1:] - running_mean)))


@dataclass(frozen=True)
class NmReport:
    blp: float
    rhp: float
    nd_max: float
    nd_avg: float
    ng_max: float
    ng_avg: float
    t_cut: int
    normalized_by_tcut: bool
    clamp_events: int


def compute_report(series: FidelitySeries, normalize: bool = False) -> NmReport:
    """All six measures for one series; `normalize` divides blp and rhp by t_cut.

    Only those two grow without bound in the run length; the max/average
    schemes saturate and are reported raw.
    """
    d = indicator_D(series)
    increments, clamps = _clamped_log_increments(series.amplitude)
    g = IndicatorSeries(IndicatorKind.G, np.concatenate([[0.0], np.cumsum(increments)]))
    blp_value = blp(series)
    ng_max_value = n_max(g)
    rhp_value = float(g.values[-1])
    if rhp_value != ng_max_value:
        raise RuntimeError("internal identity rhp == n_max(G) violated")
    if normalize:
        blp_value /= series.t_cut
        rhp_value /= series.t_cut
    return NmReport(
        blp=blp_value,
        rhp=rhp_value,
        nd_max=n_max(d),
        nd_avg=n_avg(d),
        ng_max=ng_max_value,
        ng_avg=n_avg(g),
        t_cut=series.t_cut,
        normalized_by_tcut=normalize,
        clamp_events=clamps,
    )
