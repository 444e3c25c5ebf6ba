"""Tabulated data behind the tap-off comparison and noise eater figures.

Figures 4-6 compare the bare tap-off processes (zero gain, lossless arms);
figure 7 scans the feedforward gain at one operating point and figure 8
sweeps the tap-off fraction at optimal gain.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InvalidParameterError
from .metrics import MetricsReport, SNRReference, evaluate
from .noise import SystemParams
from .optimizer import gain_scan, optimal_sweep
from .tapoff import TapOffKind, TapOffSpec

BS = TapOffKind.BEAMSPLITTER
SHG = TapOffKind.SECOND_HARMONIC


@dataclass(frozen=True)
class Table:
    columns: tuple[str, ...]
    rows: list[tuple[float, ...]]


def _tapoff_reports(grid, v_in, snr_reference) -> list[tuple[float, MetricsReport, MetricsReport]]:
    out = []
    for t in grid:
        bs = evaluate(SystemParams(TapOffSpec.at_tapoff(BS, t), v_in=v_in), snr_reference)
        shg = evaluate(SystemParams(TapOffSpec.at_tapoff(SHG, t), v_in=v_in), snr_reference)
        out.append((float(t), bs, shg))
    return out


def figure4(grid, v_in=10.0, snr_reference=SNRReference.QUANTUM_LIMIT, **_) -> Table:
    rows = [(t, bs.v_s_out, bs.v_m_out, shg.v_s_out, shg.v_m_out)
            for t, bs, shg in _tapoff_reports(grid, v_in, snr_reference)]
    return Table(("tapoff", "v_s_bs", "v_m_bs", "v_s_shg", "v_m_shg"), rows)


def figure5(grid, v_in=10.0, snr_reference=SNRReference.QUANTUM_LIMIT, **_) -> Table:
    rows = [(t, bs.t_s, bs.t_m, bs.t_total, shg.t_s, shg.t_m, shg.t_total)
            for t, bs, shg in _tapoff_reports(grid, v_in, snr_reference)]
    return Table(("tapoff", "t_s_bs", "t_m_bs", "t_total_bs",
                  "t_s_shg", "t_m_shg", "t_total_shg"), rows)


def figure6(grid, v_in=10.0, snr_reference=SNRReference.QUANTUM_LIMIT, **_) -> Table:
    rows = [(t, bs.corr_sm, shg.corr_sm)
            for t, bs, shg in _tapoff_reports(grid, v_in, snr_reference)]
    return Table(("tapoff", "corr_bs", "corr_shg"), rows)


def figure7(v_in=10.0, eta_m=0.9, eta_s=0.9025, tapoff=0.1,
            g_min=-5.0, g_max=5.0, steps=10_001, **_) -> Table:
    curves = {}
    for kind in (BS, SHG):
        params = SystemParams(TapOffSpec.at_tapoff(kind, tapoff), v_in=v_in,
                              eta_m=eta_m, eta_s=eta_s)
        curves[kind] = gain_scan(params, g_min, g_max, steps)
    bs, shg = curves[BS], curves[SHG]
    db = lambda v: 10.0 * np.log10(v)
    cols = np.column_stack([bs.gains, db(bs.v_s_out), db(bs.v_m_out),
                            db(shg.v_s_out), db(shg.v_m_out)])
    return Table(("gain", "v_s_db_bs", "v_m_db_bs", "v_s_db_shg", "v_m_db_shg"),
                 [tuple(map(float, r)) for r in cols])


def figure8(grid, v_in=10.0, eta_m=0.9, eta_s=0.9025,
            snr_reference=SNRReference.QUANTUM_LIMIT, **_) -> Table:
    sweep = optimal_sweep(grid, v_in=v_in, eta_m=eta_m, eta_s=eta_s,
                          snr_reference=snr_reference)
    diff = sweep.diff_db
    rows = [(float(t), b.v_star_db, s.v_star_db, float(dd))
            for t, b, s, dd in zip(sweep.tapoff_grid, sweep.records[BS], sweep.records[SHG], diff)]
    return Table(("tapoff", "v_star_db_bs", "v_star_db_shg", "diff_db"), rows)


FIGURES: dict[int, Callable[..., Table]] = {
    4: figure4, 5: figure5, 6: figure6, 7: figure7, 8: figure8,
}


def build_figure(n: int, **kwargs) -> Table:
    try:
        builder = FIGURES[int(n)]
    except (KeyError, ValueError):
        raise InvalidParameterError(f"unknown figure {n!r}; choose from {sorted(FIGURES)}") from None
    return builder(**kwargs)
