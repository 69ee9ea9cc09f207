"""Monte-Carlo suite over every space-time estimate on a two-step resolution ladder."""

from __future__ import annotations

import logging
from typing import List

from gevrey_nls.config.experiment import ExperimentConfig
from gevrey_nls.core.estimates import get_estimate, ladder_estimate, resolve_conj_pattern
from gevrey_nls.tools.results import ESTIMATE_SUITE_COLUMNS, ResultTable
from gevrey_nls.workflows.registry import ExperimentContext, config_metadata, register_experiment

logger = logging.getLogger(__name__)


@register_experiment(
    name="estimate_suite",
    summary="Empirical LHS/RHS ratios of the space-time estimates at n and 2n",
    description=(
        "Draws seeded band-limited space-time fields near the Schrödinger surface "
        "(sample i uses seed + i) with the band scaled to each resolution, evaluates "
        "every selected estimate at resolutions "
        "n and 2n, and reports max and median ratios plus the growth factor."
    ),
    columns=ESTIMATE_SUITE_COLUMNS,
    metadata={"examples": ["gevrey-nls run --config suite.cfg --n 64 --seed 7"]},
)
def run_estimate_suite(ctx: ExperimentContext, cfg: ExperimentConfig) -> List[ResultTable]:
    params = cfg.estimate_params()
    ids = cfg.estimate_ids()
    # Arity problems surface before any sampling.
    for estimate_id in ids:
        resolve_conj_pattern(get_estimate(estimate_id), params, cfg.conj_pattern)

    metadata = config_metadata(cfg)
    table = ResultTable(
        name="estimate_suite",
        experiment="estimate_suite",
        columns=ESTIMATE_SUITE_COLUMNS,
        metadata=metadata,
    )
    for estimate_id in ids:
        report = ladder_estimate(
            estimate_id,
            params,
            box_len=cfg.box_len,
            resolutions=(cfg.n, 2 * cfg.n),
            m=cfg.m,
            t_len=cfg.t_len,
            samples=cfg.samples,
            seed=cfg.seed,
            dim=cfg.dim,
            conj_pattern=cfg.conj_pattern,
            workers=ctx.workers,
        )
        for n in sorted(report.resolution_reports):
            level = report.resolution_reports[n]
            table.add_row(
                [
                    estimate_id,
                    n,
                    level.sample_count,
                    level.excluded_zero_rhs,
                    level.max_ratio,
                    level.median_ratio,
                ]
            )
        metadata[f"growth.{estimate_id}"] = report.growth_factor()
        for n, band in sorted(report.params["k_band"].items()):
            metadata[f"k_band.{estimate_id}.{n}"] = band
            metadata[f"m.{estimate_id}.{n}"] = report.params["m"][n]
        logger.info("%s: growth factor %.4f", estimate_id, report.growth_factor())
    return [table]


__all__ = ["run_estimate_suite"]
