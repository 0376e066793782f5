"""İç içe çözünürlüklerde inceltme çalışması ve gözlenen mertebe."""

from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Tuple
import logging
import math
import time as clock

from commands.checks import target_order
from commands.run import execute, exit_code
from exceptions import ConfigError, RefinementError
from models.config import ScenarioConfig
from models.report import RunReport, StudyLevel, StudyOrder, StudyStability
from storage import ReportStore
from utils import fit_order
import settings

logger = logging.getLogger(__name__)

MIN_LEVELS = 3
ORDER_COLUMNS = ["check", "quantity", "level", "spacing", "error"]


def _spacing(config: ScenarioConfig, refine: str) -> float:
    if refine == "time":
        return config.final_time / config.time_steps
    grid = [length / n for length, n in zip(_lengths(config), config.backend.grid_sizes)]
    return max(grid)


def _lengths(config: ScenarioConfig) -> List[float]:
    if config.backend.edge_lengths:
        return config.backend.edge_lengths
    return [math.pi]


def _fit_orders(config: ScenarioConfig, levels: List[StudyLevel]) -> Tuple[List[StudyOrder], List[dict]]:
    floor = config.tolerances.absolute_floor
    spacings = [level.spacing for level in levels]
    orders, rows = [], []
    for i, check in enumerate(config.checks):
        target = target_order(config, check)
        if target is None:
            continue
        outcomes = [level.outcomes[i] if level.outcomes else None for level in levels]
        keys = sorted({key for outcome in outcomes if outcome for key in outcome.errors})
        for key in keys:
            errors = [outcome.errors.get(key, math.nan) if outcome else math.nan for outcome in outcomes]
            for level, h, error in zip(levels, spacings, errors):
                rows.append({"check": check, "quantity": key, "level": level.level, "spacing": h,
                             "error": error})
            order = fit_order(spacings, errors, floor)
            finest = errors[-1]
            passed = (order is not None and order >= target) or (0 <= finest <= floor)
            if not passed:
                logger.warning("%s/%s mertebesi %s, hedef %.2f", check, key,
                               "tanımsız" if order is None else f"{order:.3f}", target)
            orders.append(StudyOrder(check=check, quantity=key, order=order, target=target,
                                     finest_error=finest, passed=passed))
    return orders, rows


def _stability(config: ScenarioConfig, levels: List[StudyLevel]) -> List[StudyStability]:
    tolerance = config.tolerances.stability
    results = []
    coarse, fine = levels[-2], levels[-1]
    if not coarse.outcomes or not fine.outcomes:
        return results
    for check, before, after in zip(config.checks, coarse.outcomes, fine.outcomes):
        for key in sorted(set(before.stable) & set(after.stable)):
            a, b = before.stable[key], after.stable[key]
            change = abs(b - a) / max(abs(b), config.tolerances.absolute_floor)
            results.append(StudyStability(check=check, quantity=key, values=[a, b],
                                          relative_change=change, tolerance=tolerance,
                                          passed=change <= tolerance))
    return results


def convergence_study(config: ScenarioConfig, levels: Optional[int] = None, strict: bool = False,
                      threads: int = 1) -> Tuple[RunReport, Dict[str, dict]]:
    """
    Senaryoyu levels iç içe çözünürlükte çalıştırır ve her hata niceliği için
    log(hata) - log(h) eğimini kontrolün hedef mertebesiyle karşılaştırır. Senaryonun
    kendi çözünürlüğü en ince seviyedir; kaba seviyeler her adımda yarıya iner.

    Raises:
        RefinementError: üçten az seviye ya da iç içe geçmeyen çözünürlükler
    """
    levels = config.study.levels if levels is None else levels
    if levels < MIN_LEVELS:
        raise RefinementError(f"İnceltme çalışması en az {MIN_LEVELS} seviye ister, verilen: {levels}")
    refine = config.study.refine
    configs = [config.coarsened(levels - 1 - level, refine) for level in range(levels)]
    started = clock.perf_counter()

    def run_level(level: int):
        logger.info("Seviye %d: ızgara %s, %d adım", level, configs[level].backend.grid_sizes,
                    configs[level].time_steps)
        return execute(configs[level], strict)

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        results = list(pool.map(run_level, range(levels)))

    study_levels, tables = [], {}
    for level, (cfg, (report, level_tables)) in enumerate(zip(configs, results)):
        study_levels.append(StudyLevel(level=level, grid_sizes=cfg.backend.grid_sizes,
                                       time_steps=cfg.time_steps, spacing=_spacing(cfg, refine),
                                       time_step=cfg.final_time / cfg.time_steps,
                                       outcomes=report.checks))
        for name, table in level_tables.items():
            tables[f"level{level}_{name}"] = table

    orders, rows = _fit_orders(config, study_levels)
    stability = _stability(config, study_levels)
    tables["orders"] = {"columns": ORDER_COLUMNS, "rows": rows}
    finest = results[-1][0]
    success = (finest.success and all(order.passed for order in orders)
               and all(item.passed for item in stability))
    report = RunReport(scenario=config.name, success=success, config=config.model_dump(),
                       solver=finest.solver, checks=finest.checks, levels=study_levels,
                       orders=orders, stability=stability, failure=finest.failure,
                       timings={"study": clock.perf_counter() - started})
    return report, tables


def run_study(config_path: str, levels: Optional[int] = None, out_dir: Optional[str] = None,
              strict: bool = False, threads: Optional[int] = None) -> int:
    try:
        config = ScenarioConfig.from_file(config_path)
        threads = settings.THREADS if threads is None else threads
        report, tables = convergence_study(config, levels, strict, threads)
    except (ConfigError, RefinementError) as e:
        logger.error("İnceltme çalışması başlatılamadı: %s", e.detail)
        return e.exit_code
    store = ReportStore(out_dir or settings.OUTPUT_DIR, config.name)
    store.save(report, tables, {"config_path": config_path, "threads": threads, "levels": len(report.levels)})
    for order in report.orders:
        logger.info("%s/%s: mertebe %s (hedef %.2f)", order.check, order.quantity,
                    "tanımsız" if order.order is None else f"{order.order:.3f}", order.target)
    return exit_code(report)
