from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Tuple
import logging
import time as clock

from commands.checks import CHECKS, RunContext
from conjugate_heat import SolutionHistory, build_terminal, solve_conjugate
from entropy import check_normalization
from error_handler import handle_exception
from exceptions import ConfigError
from geometry import (
    BackendKind,
    FlowTrajectory,
    evolve_rotsym_surface,
    initial_conformal_factor,
    make_shrinking_sphere,
    make_torus,
    snapshot_at,
)
from models.config import ScenarioConfig
from models.report import CheckOutcome, RunReport, SolverSummary
from storage import ReportStore
import settings

logger = logging.getLogger(__name__)


def build_trajectory(config: ScenarioConfig) -> FlowTrajectory:
    """
    Senaryonun Ricci akışı yörüngesi.

    Küre arka uçlarında akış örnekleri çözücünün zaman ızgarasıyla hizalanır; merkezi
    farklar böylece akışın kendi düğümlerine düşer.
    """
    backend, T = config.backend, config.final_time
    if backend.kind in BackendKind.TORI:
        dim = len(backend.grid_sizes)
        return make_torus(dim, backend.edge_lengths, backend.grid_sizes, T)
    if backend.kind == BackendKind.SHRINKING_SPHERE:
        return make_shrinking_sphere(backend.dimension, backend.r0, T, backend.grid_sizes[0],
                                     time_samples=config.time_steps + 1)
    size = backend.grid_sizes[0]
    phi0 = initial_conformal_factor(size, backend.initial_phi.kind, backend.initial_phi.amplitude)
    steps = backend.flow_steps or config.time_steps
    return evolve_rotsym_surface(phi0, T, steps, size)


def _normalize_terminal(config: ScenarioConfig, strict: bool) -> bool:
    # rescale kipinde entropi kontrolü birim kütleli son veri ister
    if strict:
        return config.terminal.normalize
    return config.terminal.normalize or "entropy" in config.checks


def build_solution(config: ScenarioConfig, traj: FlowTrajectory,
                   strict: bool = False) -> SolutionHistory:
    """
    Raises:
        NormalizationError: strict kipte entropi kontrolü istenmiş ve ∫u dg(T) ≠ 1
    """
    strict = strict or config.normalization == "strict"
    spec = config.terminal.model_copy(update={"normalize": _normalize_terminal(config, strict)})
    s_T = snapshot_at(traj, config.final_time)
    terminal, shift = build_terminal(spec, s_T)
    if strict and "entropy" in config.checks:
        check_normalization(s_T, terminal)
    return solve_conjugate(traj, terminal, config.time_steps, config.scheme, shift)


def _run_check(ctx: RunContext, name: str) -> CheckOutcome:
    started = clock.perf_counter()
    try:
        outcome = CHECKS[name].runner(ctx)
    except Exception as e:
        payload = handle_exception(e)
        logger.error("'%s' kontrolü başarısız: %s", name, payload["message"])
        outcome = CheckOutcome(name=name, passed=False, message=payload["message"], failure=payload)
    status = "geçti" if outcome.passed else "kaldı"
    logger.info("%s %s (%.2fs): %s", name, status, clock.perf_counter() - started, outcome.message)
    return outcome


def execute(config: ScenarioConfig, strict: bool = False,
            threads: int = 1) -> Tuple[RunReport, Dict[str, dict]]:
    """
    Akış, çözücü ve seçili kontroller. Çalışma zamanı hataları başarısız bir rapora
    dönüşür; kontroller kendi aralarında bağımsızdır ve sırası korunur.
    """
    timings: Dict[str, float] = {}
    report = RunReport(scenario=config.name, success=False, config=config.model_dump())
    started = clock.perf_counter()
    try:
        traj = build_trajectory(config)
        timings["flow"] = clock.perf_counter() - started
        started = clock.perf_counter()
        hist = build_solution(config, traj, strict)
        timings["solve"] = clock.perf_counter() - started
    except Exception as e:
        payload = handle_exception(e)
        logger.error("Senaryo %s çalıştırılamadı: %s", config.name, payload["message"])
        report.failure = payload
        report.timings = timings
        return report, {}

    ctx = RunContext(config, traj, hist, strict_normalization=strict)
    report.solver = SolverSummary(
        scheme=hist.scheme,
        time_steps=hist.step_count,
        grid=hist.grid.describe(),
        mass_drift=hist.mass_drift,
        min_u=hist.min_value,
        amplitude_bound=ctx.amplitude,
        normalization_shift=hist.normalization_shift,
    )
    started = clock.perf_counter()
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        outcomes: List[CheckOutcome] = list(pool.map(lambda name: _run_check(ctx, name), config.checks))
    timings["checks"] = clock.perf_counter() - started
    report.checks = outcomes
    report.success = all(outcome.passed for outcome in outcomes)
    report.timings = timings
    return report, ctx.tables


def exit_code(report: RunReport) -> int:
    if report.success:
        return 0
    if report.failure is not None:
        return int(report.failure.get("exit_code", 1))
    return 1


def run_scenario(config_path: str, out_dir: Optional[str] = None, strict: bool = False,
                 threads: Optional[int] = None) -> int:
    """Senaryoyu çalıştırır, raporu yazar ve çıkış kodunu döndürür."""
    try:
        config = ScenarioConfig.from_file(config_path)
    except ConfigError as e:
        logger.error("Senaryo geçersiz: %s", e.detail)
        return e.exit_code
    threads = settings.THREADS if threads is None else threads
    report, tables = execute(config, strict, threads)
    store = ReportStore(out_dir or settings.OUTPUT_DIR, config.name)
    store.save(report, tables, {"config_path": config_path, "threads": threads})
    failed = [outcome.name for outcome in report.checks if not outcome.passed]
    if report.success:
        logger.info("Senaryo %s: bütün kontroller geçti", config.name)
    else:
        logger.warning("Senaryo %s başarısız; kalan kontroller: %s", config.name, failed or "-")
    return exit_code(report)
