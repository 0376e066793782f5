from typing import List

from commands.checks import CHECKS, CheckSpec, RunContext
from commands.plot import plot_tables
from commands.run import build_solution, build_trajectory, execute, run_scenario
from commands.study import convergence_study, run_study


def list_checks() -> List[CheckSpec]:
    return [CHECKS[name] for name in sorted(CHECKS)]


__all__ = [
    "CHECKS",
    "CheckSpec",
    "RunContext",
    "build_solution",
    "build_trajectory",
    "convergence_study",
    "execute",
    "list_checks",
    "plot_tables",
    "run_scenario",
    "run_study",
]
