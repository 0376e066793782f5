from typing import Any, Dict, List, Optional

from pydantic import BaseModel, model_validator


class CurvatureBounds(BaseModel):
    """Bölge × zaman penceresi üzerinde şişirilmiş eğrilik üst sınırları."""

    K0: float
    K1: float
    K2: float
    k0: float
    k1: float
    k2: float
    region: str = "whole"
    window: List[float] = []
    safety_factor: float = 1.05

    class Config:
        frozen = True
        json_schema_extra = {
            "example": {"K0": 2.1, "K1": 0.0, "K2": 0.0, "k0": 4.2, "k1": 0.0, "k2": 0.0,
                        "region": "whole", "window": [0.0, 0.25], "safety_factor": 1.05}
        }


class BoundReport(BaseModel):
    quantity: str
    region: str
    time: float
    supremum: float
    argmax_node: int
    argmax_time: Optional[float] = None
    bound: Optional[float] = None
    margin: Optional[float] = None
    constants: Dict[str, Any] = {}

    @model_validator(mode="after")
    def fill_margin(self):
        # negatif pay da kaydedilir; ihlal bir rapordur
        if self.bound is not None and self.margin is None:
            self.margin = self.bound - self.supremum
        return self

    def row(self, tau: Optional[float] = None) -> Dict[str, Any]:
        return {
            "t": self.time,
            "tau": tau,
            "quantity": self.quantity,
            "sup": self.supremum,
            "argmax_node": self.argmax_node,
            "bound": self.bound,
            "margin": self.margin,
        }

    class Config:
        json_schema_extra = {
            "example": {
                "quantity": "hessian-ratio-eigen",
                "region": "whole",
                "time": 0.05,
                "supremum": 0.92,
                "argmax_node": 17,
                "bound": 18.0,
                "margin": 17.08,
                "constants": {"alpha": 2.0},
            }
        }


class EntropyTrace(BaseModel):
    times: List[float]
    taus: List[float]
    entropy: List[float]
    derivative: List[Optional[float]]
    production: List[float]
    residual: List[Optional[float]]
    normalization: List[float]
    normalization_shift: float = 0.0
    violations: List[int] = []
    emulation: Optional[str] = None

    def rows(self) -> List[Dict[str, Any]]:
        return [
            {"t": t, "tau": tau, "W": w, "dW_dt": d, "production": p, "residual": r,
             "normalization": m}
            for t, tau, w, d, p, r, m in zip(self.times, self.taus, self.entropy, self.derivative,
                                             self.production, self.residual, self.normalization)
        ]


class SolverSummary(BaseModel):
    scheme: str
    time_steps: int
    grid: str
    mass_drift: float
    min_u: float
    amplitude_bound: float
    normalization_shift: float = 0.0


class CheckOutcome(BaseModel):
    name: str
    passed: bool
    message: str = ""
    metrics: Dict[str, float] = {}
    errors: Dict[str, float] = {}
    stable: Dict[str, float] = {}
    bound_reports: List[BoundReport] = []
    entropy_trace: Optional[EntropyTrace] = None
    tables: List[str] = []
    failure: Optional[Dict[str, Any]] = None


class StudyOrder(BaseModel):
    check: str
    quantity: str
    order: Optional[float]
    target: float
    finest_error: float
    passed: bool


class StudyStability(BaseModel):
    """Seviyeler arasında sabit kalması beklenen bir nicelik (son iki seviye)."""

    check: str
    quantity: str
    values: List[float]
    relative_change: float
    tolerance: float
    passed: bool


class StudyLevel(BaseModel):
    level: int
    grid_sizes: List[int]
    time_steps: int
    spacing: float
    time_step: float
    outcomes: List[CheckOutcome] = []


class RunReport(BaseModel):
    scenario: str
    success: bool
    config: Dict[str, Any]
    solver: Optional[SolverSummary] = None
    checks: List[CheckOutcome] = []
    levels: List[StudyLevel] = []
    orders: List[StudyOrder] = []
    stability: List[StudyStability] = []
    failure: Optional[Dict[str, Any]] = None
    # metadata.json'a yazılır, rapor baytlarına girmez
    timings: Dict[str, float] = {}
