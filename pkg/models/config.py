from typing import Dict, List, Literal, Optional, Union
import json
import math

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from exceptions import ConfigError, RefinementError

CheckName = Literal[
    "gradient",
    "hessian",
    "lemma21",
    "lemma31",
    "lemma33",
    "lemma34",
    "bochner",
    "entropy",
    "curvature-evolution",
    "oracle",
    "pde-residual",
]

BackendName = Literal["torus-1d", "torus-2d", "shrinking-sphere", "rotsym-surface"]

ALL_BACKENDS = ("torus-1d", "torus-2d", "shrinking-sphere", "rotsym-surface")

# Her kontrolün desteklendiği arka uçlar
CHECK_BACKENDS: Dict[str, tuple] = {
    "gradient": ALL_BACKENDS,
    "hessian": ALL_BACKENDS,
    "lemma21": ALL_BACKENDS,
    "lemma31": ALL_BACKENDS,
    "lemma33": ALL_BACKENDS,
    "lemma34": ALL_BACKENDS,
    "bochner": ALL_BACKENDS,
    "entropy": ALL_BACKENDS,
    "curvature-evolution": ("shrinking-sphere", "rotsym-surface"),
    "oracle": ("torus-1d",),
    "pde-residual": ALL_BACKENDS,
}

# assert kipinde kontrollerin istediği sabitler
REQUIRED_CONSTANTS: Dict[str, tuple] = {
    "gradient": ("C",),
    "hessian": ("C0", "C1"),
}


class PhiSpec(BaseModel):
    """Dönel simetrik yüzey için başlangıç konformal faktörü."""

    kind: Literal["round", "cosine"] = "round"
    amplitude: float = 0.0


class BackendSpec(BaseModel):
    kind: BackendName
    grid_sizes: List[int] = Field(min_length=1, max_length=2)
    edge_lengths: Optional[List[float]] = None
    dimension: int = Field(default=2, ge=2)
    r0: float = Field(default=1.0, gt=0)
    initial_phi: PhiSpec = PhiSpec()
    flow_steps: Optional[int] = Field(default=None, ge=8)

    @model_validator(mode="after")
    def check_shape(self):
        expected = {"torus-1d": 1, "torus-2d": 2}.get(self.kind, 1)
        if len(self.grid_sizes) != expected:
            raise ValueError(f"{self.kind} için {expected} ızgara boyutu gerekir")
        if self.kind in ("torus-1d", "torus-2d"):
            if self.edge_lengths is None:
                self.edge_lengths = [2.0 * math.pi] * expected
            if len(self.edge_lengths) != expected or any(x <= 0 for x in self.edge_lengths):
                raise ValueError("Kenar uzunlukları pozitif olmalı ve ızgarayla uyuşmalı")
        if self.kind == "rotsym-surface" and self.dimension != 2:
            raise ValueError("Dönel simetrik yüzey yalnız n = 2 için tanımlı")
        return self

    class Config:
        json_schema_extra = {
            "example": {"kind": "torus-1d", "grid_sizes": [256], "edge_lengths": [6.283185307179586]}
        }


class TerminalSpec(BaseModel):
    kind: Literal["constant", "periodized-gaussian", "gaussian-pair", "cosine-exponential",
                  "zonal-cosine"]
    value: float = 1.0  # constant
    amplitude: float = 1.0
    center: Optional[List[float]] = None  # varsayılan: ızgaranın ortası
    variance: float = Field(default=0.02, gt=0)
    centers: List[float] = []  # gaussian-pair (T¹)
    variances: List[float] = []
    weights: List[float] = []
    steepness: List[float] = [1.0]  # cosine-exponential, eksen başına
    offset: float = 2.0  # zonal-cosine: offset + amplitude·cos θ
    normalize: bool = False

    @model_validator(mode="after")
    def check_pair(self):
        if self.kind == "gaussian-pair":
            if not (len(self.centers) == len(self.variances) == len(self.weights) >= 1):
                raise ValueError("gaussian-pair için centers, variances ve weights aynı uzunlukta olmalı")
            if any(v <= 0 for v in self.variances) or any(w <= 0 for w in self.weights):
                raise ValueError("gaussian-pair varyans ve ağırlıkları pozitif olmalı")
        if self.kind == "constant" and self.value <= 0:
            raise ValueError("Sabit son veri pozitif olmalı")
        return self


class RegionSpec(BaseModel):
    """Parabolik küp Q_{r,T'}(x0, t0); r yoksa sonsuz, t0 yoksa T, span yoksa t0."""

    label: str = "cube"
    x0: Union[int, List[int], str] = 0
    r: Optional[float] = Field(default=None, gt=0)
    t0: Optional[float] = None
    span: Optional[float] = Field(default=None, gt=0)


class Tolerances(BaseModel):
    mass_drift: float = 1e-8
    identity_residual: float = 1e-4
    sphere_residual: float = 1e-3
    oracle_error: float = 1e-4
    hessian_ratio: float = 18.0
    li_yau_relative: float = 0.05
    entropy_derivative: float = 1e-6
    soliton_density: float = 1e-8
    stability: float = 0.10
    absolute_floor: float = 1e-12
    order_targets: Dict[str, float] = {}


class StudySpec(BaseModel):
    levels: int = Field(default=3, ge=3)
    refine: Literal["joint", "time"] = "joint"


class ScenarioConfig(BaseModel):
    name: str = Field(pattern=r"^[A-Za-z0-9_.-]+$")
    description: str = ""
    backend: BackendSpec
    terminal: TerminalSpec
    final_time: float = Field(gt=0)
    time_steps: int = Field(ge=8)
    scheme: Literal["crank-nicolson", "implicit-euler"] = "crank-nicolson"
    alpha: float = Field(default=2.0, gt=1)
    epsilon: float = Field(default=1.0, gt=0)
    regions: List[RegionSpec] = []
    checks: List[CheckName] = Field(min_length=1)
    sample_times: Optional[List[float]] = None
    tolerances: Tolerances = Tolerances()
    constant_policy: Literal["report-only", "assert"] = "report-only"
    constants: Dict[str, float] = {}
    seed: int = 0
    normalization: Literal["strict", "rescale"] = "rescale"
    tau_terminal: Optional[float] = Field(default=None, ge=0)  # yoksa akıştan türetilir
    study: StudySpec = StudySpec()

    @field_validator("checks")
    @classmethod
    def unique_checks(cls, v):
        if len(set(v)) != len(v):
            raise ValueError("Kontrol listesinde tekrar var")
        return v

    @model_validator(mode="after")
    def check_consistency(self):
        for check in self.checks:
            if self.backend.kind not in CHECK_BACKENDS[check]:
                raise ValueError(f"'{check}' kontrolü {self.backend.kind} arka ucunda uygulanmadı")
        if "oracle" in self.checks and self.terminal.kind != "periodized-gaussian":
            raise ValueError("'oracle' kontrolü periodized-gaussian son verisi ister")
        if any(n % 2 for n in self.backend.grid_sizes) or self.time_steps % 2:
            raise ValueError("Izgara boyutları ve zaman adımları iç içe inceltme için çift olmalı")
        for t in self.sample_times or []:
            position = t * self.time_steps / self.final_time
            if not 0 < t < self.final_time or abs(position - round(position)) > 1e-9:
                raise ValueError(f"Örnek zaman {t} zaman ızgarasının iç düğümü değil")
        if self.constant_policy == "assert":
            for check in self.checks:
                missing = [c for c in REQUIRED_CONSTANTS.get(check, ()) if c not in self.constants]
                if missing:
                    raise ValueError(f"assert kipinde '{check}' için sabitler eksik: {missing}")
        return self

    @property
    def residual_times(self) -> List[float]:
        return list(self.sample_times) if self.sample_times else [0.5 * self.final_time]

    @classmethod
    def from_file(cls, path: str) -> "ScenarioConfig":
        """
        Senaryo dosyasını okur ve doğrular.

        Raises:
            ConfigError: dosya okunamazsa, JSON bozuksa (satır:sütun) ya da alan geçersizse
        """
        try:
            with open(path, encoding="utf-8") as fh:
                raw = json.load(fh)
        except json.JSONDecodeError as e:
            raise ConfigError(f"{path}:{e.lineno}:{e.colno}: JSON hatası: {e.msg}")
        except OSError as e:
            raise ConfigError(f"Senaryo dosyası okunamadı: {str(e)}")
        return cls.from_dict(raw, source=path)

    @classmethod
    def from_dict(cls, raw: dict, source: str = "<config>") -> "ScenarioConfig":
        try:
            return cls.model_validate(raw)
        except ValidationError as e:
            problems = "; ".join(
                f"{'.'.join(str(p) for p in err['loc']) or '<kök>'}: {err['msg']}" for err in e.errors()
            )
            raise ConfigError(f"{source}: {problems}")

    def coarsened(self, level: int, refine: str = "joint") -> "ScenarioConfig":
        """
        Çözünürlüğü level kez yarıya indirilmiş kopya; senaryonun kendisi en ince seviyedir.

        Raises:
            RefinementError: çözünürlükler 2**level ile bölünmüyorsa ya da kaba kopya geçersizse
        """
        factor = 2 ** level

        def halve(value: int, label: str) -> int:
            if value % factor:
                raise RefinementError(f"{label}={value}, seviye {level} için {factor} ile bölünmeli")
            return value // factor

        data = self.model_dump()
        data["time_steps"] = halve(self.time_steps, "time_steps")
        if refine == "joint":
            data["backend"]["grid_sizes"] = [halve(n, "grid_sizes") for n in self.backend.grid_sizes]
        if self.backend.flow_steps is not None:
            data["backend"]["flow_steps"] = halve(self.backend.flow_steps, "flow_steps")
        try:
            return ScenarioConfig.model_validate(data)
        except ValidationError as e:
            raise RefinementError(f"Seviye {level} geçersiz: {str(e)}")
