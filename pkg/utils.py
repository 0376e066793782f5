from typing import Any, Optional, Sequence
import math

import numpy as np

from exceptions import RefinementError


def fit_order(spacings: Sequence[float], errors: Sequence[float],
              floor: float = 0.0) -> Optional[float]:
    """
    log(hata) - log(h) doğrusunun en küçük kareler eğimi.

    Args:
        spacings: çözünürlük başına h (ya da Δt)
        errors: aynı sırada en büyük hata
        floor: bu değerin altındaki hatalar yuvarlama düzeyindedir; hepsi
            altındaysa mertebe tanımsızdır (None)

    Raises:
        RefinementError: üçten az seviye ya da pozitif olmayan h
    """
    if len(spacings) != len(errors) or len(spacings) < 3:
        raise RefinementError(f"Mertebe için en az üç seviye gerekir, verilen: {len(spacings)}")
    h = np.asarray(spacings, dtype=float)
    e = np.asarray(errors, dtype=float)
    if np.any(h <= 0):
        raise RefinementError("Izgara aralıkları pozitif olmalı")
    if np.all(e <= floor):
        return None
    if np.any(e <= 0) or not np.all(np.isfinite(e)):
        return None
    slope, _ = np.polyfit(np.log(h), np.log(e), 1)
    return float(slope)


def format_float(value: Optional[float]) -> str:
    """17 anlamlı basamak; CSV tablolarında bit düzeyinde geri okunabilirlik için."""
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(value, ".17g")


def to_jsonable(data: Any) -> Any:
    """
    Rapor verisini JSON'a dönüştürür.

    numpy sayıları ve dizileri Python türlerine, sonlu olmayan sayılar
    "inf"/"-inf"/"nan" dizgelerine çevrilir.
    """
    if isinstance(data, dict):
        return {str(key): to_jsonable(value) for key, value in data.items()}
    elif isinstance(data, (list, tuple)):
        return [to_jsonable(item) for item in data]
    elif isinstance(data, np.ndarray):
        return [to_jsonable(item) for item in data.tolist()]
    elif isinstance(data, (bool, np.bool_)):
        return bool(data)
    elif isinstance(data, (int, np.integer)):
        return int(data)
    elif isinstance(data, (float, np.floating)):
        value = float(data)
        if math.isfinite(value):
            return value
        return format_float(value)
    return data
