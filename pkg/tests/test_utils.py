import math

import numpy as np
import pytest

from exceptions import RefinementError
from utils import fit_order, format_float, to_jsonable


def test_fit_order_recovers_slope():
    h = [0.1, 0.05, 0.025, 0.0125]
    errors = [3.0 * x ** 2 for x in h]
    assert fit_order(h, errors) == pytest.approx(2.0, abs=1e-10)


def test_fit_order_needs_three_levels():
    with pytest.raises(RefinementError):
        fit_order([0.1, 0.05], [1e-2, 2.5e-3])
    with pytest.raises(RefinementError):
        fit_order([0.1, 0.0, -0.1], [1.0, 1.0, 1.0])


def test_fit_order_below_floor():
    assert fit_order([0.1, 0.05, 0.025], [1e-15, 2e-15, 1e-15], floor=1e-12) is None
    assert fit_order([0.1, 0.05, 0.025], [1e-3, 0.0, 1e-5]) is None


def test_format_float():
    assert format_float(None) == ""
    assert format_float(3) == "3"
    assert format_float(np.int64(7)) == "7"
    assert format_float(0.1) == "0.10000000000000001"
    assert float(format_float(math.pi)) == math.pi
    assert format_float(float("nan")) == "nan"
    assert format_float(-math.inf) == "-inf"


def test_to_jsonable():
    data = {"a": np.float64(1.5), "b": np.arange(3), "c": (np.bool_(True), math.inf),
            1: [float("nan")]}
    assert to_jsonable(data) == {"a": 1.5, "b": [0, 1, 2], "c": [True, "inf"], "1": ["nan"]}
