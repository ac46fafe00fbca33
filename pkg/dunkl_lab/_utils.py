import logging
import math
import time
from contextlib import contextmanager
from typing import Any, Callable, Union

import numpy as np
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from .base import AccuracyError, Estimate, QuadratureSettings

logger = logging.getLogger("DunklLab")


@contextmanager
def timer(label: str):
    start_time = time.perf_counter()
    try:
        yield
    finally:
        elapsed_time = time.perf_counter() - start_time
        logger.debug(f"[{label}: {elapsed_time:.3f} seconds]")


# Refinement --------------------------------------------------------------------------
class _NotConverged(Exception):
    def __init__(self, value, error: float, order: int):
        super().__init__(f"order {order}: successive difference {error:.3e}")
        self.value = value
        self.error = error
        self.order = order


def _close(a, b, rtol: float, atol: float) -> tuple[bool, float]:
    error = float(np.max(np.abs(np.asarray(a) - np.asarray(b))))
    scale = float(np.max(np.abs(np.asarray(b))))
    return error <= atol + rtol * scale, error


def refine(
    evaluate: Callable[[int], Any],
    settings: QuadratureSettings,
    order: Union[int, None] = None,
    label: str = "quadrature",
    max_order: Union[int, None] = None,
) -> Estimate:
    """Double the order until two successive evaluations agree.

    `evaluate(order)` may return a scalar or an array. The returned estimate carries
    the last value, the last successive difference and the order it was reached at.
    """
    start = order or settings.order
    cap = max(max_order or settings.max_order, 2 * start)
    levels = int(math.log2(cap / start)) + 1
    previous = {"value": None}

    def attempt_order(number: int) -> int:
        return start * 2 ** (number - 1)

    try:
        for attempt in Retrying(
            stop=stop_after_attempt(levels + 1),
            retry=retry_if_exception_type(_NotConverged),
            reraise=True,
        ):
            with attempt:
                # the last attempt re-evaluates nothing; it only reports the final state
                number = attempt.retry_state.attempt_number
                if number > levels:
                    last = previous["last"]
                    raise _NotConverged(last.value, last.error, last.order)
                current_order = attempt_order(number)
                value = evaluate(current_order)
                if previous["value"] is None:
                    previous["value"] = value
                    previous["last"] = _NotConverged(value, float("inf"), current_order)
                    raise previous["last"]
                ok, error = _close(value, previous["value"], settings.refine_rtol, settings.refine_atol)
                previous["value"] = value
                previous["last"] = _NotConverged(value, error, current_order)
                if not ok:
                    raise previous["last"]
                return Estimate(value=value, error=error, order=current_order)
    except _NotConverged as e:
        logger.warning(f"{label} did not converge up to order {e.order}: difference {e.error:.3e}")
        raise AccuracyError(
            f"{label} did not reach the refinement tolerance (order {e.order}, difference {e.error:.3e})",
            estimate=_as_float(e.value),
            error=e.error,
        ) from None


def order_cap(settings: QuadratureSettings, dim: int, factor: int = 1, budget: Union[int, None] = None) -> int:
    """Largest order n <= max_order with (factor * n)^dim nodes inside the budget."""
    budget = budget or settings.max_tensor_nodes
    n = int(math.floor(budget ** (1 / dim) / factor + 1e-9))
    return max(1, min(settings.max_order, n))


def _as_float(value) -> float:
    value = np.asarray(value)
    if value.size != 1:
        return float("nan")
    value = value.reshape(())[()]
    return float(value.real) if np.iscomplexobj(value) else float(value)


# Chunked evaluation ------------------------------------------------------------------
def sum_in_chunks(
    weights: np.ndarray,
    values_at: Callable[[slice], np.ndarray],
    total: int,
    chunk: int = 1 << 20,
):
    """Σ weights[i] * values[i] evaluated slice by slice in a fixed order."""
    acc = 0.0
    for start in range(0, total, chunk):
        s = slice(start, min(start + chunk, total))
        acc = acc + np.dot(weights[s], values_at(s))
    return acc


# Parsing -----------------------------------------------------------------------------
def parse_value(value: str):
    """Convert a string value to int, float, complex or leave it a string."""
    value = value.strip()
    try:
        if any(c in value for c in ".eE"):
            return float(value)
        return int(value)
    except ValueError:
        pass
    try:
        return complex(value.replace("i", "j"))
    except ValueError:
        return value.strip('"').strip("'")


def parse_vector(text: Union[str, None], dtype=float) -> Union[np.ndarray, None]:
    if text is None:
        return None
    items = [parse_value(v) for v in str(text).split(",") if v.strip()]
    return np.asarray(items, dtype=dtype)


# Formatting ----------------------------------------------------------------------------
def format_number(value: float, digits: int = 12):
    if value is None:
        return None
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    value = float(value)
    if math.isnan(value) or math.isinf(value):
        return str(value)
    return float(f"{value:.{digits}g}")
