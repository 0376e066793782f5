from typing import Any, Callable, Dict, Type
import logging

from exceptions import (
    ConfigError,
    HarnessError,
    LinearSolveError,
    PositivityLossError,
    RicciFlowBlowUpError,
)

logger = logging.getLogger(__name__)

Handler = Callable[[Exception], Dict[str, Any]]

_handlers: Dict[Type[Exception], Handler] = {}


def _payload(exc: Exception, message: str, exit_code: int, **extra) -> Dict[str, Any]:
    payload = {
        "success": False,
        "message": message,
        "error": type(exc).__name__,
        "exit_code": exit_code,
    }
    payload.update(extra)
    return payload


def config_exception_handler(exc: ConfigError) -> Dict[str, Any]:
    return _payload(exc, exc.detail, exc.exit_code)


def positivity_exception_handler(exc: PositivityLossError) -> Dict[str, Any]:
    return _payload(exc, exc.detail, exc.exit_code, node=exc.node, time=exc.time, value=exc.value)


def blow_up_exception_handler(exc: RicciFlowBlowUpError) -> Dict[str, Any]:
    return _payload(exc, exc.detail, exc.exit_code, time=exc.time)


def linear_solve_exception_handler(exc: LinearSolveError) -> Dict[str, Any]:
    return _payload(exc, exc.detail, exc.exit_code)


def harness_exception_handler(exc: HarnessError) -> Dict[str, Any]:
    return _payload(exc, exc.detail, exc.exit_code)


def generic_exception_handler(exc: Exception) -> Dict[str, Any]:
    logger.exception("Beklenmeyen hata")
    return _payload(exc, f"Beklenmeyen bir hata oluştu: {str(exc)}", 1)


def register_exception_handler(exc_type: Type[Exception], handler: Handler) -> None:
    _handlers[exc_type] = handler


def handle_exception(exc: Exception) -> Dict[str, Any]:
    """Sınıf hiyerarşisinde en yakın işleyicinin ürettiği hata yükü."""
    for cls in type(exc).__mro__:
        handler = _handlers.get(cls)
        if handler is not None:
            return handler(exc)
    return generic_exception_handler(exc)


register_exception_handler(ConfigError, config_exception_handler)
register_exception_handler(PositivityLossError, positivity_exception_handler)
register_exception_handler(RicciFlowBlowUpError, blow_up_exception_handler)
register_exception_handler(LinearSolveError, linear_solve_exception_handler)
register_exception_handler(HarnessError, harness_exception_handler)
register_exception_handler(Exception, generic_exception_handler)
