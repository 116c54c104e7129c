"""Exception hierarchy.

Every domain error carries a short stable ``code`` (used in CLI error
payloads) and an optional ``detail`` dict with offending data.
"""


class OrderCalcError(Exception):
    code = "OrderCalcError"

    def __init__(self, message="", detail=None):
        super().__init__(message)
        self.detail = detail or {}

    def payload(self):
        return {"code": self.code, "message": str(self), "detail": self.detail}


class ParseError(OrderCalcError):
    code = "ParseError"


class DivisionByZero(OrderCalcError, ZeroDivisionError):
    code = "DivisionByZero"


class TruncMismatch(OrderCalcError):
    code = "TruncMismatch"


class NotSaturated(OrderCalcError):
    code = "NotSaturated"


# Alias used by the deformation entry points.
UnsaturatedInput = NotSaturated


class PrecisionExhausted(OrderCalcError):
    code = "PrecisionExhausted"


class EqualIdeals(OrderCalcError):
    code = "EqualIdeals"


class IdealIsUnitIdeal(OrderCalcError):
    code = "IdealIsUnitIdeal"


class OutOfRange(OrderCalcError):
    code = "OutOfRange"


class SpecMismatch(OrderCalcError):
    code = "SpecMismatch"


class NotSmoothRam(SpecMismatch):
    code = "NotSmoothRam"


class NotCirculant(OrderCalcError):
    code = "NotCirculant"


class ChainInvariantViolated(OrderCalcError):
    code = "ChainInvariantViolated"


class ZeroPoint(OrderCalcError):
    code = "ZeroPoint"


class NotCosimple(OrderCalcError):
    code = "NotCosimple"


class RequiresFGreaterOne(OrderCalcError):
    code = "RequiresFGreaterOne"


class ImproperIdeal(OrderCalcError):
    code = "ImproperIdeal"


class DimensionBound(OrderCalcError):
    code = "DimensionBound"


class CertificateMismatch(OrderCalcError):
    code = "CertificateMismatch"
