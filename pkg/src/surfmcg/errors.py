"""Exception hierarchy.

Every error carries a short machine-readable ``code`` that the CLI reports
verbatim in its ``{"error": code, "detail": text}`` object.
"""


class SurfError(Exception):
    code = "Error"

    def __init__(self, detail=""):
        super().__init__(detail)
        self.detail = detail


def _make(name, base=SurfError):
    return type(name, (base,), {"code": name})


MalformedToken = _make("MalformedToken")
LabelArity = _make("LabelArity")
Disconnected = _make("Disconnected")
NonManifold = _make("NonManifold")
RelativeOnClosed = _make("RelativeOnClosed")
NotCarried = _make("NotCarried")
HasBoundary = _make("HasBoundary")
OneSidedTwistCurve = _make("OneSidedTwistCurve")
NonOrientable = _make("NonOrientable")
NotSimple = _make("NotSimple")
MatchingViolation = _make("MatchingViolation")
MixedKinds = _make("MixedKinds")
PreconditionViolated = _make("PreconditionViolated")
ExcludedSurface = _make("ExcludedSurface")
CarrierMismatch = _make("CarrierMismatch")
UnknownGenerator = _make("UnknownGenerator")
Unsupported = _make("Unsupported")
NoPeripheralImage = _make("NoPeripheralImage")
BadEps = _make("BadEps")
NotMonotone = _make("NotMonotone")
NotEquivariant = _make("NotEquivariant")
NotCollarProduct = _make("NotCollarProduct")
ParseError = _make("ParseError")

__all__ = [name for name, obj in list(globals().items())
           if isinstance(obj, type) and issubclass(obj, SurfError)]
