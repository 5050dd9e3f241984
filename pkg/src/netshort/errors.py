"""Exception hierarchy.

Every error raised by the library derives from :class:`NetshortError`, and
each one carries the CLI exit code it maps to.
"""


class NetshortError(Exception):
    exit_code = 3


class ParseError(NetshortError, ValueError):
    exit_code = 2


class GeometryError(NetshortError, ValueError):
    exit_code = 3


class NotPlanar(GeometryError):
    pass


class Disconnected(GeometryError):
    pass


class DegenerateEdge(GeometryError):
    pass


class BadEdgeId(GeometryError, IndexError):
    pass


class BadParameter(GeometryError):
    pass


class SameEdge(GeometryError):
    pass


class DegenerateSegment(GeometryError):
    pass


class CollinearOverlap(GeometryError):
    pass


class NoIntersection(GeometryError):
    pass


class EndpointOffLocus(GeometryError):
    pass


class NonMaximalCandidate(GeometryError):
    pass


class KindMismatch(GeometryError):
    pass


class NotSimple(GeometryError):
    pass


class InfeasibleGeometry(GeometryError):
    pass


class EmptyInput(NetshortError, ValueError):
    pass


class BadEpsilon(NetshortError, ValueError):
    exit_code = 2


class BudgetExceeded(NetshortError):
    pass


class MethodRequiresPath(NetshortError):
    exit_code = 4


class NotAPath(MethodRequiresPath):
    pass
