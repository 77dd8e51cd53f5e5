"""Exception hierarchy for the umbilic toolkit."""


class UmbilicError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(UmbilicError):
    """Malformed configuration (CLI flags or config file)."""


class NonPositiveRadius(UmbilicError):
    """A radial coordinate was requested at r <= 0."""


class DimensionTooSmall(UmbilicError):
    """Spatial dimension n < 3 is not supported."""


class DegenerateZero(UmbilicError):
    """A profile zero with |h'| below the slope tolerance was used where a
    simple zero is required (e.g. horizon-chart construction)."""


class NoHorizon(UmbilicError):
    """The profile has no zero where one is required."""


class NonspacelikeSlice(UmbilicError):
    """Slice metric coefficient h_T <= 0: the warped slice degenerates."""


class InsideHorizon(UmbilicError):
    """A (t, r)-chart-bound computation was requested where h <= 0."""


class SingularMetric(UmbilicError):
    """Metric matrix numerically singular (condition number too large)."""


class OutOfChart(UmbilicError):
    """Radius outside the radial domain of a Kruskal chart."""


class OutsideDomain(UmbilicError):
    """Radius outside the domain of a graph slice."""


class HorizonChart(UmbilicError):
    """T' requested at a horizon radius; use the Kruskal continuation."""


class HorizonInInterval(UmbilicError):
    """h vanishes inside an interval that must stay horizon-free."""


class NotTimelike(UmbilicError):
    """Timelike graph condition lambda^2 s^2 > h violated."""


class WrongPatch(UmbilicError):
    """Coordinate transform requested outside its quadrant/patch."""


class OutOfRange(UmbilicError):
    """u*v outside the range of the chart potential."""


class TimeSymmetricGraph(UmbilicError):
    """Graph does not cross the horizon (b_T vanishes there)."""


class DomainTooSmall(UmbilicError):
    """Kruskal chart domain collapsed to (numerically) nothing."""


class ZeroC0(UmbilicError):
    """The conformal family requires C0 != 0."""
