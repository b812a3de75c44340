"""Exception types shared across the package."""


class CypolError(Exception):
    """Base class for all cypol errors."""


class NotNormalized(CypolError):
    """An input that must be unit norm (or a normalized pair) is not."""


class GridMismatch(CypolError):
    """Two sampled fields do not share beam parameters and grid geometry."""


class KindMismatch(CypolError):
    """A tensor lift received element matrices with the wrong roles."""


class ZeroField(CypolError):
    """Both mode amplitudes vanish; Stokes parameters are undefined."""


class ForbiddenTransform(CypolError):
    """Requested sphere move is not reachable with uniform phase retarders."""


class TruncationRisk(CypolError):
    """Requested state would push significant weight into the Fock cutoff."""


class NotPure(CypolError):
    """State norm deviates too far from one for a pure-state analysis."""
