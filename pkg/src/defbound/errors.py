"""Exception types raised by defbound."""


class DefboundError(Exception):
    """Base class for all library errors."""


class SingularGram(DefboundError):
    pass


class NotDefinite(DefboundError):
    pass


class DegenerateSublattice(DefboundError):
    pass


class ParityViolation(DefboundError):
    pass


class BadInput(DefboundError):
    pass


class BadFraction(BadInput):
    pass


class NotQHS(DefboundError):
    """A Seifert pair has a_i = 0, so the manifold is not a rational homology sphere."""


class NotNormal(DefboundError):
    pass


class NotFullRank(DefboundError):
    pass


class NonSquareRatio(DefboundError):
    pass


class RankCapExceeded(DefboundError):
    pass


class SearchCapExceeded(DefboundError):
    """A backtracking search exceeded its node budget."""
