"""Exception taxonomy shared across the library."""


class SheafflowError(Exception):
    pass


class UnsupportedRepresentation(SheafflowError):
    """Raised when no exact backend exists for the requested computation."""


class SaturationBoundExceeded(SheafflowError):
    """Congruence-closure saturation hit the configured bound.

    Results computed under the bound are sound but possibly incomplete;
    callers that can tolerate incompleteness should catch this and read
    the `complete` flag on the result instead.
    """


class MixedGround(SheafflowError):
    pass


class NotComplete(SheafflowError):
    """The digraph has a partial endpoint map where a total one is required."""


class NotAcyclic(SheafflowError):
    pass


class NotSemilattice(SheafflowError):
    pass


class NoFlatCertificate(SheafflowError):
    pass


class SearchBoundExceeded(SheafflowError):
    pass


class CriteriaNotMet(SheafflowError):
    """Local criteria for the direct first-homology equalizer fail."""


class ParseError(SheafflowError):
    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


class UndeclaredId(ParseError):
    pass


class WeightOutOfSemimodule(ParseError):
    pass
