"""Exception types raised by the tiling library."""


class TilingError(Exception):
    """Base class for all library errors."""


class ParseError(TilingError):
    pass


class InvalidDocument(TilingError):
    pass


class InvalidTiling(TilingError):
    """A tiling failed validation where a valid one was required."""

    def __init__(self, report):
        self.report = report
        super().__init__("invalid tiling: " + "; ".join(str(v) for v in report.violations))


class NotCoalescible(TilingError):
    pass


class CutOutsideTile(TilingError):
    pass


class CoalescibleFound(TilingError):
    def __init__(self, i, j):
        self.pair = (i, j)
        super().__init__(f"tiles {i} and {j} share a complete edge")


class NoBlock(TilingError):
    pass


class MinNotAtEnd(TilingError):
    pass


class NotMinimal(TilingError):
    pass


class NotSemiInteger(TilingError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"tile {index} is not semi-integer")


class AlreadySingle(TilingError):
    pass


class OracleInapplicable(TilingError):
    pass


class LeafNotEmbeddable(TilingError):
    pass


class InternalPartitionBroken(TilingError):
    """Floors stopped partitioning the roof edge during surgery. Always a bug."""
