"""Exception hierarchy shared across the package."""


class KatsuraError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(KatsuraError):
    """Malformed input data: dimension mismatch, vertex mismatch, edge not in graph."""


class DomainError(KatsuraError):
    """Operation applied outside its mathematical domain."""


class CompositionError(KatsuraError):
    """A raw word contains a non-composable adjacent pair."""


class SemanticError(KatsuraError):
    """A syntactically valid expression refers to data outside the loaded pair."""


class ExprParseError(KatsuraError):
    """Syntax error in an element/path/group expression."""

    def __init__(self, position: int, expected: str, text: str):
        self.position = position
        self.expected = expected
        self.excerpt = text[max(0, position - 12) : position + 12]
        super().__init__(f"at offset {position}: expected {expected} (near {self.excerpt!r})")


class UnrealizableWithSquareMatrices(KatsuraError):
    """Requested K-groups have mismatched free ranks, which square matrices cannot produce."""


class CertificationError(KatsuraError):
    """Internal: a self-check on a constructed object failed.  Never silently ignored."""


class DepthCapExceeded(KatsuraError):
    """A lazily unfolded computation did not stabilize within the configured cap."""
