"""Exception types shared across the package."""


class CosiltError(Exception):
    """Base class for all package errors."""


class InvalidIndexError(CosiltError):
    """A boundary count or marked-point index is out of range."""


class InvalidSpanError(CosiltError):
    """A peripheral span violates 2 <= d <= boundary count."""


class BoundTooTightError(CosiltError):
    """A search result touches the winding frontier; raise the bound and retry."""


class NotInCollectionError(CosiltError):
    """The arc handed to flip is not a member of the collection."""


class InvalidTupleError(CosiltError):
    """The (C, P, A, *) tuple violates one of the indexing rules."""


class ImmutablePointError(CosiltError):
    """Mutation was requested at a point that admits no irreducible mutation."""


class NotFiniteTriangulationError(CosiltError):
    """The operation needs a triangulation without asymptotic arcs."""


class NotFiniteDimensionalError(CosiltError):
    """Path enumeration exceeded its cap; the bound quiver algebra is not finite."""


class IllegalWordError(CosiltError):
    """A letter sequence violates the string/band word conditions."""


class ArcInTriangulationError(CosiltError):
    """String modules are indexed by arcs outside the base triangulation."""


class AlgebraMismatchError(CosiltError):
    """Hom/Ext arguments live over different algebras."""


class ZeroParameterError(CosiltError):
    """Band modules need a nonzero parameter."""


class SchemaError(CosiltError):
    """A JSON document does not match the expected wire format."""
