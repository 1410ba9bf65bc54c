"""One-sided shifts over countable alphabets and their sliding block codes."""

from ._cshift import (
    Code,
    DomainError,
    Error,
    HypothesisNotMet,
    ParseError,
    Point,
    PreconditionError,
    Shift,
    SymbolSet,
    certify_t1,
    certify_t2,
    gallery_report,
    roundtrip,
    xi,
    xi_inverse,
)

__all__ = [
    "Code",
    "DomainError",
    "Error",
    "HypothesisNotMet",
    "ParseError",
    "Point",
    "PreconditionError",
    "Shift",
    "SymbolSet",
    "certify_t1",
    "certify_t2",
    "gallery_report",
    "roundtrip",
    "xi",
    "xi_inverse",
]
