"""Exception hierarchy for qhom.

Input problems (bad tables, malformed files) raise ``ValidationError`` or
``ParseError``.  Checks that run on well-formed inputs and fail raise a
``VerificationFailure`` subclass carrying a concrete witness in the message.
Requests beyond the configured truncation caps raise ``TruncationTooLarge``.
"""

from __future__ import annotations


class QhomError(Exception):
    """Base class for every error raised by this package."""


class ParseError(QhomError):
    """A workspace file or literal could not be parsed."""


class ValidationError(QhomError):
    """An input object violates its defining axioms."""


class NotCommutative(ValidationError):
    """An operation that needs a commutative algebra got a noncommutative one."""


class NotCocommutative(ValidationError):
    """An operation that needs a cocommutative coalgebra got one that is not."""


class NotInvolutive(ValidationError):
    """A claimed involution fails one of its axioms."""


class NotALieMeasuring(ValidationError):
    """A map of Lie algebras fails the bracket compatibility for measurings."""


class NotALeibnizAlgebra(ValidationError):
    """A bracket table fails the Leibniz identity."""


class VerificationFailure(QhomError):
    """A diagram or identity check failed; the message names a witness."""


class CompositionNotZero(VerificationFailure):
    """Two consecutive differentials do not compose to zero."""


class NotAChainMapOnClasses(VerificationFailure):
    """A map does not send cycles to cycles or boundaries to boundaries."""


class RelationNotPreserved(VerificationFailure):
    """A map does not descend to a quotient: some defining relation moves off the kernel."""


class TruncationTooLarge(QhomError):
    """The requested degree or the resulting dimension exceeds the configured caps."""
