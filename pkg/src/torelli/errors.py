"""Shared exception types.

Every domain error raised by the library derives from TorelliError so the
CLI can map them onto exit code 1 with a structured error name.
"""


class TorelliError(Exception):
    """Base class for all domain errors."""


class GenusMismatch(TorelliError):
    """Two objects built over different genera (or moduli) were combined."""


class InvalidWord(TorelliError):
    """A word string or letter sequence is malformed for the given genus."""


class InvalidAutomorphism(TorelliError):
    """Validation of a surface automorphism failed (round trip or relator)."""


class NotTorelli(TorelliError):
    """An operation defined only on the Torelli group was fed a mapping
    class with nontrivial homology action (or wrong boundary mode)."""


class NotInImage(TorelliError):
    """An integer tensor is not in the image of the canonical embedding
    of the third exterior power.  On validated Torelli input this signals
    a convention bug, so callers should treat it as fatal."""


class InvalidModulus(TorelliError):
    """The modulus n does not divide 2g - 2."""


class UnsupportedGenus(TorelliError):
    """No catalogue is shipped for the requested genus."""


class CorruptCatalogue(TorelliError):
    """A shipped catalogue entry failed validation at load time."""
