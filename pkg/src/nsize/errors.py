"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations


class NsizeError(Exception):
    """Base class for all library errors."""


class PreconditionError(NsizeError, ValueError):
    """An operation was called outside its documented domain."""


class ResourceError(NsizeError):
    """A computation would exceed a configured cap (enumeration, big-integer size)."""


class UnclassifiableError(PreconditionError):
    """Finiteness of a set expression could not be decided symbolically."""
