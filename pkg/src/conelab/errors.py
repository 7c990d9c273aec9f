"""Exception types shared across the package."""

from __future__ import annotations


class InputError(ValueError):
    """Raised when user-supplied data violates a documented invariant.

    The CLI maps this to exit code 2. The message names the offending
    field or invariant so external tools can surface it directly.
    """


class InternalConsistencyError(RuntimeError):
    """Raised when a built-in cross-check fails.

    These checks guard identities that hold by theorem (bipolar closure,
    simplex-cone equivalence). Seeing this exception means a bug, never
    bad input.
    """
