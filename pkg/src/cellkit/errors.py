"""Shared failure type for mechanically verified identities."""


class VerificationError(RuntimeError):
    """An exact identity the library is built to guarantee failed to hold.

    Raised only for violations that signal an implementation bug (or a
    corrupted input table), never for ordinary bad arguments.
    """
