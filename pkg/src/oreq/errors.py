"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: Falsification -> 1, InputError -> 2,
GuardExceeded -> 3.
"""


class OreqError(Exception):
    pass


class InputError(OreqError, ValueError):
    """Malformed input: bad expression, bad ring table, violated precondition."""


class GuardExceeded(OreqError, RuntimeError):
    """A configured resource guard was hit; the computation was aborted,
    never silently truncated."""


class Falsification(OreqError, RuntimeError):
    """A mathematical contract that must hold was observed to fail.

    Either an implementation defect or a genuine counterexample; both are
    build-breaking events and are never swallowed.
    """
