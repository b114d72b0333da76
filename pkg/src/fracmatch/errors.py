"""Shared exception types, mapped to CLI exit codes by fracmatch.cli."""


class InputError(ValueError):
    """Malformed or out-of-contract input (CLI exit code 2)."""


class CounterexampleError(RuntimeError):
    """An implication sweep found a counterexample (CLI exit code 3).

    Carries the path of the dumped instance in ``dump_path``.
    """

    def __init__(self, message, dump_path=None):
        super().__init__(message)
        self.dump_path = dump_path


class SolverError(RuntimeError):
    """LP solver failure, e.g. float-mode iteration cap (CLI exit code 4)."""


class BudgetError(RuntimeError):
    """An enumeration or time budget was exhausted (CLI exit code 4)."""
