"""Exception types shared across the package."""


class ContractError(ValueError):
    """A documented precondition of an operation was violated."""


class DegenerateSpectrum(ContractError):
    """An action's unitary has (numerically) repeated eigenvalues."""

    def __init__(self, action, gap):
        self.action = action
        self.gap = gap
        super().__init__(
            f"action {action!r} has a degenerate spectrum "
            f"(smallest eigenvalue gap {gap:.3e})"
        )


class ModelError(ContractError):
    """An input model or property failed validation.

    ``problems`` is a list of ``(what, magnitude)`` pairs, one per violated
    constraint; ``magnitude`` is ``None`` for structural problems.
    """

    def __init__(self, problems):
        self.problems = list(problems)
        lines = []
        for what, mag in self.problems:
            lines.append(what if mag is None else f"{what} (violation {mag:.3e})")
        super().__init__("; ".join(lines))
