# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Exception hierarchy.

Every error carries a ``category`` used by the command line to pick a
diagnostic prefix and an exit status: ``parse`` errors exit with 2, all
other categories exit with 1.
"""


class IterDesignError(Exception):
    """Base class for all package errors."""

    category = "runtime"

    @property
    def exit_code(self) -> int:
        """Process exit status for this failure class."""
        return 2 if self.category == "parse" else 1


class ConfigError(IterDesignError):
    """Malformed configuration document or command parameters."""

    category = "parse"


class InvalidDistributionError(IterDesignError):
    """A degree distribution violates normalization or support rules."""

    category = "parse"


class WrongVariantError(IterDesignError):
    """An operation was applied to an ensemble it does not support."""


class UnrealizableError(IterDesignError):
    """No integer node counts realize the distribution at this length."""

    category = "infeasible"


class ComponentCodeError(IterDesignError):
    """Unknown or unsupported component code."""

    category = "parse"


class InconsistentWordError(IterDesignError):
    """Known positions do not agree with any codeword."""


class UnsupportedChannelError(IterDesignError):
    """Generalized check nodes were requested on the AWGN channel."""


class UnsatisfiableBracketError(IterDesignError):
    """The convergence target fails even at the best end of the bracket."""

    category = "infeasible"


class InfeasibleSupportError(IterDesignError):
    """The degree supports admit no vector at the target rate."""

    category = "infeasible"


class RepairRejected(IterDesignError):
    """Repairing a trial vector left an entry outside [0, 1]."""

    category = "infeasible"


class SingularRepair(RepairRejected):
    """The three-element repair system has no unique solution."""


class ConvergenceError(IterDesignError):
    """An inner numerical solve did not converge."""

    category = "non-convergence"


class BadGrowthError(IterDesignError):
    """The ensemble has a positive initial growth-rate slope."""


class ConstructionError(IterDesignError):
    """Graph construction could not place every edge."""


class DimensionTooLargeError(IterDesignError):
    """Exhaustive codeword enumeration was requested for a large code."""
