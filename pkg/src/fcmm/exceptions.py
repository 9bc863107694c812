"""Exception types shared across the package."""


class DegenerateClusterError(RuntimeError):
    """A cluster became numerically unusable for the closed-form updates.

    Raised when a cluster's effective mass (column sum of the powered
    membership matrix) vanishes, or when its weighted data image is zero
    so the re-weighting auxiliaries are a 0/0. Solvers catch this and
    report a degenerate termination instead of continuing with NaNs.
    """
