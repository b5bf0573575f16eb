"""Point counting on genus-2 Jacobians with explicit real multiplication."""

__version__ = "0.1.0"
