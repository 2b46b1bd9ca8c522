"""Decide the simulatability condition for finite joint PMFs and build attack channels."""

__version__ = "0.1.0"

from .attack import find_attack_channel, validate_channel
from .pmf import Channel, JointPMF, marginal_yx, marginal_yz, swap_xy, validate_pmf
from .simulatability import (
    Direction,
    LinearSystem,
    Reason,
    Sign,
    Verdict,
    build_system,
    check_simulatability,
    check_system,
    consistency,
    reduced_check,
    theorem2_check,
)

__all__ = [
    "Channel", "Direction", "JointPMF", "LinearSystem", "Reason", "Sign", "Verdict",
    "build_system", "check_simulatability", "check_system", "consistency",
    "find_attack_channel", "marginal_yx", "marginal_yz", "reduced_check", "swap_xy",
    "theorem2_check", "validate_channel", "validate_pmf",
]
