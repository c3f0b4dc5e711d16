"""Chirp-like signal model: synthesis, least-squares fitting, asymptotics and Monte Carlo."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401


def one_component(a, b, alpha, c, d, beta):
    """MultiParams holding one sinusoid and one chirp."""
    return MultiParams([Sinusoid(a, b, alpha)], [Chirp(c, d, beta)])  # noqa: F405
