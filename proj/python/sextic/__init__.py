"""Sextic anharmonic-oscillator laboratory.

Exact-rational perturbation series, Pade / Borel-Pade resummation, large-order
fits, Rayleigh-Ritz variational spectra, and avoided-crossing scans for the
family H(lambda) = p^2 + x^2 - 12 lambda x^2 + 8 lambda x^4 + 16 lambda^2 x^6.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
