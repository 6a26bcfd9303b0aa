"""Online multiple hypothesis testing with FDX/FDR control.

Thin wrapper around the C++ core: generalized alpha-investing, SupLORD
boost sequences, wealth-adaptive spending schedules, and seeded stream
generators.
"""

from suplord._core import *  # noqa: F401,F403
from suplord._core import __version__  # noqa: F401
