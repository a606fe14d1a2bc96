"""Second moments of primitive Dirichlet L-functions at the central point."""

from ._core import *  # noqa: F401,F403
from ._core import __version__, DomainError, NumericError, PoleError  # noqa: F401
