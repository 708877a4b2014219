"""Python bindings for the rayland C++ library."""

from ._rayland import *  # noqa: F401,F403
from ._rayland import __doc__  # noqa: F401
