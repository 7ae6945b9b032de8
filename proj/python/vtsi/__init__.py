"""Train-bridge interaction simulation."""

from ._vtsi import *  # noqa: F401,F403
from ._vtsi import __doc__  # noqa: F401

__version__ = "0.1.0"
