from .__about__ import __version__
from .exceptions import ModuliError
