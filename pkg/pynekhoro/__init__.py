try:
    from importlib import metadata
except ImportError:
    # Running on pre-3.8 Python; use importlib-metadata package
    import importlib_metadata as metadata

try:
    __version__ = metadata.version("pynekhoro")
except metadata.PackageNotFoundError:
    __version__ = "unknown"

from . import errors
from . import config
from . import output_data
from . import lattice
from . import problems
from . import geometry
from . import integrators
from . import solvers
from . import planner
from . import harness
