"""Graph double mapping cylinders, Hom complexes and chromatic bounds."""

from ._accel import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
