"""tiltlab: exact computations with tau-tilting data over bound quiver algebras
and interval persistence modules."""

__version__ = "0.1.0"
