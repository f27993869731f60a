"""golodlab: exact tightness and Golodness checks for small simplicial complexes."""

__version__ = "0.1.0"

from .linalg import GF2, GF3, QQ, HAVE_KERNEL, Matrix, PrimeField, RationalField, parse_field
from .simplicial import SimplicialComplex, SimplicialMap, VertexPartition

__all__ = [
    "GF2", "GF3", "QQ", "HAVE_KERNEL", "Matrix", "PrimeField", "RationalField",
    "parse_field", "SimplicialComplex", "SimplicialMap", "VertexPartition",
    "__version__",
]
