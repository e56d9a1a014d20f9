"""Exact computations with nearly Frobenius structures on finite dimensional algebras."""

from frobspace.rings import GF, QQ, ZZ
from frobspace.linalg import Matrix
from frobspace.algebra import Algebra, Quiver, matrix_algebra, path_algebra
from frobspace.frobenius import central_basis, find_frobenius_form, frobenius_data, frobdim
from frobspace.files import parse_spec

__version__ = "0.1.0"
