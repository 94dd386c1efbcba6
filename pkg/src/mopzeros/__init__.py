"""Exact construction of multiple orthogonal polynomials and their zero interlacing."""

from .exact import Interval, Poly, count_roots, isolate_roots, refine_root, sturm_chain
from .families import (FAMILIES, Charlier, FamilySpec, Hermite, Krawtchouk, LaguerreI, LaguerreII,
                       MeixnerI, MeixnerII, default_family, make_family, validate)
from .lattice import Lattice, build_polynomial, check_path_independence, compatibility_identity
from .oracle import solve_from_moments, verify_orthogonality
from .zeros import interlace, theorem2_scan, zero_set

__version__ = "0.1.0"
