"""Exact certificates for the representation dimension of triangular extensions
``[K^r 0; M H]`` of hereditary path algebras."""

from .xfield import Field
from .quiver import A2, KRONECKER, Quiver, gabriel_type
from .reps import Representation, catalog, injective_at, projective_at, simple_at
from .krull import NonSplitField, decompose
from .auslander import NotRigid, build_generator, verify_generator
from .trimat import build_ghat, build_lambda
from .gldim import Certificate, global_dimension, repdim_certificate

__all__ = [
    "A2", "KRONECKER", "Certificate", "Field", "NonSplitField", "NotRigid", "Quiver", "Representation",
    "build_generator", "build_ghat", "build_lambda", "catalog", "decompose", "gabriel_type",
    "global_dimension", "injective_at", "projective_at", "repdim_certificate", "simple_at",
    "verify_generator",
]
__version__ = "0.1.0"
