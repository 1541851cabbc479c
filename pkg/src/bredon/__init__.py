"""Bredon modules over orbit categories of finite groups, and the finiteness
criterion for families of subgroups checked on finite G-complexes."""

from .errors import BredonError, ValidationError
from .groups import Family, FiniteGroup, Subgroup, close_family, fp0_witness
from .linalg import AbelianGroupInvariants, FPAbelianGroup, IntMatrix, smith_normal_form
from .orbit import GammaSet, OrbitCategory, hom_module
from .modules import (BredonModule, BredonMorphism, FreeModule, representable, resolve,
                      trivial_module)
from .tensor import tensor_over_F, tensor_over_Z, tor
from .complexes import Filtration, GammaComplex, bredon_homology, reduced_bredon_homology
from .equivariant import brown_check, equivariant_homology

__version__ = "0.1.0"
