"""Exact tensor, cotensor and quantum symmetric algebras of Hopf bimodules."""

from .linalg import ExactMatrix, Field, Fp, Subspace, image, intersect, kernel, preimage, rank
from .hopf import (AbelianGroupAlgebra, BicharacterPairing, CounitPairing, MatrixPairing,
                   StructureConstantHopf, build_group_algebra, nondegeneracy, transpose_pairing,
                   validate_hopf, validate_hopf_pairing)
from .couple import (Couple, CouplePairing, DiagonalData, build_diagonal_couple,
                     build_self_dual_diagonal_pairing, regular_couple, validate_couple_pairing,
                     validate_hopf_bimodule, zero_phi1_pairing)
from .tensor import (coproduct_component, tensor_antipode, tensor_component, tensor_comultiply,
                     tensor_counit, tensor_multiply)
from .cotensor import cotensor_component, cotensor_comultiply, symmetrizer, wedge
from .pairing import (gram_matrix, gram_matrix_T_vs_Cot, hilbert, relations, self_dual_check,
                      verify_induced_pairing, verify_radicals)

__version__ = "0.1.0"
