"""Seven-vertex solutions of the coloured Yang-Baxter equation.

Build a family, optionally stack transformations, and verify::

    from ybe7 import default_family, scan
    report = scan(default_family("FF_K0_HYPERBOLIC"))
"""

from .colour_expr import ColourExpr, EvalError, ParseError, parse
from .families import (FAMILIES, FamilySpec, WeightFunction, default_family, eval_family,
                       eval_weights)
from .hamiltonian import Couplings, chain_hamiltonian, check_coefficient_symmetry, couplings, spectrum
from .transforms import ColourReparam, IndexSwap, Scale, SpectralScale, WeightRescale
from .verifier import (Coefficients, SamplePoint, SamplingRegion, VerificationReport, assemble,
                       check_derivative_system, check_free_fermion, check_initial_conditions,
                       check_reflection, classify, component_residuals, hamiltonian_coeffs, scan,
                       ybe_residual)
from .weights import DomainError, FamilyError, WeightVector

__version__ = "0.1.0"
