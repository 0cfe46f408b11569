"""Numerical verification engine for spin geometry on constant-curvature
model spaces: Clifford/multivector algebra, gamma representations, Dirac and
twistor operators, Killing-Yano calculus, symmetry operators, and graded
superalgebra closure tables."""

from .clifford import (Multivector, QuadraticSpace, basis_vector,
                       clifford_product, contract, grade_project, hodge,
                       reversal, volume_form, wedge)
from .model_space import ModelSpace, SpaceKind, curvature, model_space
from .fields import FormField, SpinorField, coderivative, exterior_derivative
from .operators import (cky_bracket, dirac, lie_derivative_spinor, sn_bracket,
                        symmetry_op_cky_massless, symmetry_op_cky_twistor,
                        symmetry_op_ky)
from .spin_rep import (GammaRep, build_gamma_rep, fierz_decompose,
                       p_form_dirac_current, rep, spinor_inner)
from .superalgebra import (SolutionBasis, build_basis, conformal_superalgebra,
                           extended_conformal_superalgebra,
                           extended_killing_superalgebra, killing_number,
                           killing_superalgebra)

__version__ = "0.1.0"
