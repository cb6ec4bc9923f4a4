"""Exact-arithmetic engine for twisted de Rham (Dwork) cohomology.

The engine computes, with no floating point anywhere:

* primitive Hodge numbers of smooth projective hypersurfaces through the
  Hilbert function of the Jacobian ring;
* dimensions of the twisted complexes (Omega^(j mod m), d + dF^) by exact
  windowed truncation with stabilization certificates, for smooth and
  singular inputs alike;
* Koszul complexes of complete intersections and their dimension shifts;
* Thom-Sebastiani, suspension and strand-decomposition identities, each
  side computed independently;
* Gauss-Manin connection matrices of one-parameter families over the
  rational-function field.
"""

__version__ = "0.1.0"

from .exceptions import (BasisError, NilpotenceError, NonHomogeneousError,
                         NotSmoothError, ParseError, ReductionError,
                         UnknownVariableError, VariableCountMismatch)
from .fields import QQ, QQ_T, RatFunc
from .poly import (Monomial, Polynomial, homogeneous_degree, monomial_basis,
                   partial_derivative, poly_arith)
from .forms import (DifferentialForm, StrandSpec, TruncatedComplex,
                    assemble_truncated_complex, exterior_derivative,
                    full_complex_spec, gradient_form, strand_basis,
                    twisted_differential, wedge)
from .matrices import SparseMatrix
from .linalg import (ComplexDims, StabilizationPolicy, cohomology_dims,
                     complex_dims, default_policy, exact_rank, rank_mod_p,
                     stabilized_cohomology)
from .griffiths import (JacobianProfile, dF_only_cohomology, jacobian_hilbert,
                        milnor_number, primitive_hodge_numbers,
                        strand_top_dims)
from .reports import Certificate, CohomologyReport
from .dwork import (Check, Verdict, affine_twisted_cohomology,
                    ci_dwork_koszul, compare_smooth_paths,
                    fourier_lemma_check, primitive_dwork_cohomology,
                    strand_cohomology, strand_decomposition,
                    suspension_check, thom_sebastiani_check)
from .gaussmanin import (ConnectionMatrix, Family, connection_properties_check,
                         family_connection_matrix, rational_connection_matrix)
from .cli import Job, corpus_runner, format_polynomial, parse_polynomial, run_job
