"""Cox rings of blow ups via compatibly embedded Mori dream spaces.

Exact arithmetic over the rationals throughout.  The main entry points:

* :func:`blowup_cemds`, :func:`blowup_auto`, :func:`blowup_fg` for blow ups
  along a center given by homogeneous generators,
* :func:`linear_blowup` for blow ups of projective space at points,
* :func:`stretch`, :func:`compress`, :func:`contract`, :func:`modify` for
  moving between embeddings,
* :func:`verify_cemds` for the verification battery.
"""

from .blowup import (AutoResult, BlowupError, BlowupResult, FGCertificate, blowup_auto,
                     blowup_cemds, blowup_fg, blowup_point_certificate, lattice_ideal_point,
                     rees_component, tnu_variables)
from .cemds import (CEMDS, ES, VERIFIED, WEAK, CEMDSError, MonomialMap, compress, contract,
                    find_fake_relations, modify, proj_model, projective_space,
                    sharp_pullback, sharp_pushforward, stretch, toric_cemds, transfer)
from .compare import Match, match_presentation, scale_variables, torus_rescaling
from .groebner import GroebnerBasis, GroebnerBudgetExceeded, groebner_basis, step_budget
from .ideal import (Ideal, eliminate, ideal_dim, ideal_power, intersect, minimal_generators,
                    quotient, saturate, saturate_by_product, saturate_ideal)
from .intlinalg import (Grading, finest_grading, gale_dual, gale_dual_inverse,
                        grading_permutations, gradings_equivalent, hermite_rows,
                        smith_normal_form, solve_integer)
from .lineargen import (ConfigurationError, IncidenceSystem, PointConfig, hyperplane_set,
                        incidence_torus_ideal, linear_blowup)
from .polynomial import MonomialOrder, Polynomial
from .toric import (ChamberWallError, Fan, FanError, NotEffectiveError, fan_from_ample,
                    find_ample_class, irrelevant_ideal, is_ample, is_refinement, orbit_cone,
                    stellar_subdivision)
from .verify import (CheckStatus, VerificationReport, check_dim_pairs, check_K_prime,
                     check_nonassociated, check_normal, verify_cemds)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
