"""Restricted Lie superalgebras over F_p: cohomology, quasi-Frobenius forms and double extensions."""
from .foundation import EVEN, ODD, SuperSpace, fp, gram_from_wedge, wedge_terms
from .liesuper import (
    AlgebraError,
    GradedMap,
    LieSuperAlgebra,
    Report,
    center,
    derivation_space,
    derived,
    is_derivation,
    rank_one,
    verify_algebra,
)
from .restricted import (
    PMap,
    is_restricted_derivation,
    jacobson_complete,
    p_property_solve,
    pmap_eval,
    restricted_derivation_space,
    verify_restricted,
)
from .cohomology import Cochain1, RestrictedCochain2, is_restricted_coboundary, is_restricted_cocycle
from .qfrob import BilinearForm, adjoint, build_obstruction, cocycle_C, detect_qf, form_check
from .doubleext import ExtensionError, ExtensionRecipe, extend, find_candidates, reduce, validate_recipe
from .catalog import NAMES, load_example, verify_claims

__version__ = "0.1.0"
