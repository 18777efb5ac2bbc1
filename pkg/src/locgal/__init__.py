"""Finite localic Galois theory: sites, saturation, points and theorem checks."""

from .autloc import AutSite, diagram_poset, laut_site_of_functor, laut_site_of_set, neutral_point
from .category import FinCategory, SetFunctor, representable_functor, strict_epi
from .dot import export_dot
from .errors import (BudgetExceeded, InputError, LocgalError, NotAPoint, SaturationBudgetExceeded,
                     SearchBudgetExceeded)
from .fields import GF, field_category, field_tower
from .gset import Action, DiscreteGroup, groups_up_to_order, tbg_category
from .kernels import active_backend
from .order import FreeInfLattice, MeetSemilattice, Preorder, free_inf_lattice, validate_preorder
from .site import (CoveringRelation, SieveClosure, SitePresentation, enumerate_points, saturate,
                   sheaf_leq)
from .verify import (check_assumption, gen_finite_field_site, verify_auxiliar, verify_classical,
                     verify_classifying, verify_gsets, verify_localic, verify_site_laws)

__version__ = "0.1.0"
