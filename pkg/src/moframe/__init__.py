"""Frenet and modified orthogonal frames, helix tests and Bertrand curves.

Curves are given by formulas (or taken from :mod:`moframe.catalog`) and
differentiated exactly with truncated Taylor jets, so frames, curvature and
torsion come out at machine precision rather than finite-difference accuracy.
"""

from .bertrand import (bertrand_mate, combination_relation_residual, combine_curves,
                       correspondence_parallelism, linear_relation_fit, mate_identities,
                       verify_bertrand_pair)
from .curve import CurveSpec, DerivedCurve, SampleGrid, arc_length, param_of_arclength, unitspeed_jets
from .errors import (CorrespondenceFailure, CurvatureVanishes, DomainError, ExpressionSyntaxError,
                     MoframeError, NonConstantCurvature, QuadratureFailure, RootFindFailure,
                     SingularJet, UnknownCurve, UnknownIdentifier)
from .expr import evaluate, parse, to_text
from .frames import frame_ode_residual, frenet_frame, metric_residual, modified_frame
from .helix import (classify, helix_det_test, helix_operator_residual, lancret_ratio, slant_axis,
                    slant_function_constant_kappa, slant_function_general)
from .jet import Jet, jet_apply, jet_compose, jet_invert, jet_parameter

__version__ = "0.1.0"
