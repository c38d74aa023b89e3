"""Symmetric knot diagrams: constructions, invariants and symmetry checks."""

__version__ = "0.1.0"

from .laurent import LaurentPoly
from .diagram import Crossing, Diagram, DiagramError, connected_sum, mirror, reverse, switch_crossings
from .codes import ParseError, emit_pd, from_dt, from_gauss, parse_dt, parse_pd, to_dt, to_gauss
from .invariants import (
    alexander,
    bracket,
    bracket_bruteforce,
    bracket_contract,
    determinant,
    determinant_goeritz,
    goeritz,
    jones,
)
from .constructors import (
    HalfDiagram,
    QuarterTemplate,
    TwistSpec,
    braid_closure,
    expand_almost,
    expand_template,
    half_from_braid,
    load_template,
    parse_braid,
    parse_template,
    partial_knot,
    rosette,
    shipped_template,
    shipped_templates,
    symmetric_union,
)
from .analysis import (
    batch_verify,
    certify_spa,
    check_amphicheiral_necessary,
    check_union_det,
    has_spa_certificate,
    identify,
    is_square_up_to_units,
    load_catalog,
    poly_sqrt,
)
