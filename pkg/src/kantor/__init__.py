"""Exact combinatorics for finite matroids: flats, modular cuts, single-element
extensions, line arrangements in rank 4, and modular completion."""

__version__ = "0.1.0"

from .amalgam import AmalgamProblem, NoAmalgamCertificate, enumerate_extensions, find_amalgam, sticky_probe
from .catalog import boolean, catalog, fano, pg3, pg3_minus, uniform, vamos
from .completion import complete, complete_with_loops, policy_invariance_report
from .cuts import (
    CutKind,
    ModularCut,
    all_modular_cuts,
    classify_cut,
    generated_cut,
    is_modular_cut,
    nonprincipal_cuts,
    principal_cut,
)
from .errors import *  # noqa: F401,F403
from .extension import extend, verify_corollaries
from .fileformat import parse, serialize
from .isomorphism import find_isomorphism, is_isomorphic
from .lines import Verdict, find_line_arrangements
from .matroid import (
    Matroid,
    contract,
    delete,
    direct_sum,
    elements_of,
    from_bases,
    from_circuits,
    from_flats,
    mask_of,
    relabel,
    restrict,
)
from .modularity import (
    hypermodular_witness,
    is_hypermodular,
    is_modular,
    matroid_modular_defect,
    modular_defect_pair,
    nonmodular_pairs,
)
