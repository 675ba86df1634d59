"""Exact homological algebra for finitely presented graded modules over
quotient rings R = k[x1..xn]/I: Groebner bases, minimal free resolutions,
Tor/Ext, certified projective and injective dimension, and a verification
lab with an independent degreewise linear-algebra oracle."""

__version__ = "0.1.0"

from .fields import QQ, PrimeField, field_from_name
from .poly import PolynomialRing, Polynomial
from .modules import (
    ModuleMap,
    PresentedModule,
    QuotientRing,
    annihilator,
    auslander_transpose,
    biduality_reflexive,
    cyclic_module,
    direct_sum,
    free_module,
    hom_module,
    is_free,
    is_zero,
    map_kernel_image,
    minimal_presentation,
    nzd_test,
    present_module,
    quotient_ring,
    residue_field,
    tensor_product,
    trace_submodule,
    zero_module,
)
from .resolution import (
    BettiTable,
    FreeComplex,
    PdVerdict,
    betti_table,
    cm_profile,
    decide_pd,
    depth,
    depth_ring,
    dim_module,
    dim_ring,
    hilbert_series,
    is_cohen_macaulay,
    is_regular_ring,
    minimal_resolution,
    modules_match,
    render_betti,
    restrict_to_ambient,
    ring_as_module,
    syzygy_module,
)
from .homology import (
    IdVerdict,
    betti_growth_report,
    canonical_module,
    complex_homology,
    decide_id,
    ext,
    ext_module,
    tor,
    tor_vanishes,
    total_tensor_complex,
    totally_reflexive_check,
)
from .groebner import (
    BoundExceededError,
    GroebnerBasis,
    buchberger,
    normal_form,
    syzygy_basis,
)
from .oracle import GradedOracle, ModuleData, oracle_for, tensor_data
from . import lab
from .session import ExecFlags, Report, execute, parse_session, render_session
