"""Exact combinatorics of ECH partitions, indices, scores and chain audits."""

from .exactnum import PerturbedRational, ceil_mul, floor_mul, frac_bar
from .index import (
    PunctureData,
    RelClassData,
    SpectrumModel,
    cz,
    cz_iterated_sum,
    cz_top,
    e_gamma,
    ech_index,
    fredholm_index_delta,
    index_ambiguity,
    j0,
    j0_topological,
    rotation_spectrum,
    shift_class,
    weighted_cz,
    wind_relations,
)
from .orbits import Catalog, OrbitKind, OrbitSet, SimpleOrbit, UnknownOrbit, action, is_ech_generator
from .partitions import (
    bruteforce_positive_partition,
    check_partition_conditions,
    is_exceptional,
    negative_partition,
    positive_partition,
    signed_partition,
)
from .score import End, InvalidRecord, UCurveRecord, k_score, orbit_score, t_gamma, t_prime_gamma, total_score, validate_record
from .auditor import AuditReport, ChainRecord, ConstantsLedger, audit_chain, choose_M, eps_M, solve_min_q, threshold_dichotomy

__version__ = "0.1.0"
