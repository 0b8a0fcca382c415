"""Ranks, BCP tori and obstruction verdicts for restriction-of-scalars Chabauty
on punctured genus-0 curves, with a small p-adic sieve for S-unit equations."""

from .numfield import (NumberField, SSpec, parse_number_field, rational_field, s_unit_rank,
                       splitting_profile, sspec, tower)
from .puncture import (PuncturedCurve, build_x_alpha_q, curve_from_points, jacobian_profile,
                       jacobian_profile_orbit_form, make_curve)
from .bcp import (cm_bcp_witness, delta_ledger, enumerate_bcp_tori, obstruction_verdict,
                  start_chain)
from .charrank import (classical_chabauty_verdict, semidirect_rank, subtorus_rank_abelian,
                       sunit_prime_count, verify_main_rank_bound, verify_no_subgroup_obstruction)
from .padic import PAdicInt, closure_dimension, padic_log, unit_log_matrix
from .sieve import skolem_sieve, solve_sunit_desk

__version__ = "0.1.0"
