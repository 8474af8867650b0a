"""Rational points on genus-3 curves through a rank-0 genus-1 quotient.

Given a smooth plane quartic or genus-3 hyperelliptic curve C with a coordinate
involution sigma, the quotient D = C/<sigma> has genus 1.  When D has Mordell-Weil
rank 0 its rational points are torsion and finitely many, and C(Q) is the union of
the rational fibers of C -> D.
"""
from .descent import SolveOptions, SolveResult, audit_bounds, search_points, solve_curve
from .elliptic import ECPoint, TorsionGroup, mordell_weil_rank0, rank0_falsify, torsion_subgroup
from .genus1 import find_point_genus1, quartic_to_weierstrass
from .models import (
    CurvePoint, Genus1Quartic, HyperellipticG3, PlaneQuartic, WeierstrassCurve, count_points_fp,
    good_reduction, validate_genus1, validate_hyperelliptic, validate_quartic,
)
from .pipeline import emit_summary, parse_record, run_batch
from .symmetry import build_quotient, detect_involutions, is_ciani

__version__ = "0.1.0"
