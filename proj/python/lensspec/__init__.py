"""Dirac spectra and isospectral families of spin lens spaces."""

import json

from ._core import (
    FormatError,
    LensspecError,
    NoSpinStructure,
    NotCoprime,
    SpinLensSpace,
    VerificationFailed,
    canonical_form,
    dirac_isospectral,
    family_thm51,
    family_thm52,
    family_thm53,
    find_isometry,
    fingerprint_digest,
    inverse_isospectral,
    multiplicity,
    oracle_compare,
    reduced_counts,
    spectrum_table,
    spin_structures,
    verify_family,
)
from ._core import run_census as _run_census

__version__ = "0.1.0"


def run_census(dimension, q_min, q_max, mode="unoriented", tables=False):
    """Census results as the decoded JSON document (format_version 1)."""
    return json.loads(_run_census(dimension, q_min, q_max, mode, tables))
