"""Catalog of low-dimensional subalgebra representatives and their checks."""

from .model import CatalogEntry, get_entry, list_entries, parse_catalog, serialize_catalog
from .samples import SampleAssignment, build_sample, samples_for
from .verify import (
    DistinguishReport,
    SweepReport,
    VerificationReport,
    check_constraints,
    distinguish,
    requirement_satisfiable,
    sweep,
    verify_entry,
)

__all__ = [
    "CatalogEntry", "get_entry", "list_entries", "parse_catalog", "serialize_catalog",
    "SampleAssignment", "build_sample", "samples_for", "DistinguishReport", "SweepReport",
    "VerificationReport", "check_constraints", "distinguish", "requirement_satisfiable",
    "sweep", "verify_entry",
]
