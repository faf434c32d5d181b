"""Coinvariant algebras of finite linear groups and their block bases."""

from __future__ import annotations

from .blockbasis import (
    BlockCandidate,
    BlockCertificate,
    NoBlockBasis,
    auto_candidate,
    coinvariant_product,
    compose_blocks,
    critical_monomials,
    refute_gman,
    verify_block_basis,
)
from .errors import AlgebraError
from .gf import FieldSpec, field_of_order, make_field
from .groups import parse_group
from .ideal import GradedIdealBasis
from .invariants import InvariantSystem, system_for
from .poly import Monomial, Polynomial, VarContext

__all__ = [
    "AlgebraError",
    "BlockCandidate",
    "BlockCertificate",
    "FieldSpec",
    "GradedIdealBasis",
    "InvariantSystem",
    "Monomial",
    "NoBlockBasis",
    "Polynomial",
    "VarContext",
    "auto_candidate",
    "coinvariant_product",
    "compose_blocks",
    "critical_monomials",
    "field_of_order",
    "make_field",
    "parse_group",
    "refute_gman",
    "system_for",
    "verify_block_basis",
]

__version__ = "0.1.0"
