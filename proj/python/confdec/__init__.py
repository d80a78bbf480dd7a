"""Confluence analysis for first-order term rewrite systems."""

from ._confdec import (
    ConfdecError,
    __version__,
    check,
    curry,
    infer_sorts,
    modular_components,
    normalize,
    partial_parametrization,
    u_normal_form,
    uncurry_rules,
)

__all__ = [
    "ConfdecError",
    "__version__",
    "check",
    "curry",
    "infer_sorts",
    "modular_components",
    "normalize",
    "partial_parametrization",
    "u_normal_form",
    "uncurry_rules",
]
