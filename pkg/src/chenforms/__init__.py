"""Chen iterated integrals of level-11 modular forms and higher-order forms built from them."""
from __future__ import annotations

from .chen import (
    MODULAR_CONFIG,
    POLYNOMIAL_CONFIG,
    Estimate,
    QuadratureConfig,
    Word,
    compose,
    evaluate_on_chain,
    iterated_integral,
    lift_path,
    parse_word,
    shuffle_check,
)
from .errors import *  # noqa: F401,F403
from .group_algebra import (
    B,
    C,
    GAMMA0_11,
    IDENTITY,
    S,
    T,
    GroupElement,
    GroupRingElement,
    augmentation,
    delta_product,
    elliptic_telescoping,
    in_gamma0,
    inclusion_exclusion_expand,
    make_element,
    parse_element,
)
from .higher_order import (
    D,
    HigherOrderForm,
    dual_basis_coefficients,
    hof_eval,
    order_certificate,
    period,
    period_matrix,
    psi_image,
    section_construct,
)
from .hodge import decompose, recombine, stratum_census
from .modular_letters import Letter, Orientation, Polynomial, QExpansion, eval_form, height_lift, named_form, parse_letter
from .paths import Path, concat, line, mobius_image, reverse

__version__ = "0.1.0"
