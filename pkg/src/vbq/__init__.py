"""Finite virtual biquandles and coloring invariants of virtual links."""

__version__ = "0.1.0"

from .algebra import (  # noqa: E402
    AxiomReport,
    OperatorTable,
    ValidatedBiquandle,
    VirtualBiquandle,
    derive_vr,
    invert_operator,
    is_homomorphism,
    linear_biquandle,
    swap_operator,
    validate_biquandle,
    validate_virtual,
    virtual,
    wada_from_group,
)
from .braid import BraidWord, GaussCode, braid_to_gauss, parse_braid  # noqa: E402
from .coloring import RepKind, count_colorings, verify_bridge  # noqa: E402
from .gauss import color_gauss, parse_gauss  # noqa: E402
from .kernels import BACKEND  # noqa: E402
