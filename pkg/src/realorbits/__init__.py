"""Real-group orbits on real symmetric varieties via twisted N0-actions on torus torsion."""

from .abelian import GroupElement, SubgroupSpec, TorsionGroup, quotient, squares, two_torsion
from .action import (
    Orbit,
    OrbitSet,
    TwistedAction,
    TwistedGenerator,
    apply,
    compose,
    orbit_of,
    orbits,
    validate,
)
from .errors import (
    AmbientMismatch,
    InternalError,
    InvalidFamily,
    LimitExceeded,
    NotASubgroup,
    NotAState,
    ParseError,
    RankLimit,
    ValidationFailed,
)
from .families import (
    build_plain_w0,
    build_plain_w00,
    build_sl_so,
    canonical_form_sl_so,
    load_spec,
)
from .slice import SignaturePair, SlicePoint, signature, slice_action, sqrt_twist, square_map

__version__ = "0.1.0"
