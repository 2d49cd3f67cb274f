"""Classification of gnat-families on toric resolutions of abelian quotient
singularities: exact divisor-level enumeration, distinguished families and
their symmetries."""

from .enumeration import (
    FamilyCatalog,
    RaySolutionSet,
    brute_force_per_ray,
    enumerate_all,
    orbits,
    per_ray_solutions,
)
from .errors import (
    CatalogTooLarge,
    DimensionUnsupported,
    GnatfamError,
    GroupTooLarge,
    InputError,
    NonFaithful,
    NotGWeil,
    NotIntegral,
)
from .group import (
    AbelianGroup,
    Character,
    GeneratorSpec,
    GroupSpec,
    build_group,
    char_inv,
    char_mul,
    char_order,
    enumerate_characters,
    monomial_weight,
    trivial_character,
)
from .instance import Instance, build_instance
from .lattice import (
    Fan,
    Overlattice,
    Ray,
    RayKind,
    build_lattice,
    classify_rays,
    make_fan,
    minimal_resolution_2d,
    validate_fan,
)
from .reductor import (
    ReductorSet,
    canonical_set,
    char_shift,
    check_reductor,
    is_principal,
    linear_equiv,
    linear_equiv_witness,
    maxshift_set,
    minshift_set,
    normalize,
    reductor_set,
    reflect,
    twist,
)
from .valuation import (
    QDivisor,
    canonical_divisor,
    char_valuation,
    max_shift_coeff,
    max_shift_divisor,
    monomial_valuation,
)

__version__ = "0.1.0"
