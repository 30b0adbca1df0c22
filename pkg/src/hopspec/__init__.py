"""Spectral computations for the random +-1 hopping operator.

The package computes the periodic part of the operator's spectrum through
exact integer polynomial recurrences, enumerates the polynomial-symmetry
family attached to palindromic sign patterns, evaluates explicit upper and
lower bound regions, and renders the complex dynamics (filled Julia sets,
backward clouds) of the symmetry polynomials.
"""

from .charpoly import (
    IntPoly,
    all_plus_poly,
    alternating_poly,
    floquet_discriminant,
    format_poly,
    jacobi_charpoly,
    palindromic_discriminant,
    quarter_turn,
    section_charpoly,
    symmetry_polynomials,
)
from .signvec import (
    SignVector,
    all_sign_vectors,
    cyclic_shift,
    is_symmetry_vector,
    negate,
    parity,
    reverse,
    symmetry_vectors,
)
from .roots import (
    Bracket,
    RootSet,
    all_roots,
    bisect_root,
    durand_kerner,
    level_one_crossings,
    make_bracket,
    preimage_roots,
    pseudospec_angle,
    radial_cubic,
    real_roots_in,
    roots_with_multiplicity,
    shifted_roots,
)
from .spectra import (
    SpectralCloud,
    eigenvalue_cloud,
    embed_section,
    finite_spectrum,
    one_sided_hausdorff,
    periodic_cloud,
    periodic_spectrum,
    periodic_spectrum_bloch,
    periodic_spectrum_distance,
    symmetry_cloud,
    symmetry_membership_distance,
)
from .bounds import (
    RasterGrid,
    disk_gap_radius,
    in_diamond,
    in_lower_bound_region,
    in_pseudospectral_bound,
    in_second_order_range,
    lower_region_mask,
    preimage_radius,
    pseudo_epsilon,
    pseudospectral_mask,
    pseudospectral_raster,
    raster_membership,
    second_order_radius,
    smallest_singular_value,
)
from .dynamics import (
    Certificate,
    OrbitVerdict,
    TrapParams,
    classify_critical_orbits,
    classify_orbit,
    critical_points,
    filled_julia_raster,
    find_attracting_fixed_points,
    offdisk_fixed_point_certificate,
    preimage_cloud,
)

__version__ = "0.1.0"
