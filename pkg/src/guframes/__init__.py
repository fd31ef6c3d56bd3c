"""Frames with abelian-group symmetry: analysis, duals, pruning, design.

The package builds frames as orbits of one or more generating vectors
under a finite abelian group of unitary matrices, computes their dual
and canonical tight frames through a Fourier transform over the group,
studies the spectra left by removing elements, fits group-structured
frames to arbitrary frames in the least-squares sense, and examines
distance spectra of cyclic diagonal constructions.
"""

from .abelian import (
    GroupElement,
    GroupSpec,
    element_at,
    elements,
    ft_apply,
    ft_kernel,
    ft_matrix,
    identity,
    ift_apply,
)
from .cgu import (
    BoundsEnvelope,
    CGUFrame,
    CommutationPhases,
    GUGenerators,
    bounds_envelope,
    cgu_canonical_generators,
    cgu_dual_generators,
    cgu_fast_generators,
    cgu_synthesize,
    combined_gu,
    commutation_phases,
)
from .distance import (
    FixedPointCheck,
    MinDistanceResult,
    cyclic_fpf_rep,
    distance_profile,
    is_fixed_point_free,
    min_distance_search,
    totient,
)
from .errors import NumericalError, ValidationError
from .frames import (
    Frame,
    canonical_tight,
    dual_frame,
    expand,
    frame_bounds,
    frame_operator,
    r_phi_mu,
    reconstruct,
)
from .gu import (
    FTDiagonalization,
    GUFrame,
    PermutedGramResult,
    SpectralReport,
    UnitaryRep,
    ft_diagonalizes,
    gram_to_gu,
    gu_canonical,
    gu_dual,
    gu_spectral,
    is_permuted_gram,
    spectral_report,
    synthesize,
)
from .lsguf import (
    TargetGram,
    build_target_gram,
    c_lsguf,
    ls_error,
    naive_gu_projection,
    sc_lsguf,
    sc_lsguf_closed_form,
)
from .matops import (
    DEFAULT_RANK_TOL,
    DEFAULT_TOL,
    HermEig,
    SVDResult,
    herm_eig,
    neumann_inverse,
    psd_fun,
    series_invsqrt,
    svd,
)
from .pruning import (
    CosetPruneResult,
    PruneInvarianceReport,
    prune_coset_spectrum,
    prune_invariance_check,
    prune_one_spectrum,
    pruned_tight_spectrum,
)

__version__ = "0.1.0"
