"""Frame bounds of Gaussian Gabor systems over planar lattices."""
from .errors import (
    DomainError,
    GaborlabError,
    NotAFrameError,
    NumericalConsistencyError,
    UnsupportedDensityError,
)
from .gabor_core import (
    FrameBounds,
    GridSpec,
    TruncationSpec,
    condition_number,
    heuristic_bounds,
    janssen_series,
    periodization_p,
    sharp_bounds,
    spectrogram_gaussian,
    stft_gaussian,
)
from .landau_constants import IdentityReport, landau_hex, landau_square, verify_constants_link, verify_proof_chain
from .lattice2d import (
    HEXAGONAL_TAU,
    SQUARE_TAU,
    Lattice2D,
    ModuliPoint,
    adjoint,
    from_tau,
    make_hexagonal,
    make_rectangular,
    points_in_radius,
    reduce_tau,
    symplectic_form,
)
from .moduli_scan import (
    LandscapeSample,
    ScanRegion,
    argmin_condition,
    lattice_theta,
    montgomery_argmin,
    rect_sweep,
    scan_landscape,
)

__version__ = "0.1.0"
