"""prepspace: quantum states as probability/phase coordinates with canonical dynamics.

States are points (p_i, phi_i) on a probability simplex with phases attached;
measurement-frame changes are the metric-preserving (doubly stochastic plus
phase) transformations; time evolution is Hamilton-like in these coordinates.
Everything is differentially verified against the embedded complex-amplitude
oracle in :mod:`prepspace.hilbert_oracle`.
"""

__version__ = "0.1.0"

from .bloch2 import (
    SpherePoint,
    cosine_law_theta,
    evolve_two_level,
    from_sphere,
    rotation_frame,
    sphere_line_element2,
    to_sphere,
)
from .dynamics import (
    Trajectory,
    conserved_energy_drift,
    evolve,
    flow_volume_residual,
    hamilton_rhs,
    mean_value,
    poisson_bracket,
)
from .errors import (
    BoundaryCrossing,
    BoundaryState,
    DimensionMismatch,
    InvalidFrame,
    NegativeProbability,
    NotHermitian,
    NotNormalized,
    NotUnitary,
    PrepspaceError,
    StepRejected,
)
from .frame_transform import (
    FrameChange,
    FrameValidation,
    RealPairTransform,
    SymplecticMatrices,
    apply_frame,
    frame_from_unitary,
    frame_jacobian,
    probability_split,
    random_frame,
    real_pair_validate,
    to_real_pair,
    to_unitary,
    validate_frame,
)
from .hilbert_oracle import (
    AmplitudeVector,
    apply_unitary,
    commutator_rate,
    expectation,
    propagate,
    to_amplitudes,
    to_preparation,
)
from .metric import (
    LineElementBreakdown,
    fubini_study_angle,
    invariance_residual,
    line_element2,
    phase_variance2,
    statistical_distance2,
)
from .operators import HermitianOperator, hermitian
from .prep_state import (
    CartesianChart,
    Preparation,
    TangentDisplacement,
    from_cartesian,
    gauge_fix,
    new_preparation,
    prep_distance_check,
    shift_all_phases,
    to_cartesian,
    wrap_angle,
)
