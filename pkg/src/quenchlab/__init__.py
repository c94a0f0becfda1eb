"""quenchlab: exact-diagonalization toolkit for non-ergodic thermalization.

Builds magnetization-sector spin chains and single-excitation spin-boson
models, diagonalizes them, and computes the correlated-quench diagnostics:
survival probability dynamics, diagonal-ensemble averages and fluctuations,
two-time ergodicity correlators, and long-time OTOCs with a closed-form
prediction.
"""

__version__ = "0.1.0"

from .ansatz import (
    AnsatzReport,
    OffDiagonalProfile,
    ansatz_residual,
    default_shell,
    eta_overlap,
    offdiagonal_profile,
)
from .basis import (
    SectorBasis,
    SpinBosonBasis,
    SpinConfiguration,
    enumerate_sector,
    locate,
)
from .campaign import (
    CampaignConfig,
    DiagnosticsRecord,
    fit_loglog_slope,
    load_config,
    neel_bits,
    parse_config,
    run_campaign,
)
from .errors import (
    BasisLookupError,
    CapacityError,
    ConfigError,
    DiagonalizationError,
    EmptyWindowError,
    ParameterError,
    QuenchLabError,
)
from .models import (
    HamiltonianMatrix,
    MixedFieldChainParams,
    NnXxxParams,
    SpinBosonParams,
    build_mixed_field_bath,
    build_mixed_field_chain,
    build_nn_xxx,
    build_spin_boson,
    embed_bath_vector,
    sigma_z_system_diag,
    total_sz_diag,
)
from .otoc import (
    OtocResult,
    OtocSeries,
    PauliObservablePair,
    otoc_result,
    otoc_series,
    otoc_theory,
    otoc_time_average_ed,
    sigma_z_pair,
    survival_pair,
)
from .quench import (
    MomentVector,
    QuenchState,
    TimeSeries,
    de_average,
    de_fluctuations,
    expectation_series,
    ipr,
    moments,
    prepare_quench,
    survival_probability_observable,
    survival_probability_series,
    two_time_average,
)
from .spectral import (
    DegeneracyReport,
    EigenSystem,
    ObservableMatrix,
    SpectralDensity,
    density_of_states,
    detect_degeneracies,
    diagonalize,
    microcanonical_average,
    rotate_observable,
)
from .wigner_weisskopf import WwParams, ww_coefficients, ww_fluctuations, ww_ipr
