"""Truncated Fock-space simulator for photon-coherence decay in a single-mode
optomechanical cavity coupled to thermal and squeezed-thermal reservoirs."""

from .evolution import (
    IntegratorMethod,
    IntegratorOptions,
    StiffnessError,
    Trajectory,
    convergence_check,
    exact_expm_evolve,
    integrate,
)
from .experiments import (
    InitialStateSpec,
    RunConfig,
    SweepGrid,
    coherence,
    coherence_time,
    config_from_dict,
    config_to_dict,
    crossing_time,
    initial_state,
    load_config,
    run,
    run_trajectory,
    sweep,
)
from .fock import (
    SpaceSpec,
    as_density_matrix,
    cavity_op,
    create,
    destroy,
    displacement,
    fock_ket,
    identity,
    mech_op,
    number,
    partial_trace_mech,
    polaron_unitary,
    product_ket,
    tensor,
    thermal_state,
    validate_density_matrix,
    validate_ket,
)
from .liouvillian import (
    DissipationMode,
    Liouvillian,
    VariantId,
    build_liouvillian,
    dissipator,
    expand_dressed_dissipator,
    hamiltonian_superoperator,
    sandwich,
    spost,
    spre,
    squeeze_cross_term,
)
from .model import (
    OMEGA_M,
    SystemParams,
    dressed_energy,
    dressed_state,
    hamiltonian_dressed,
    hamiltonian_lab,
)
from .presets import PRESET_NAMES, Preset, execute_preset, get_preset
from .reservoir import (
    ReservoirSpec,
    SqueezedCoefficients,
    cavity_squeezed_coefficients,
    dephasing_rate_high_t,
    dephasing_rate_thermal,
    sme_extra_rates,
    squeeze_dephasing_factor,
    squeezed_coefficients,
)

__version__ = "0.1.0"
