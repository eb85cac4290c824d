from .channels import (  # noqa: F401
    apply_channel,
    basis_encoding,
    basis_measurement,
    classify_channel,
    compose_channels,
    identity_bits,
    unitary_channel,
)
from .models import (  # noqa: F401
    ChannelDescriptor,
    ChannelKind,
    Couplings,
    Readout,
    ReadoutMode,
    RegisterKind,
    ScenarioConfig,
    ScenarioKind,
    Timing,
)
from .reports import CommutationReport, DecoherenceFit, commutation_report, fit_decoherence_rate  # noqa: F401
from .runner import (  # noqa: F401
    commutation_snapshot,
    ensemble_offdiag,
    run_parameter_sweep,
    run_scenario,
    run_seed_sweep,
)
from .toys import CtqActuator, ExternalReader, action_bit, build_cagi_toy, build_custom_scenario, build_qagi_toy  # noqa: F401
