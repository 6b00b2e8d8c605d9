"""Discrimination error rates and mutual information for displacement /
photon-counting receivers acting on 3PSK and 4PSK coherent states.

Closed-form receiver statistics live in :mod:`pskrx.static_receivers` and
:mod:`pskrx.feedforward`; benchmark limits in :mod:`pskrx.bounds`;
information quantities in :mod:`pskrx.infotheory`.  Every analytic result
is cross-validated by the Monte Carlo trajectory oracle in
:mod:`pskrx.simulate`, whose hot loops run on a compiled kernel when the
extension is built (``pskrx.kernels.BACKEND`` tells which).
"""

from .bounds import (
    bondurant_asymptote,
    eigenvalues_closed_form,
    helstrom_psk,
    heterodyne_error_rate,
    heterodyne_wedge_probs,
    symmetric_eigenvalues,
)
from .detection import IDEAL_DETECTOR, DetectorModel, p_off, p_off_intensity, sample_click
from .feedforward import (
    ClickProbs,
    FeedforwardSpec,
    channel_matrix_ff,
    click_probs,
    error_rate_3psk_ff,
    error_rate_3psk_ff_asymptotic,
    error_rate_3psk_ff_ideal,
    error_rate_3psk_ff_optdisp,
    error_rate_4psk_ff,
    error_rate_4psk_ff_asymptotic,
    error_rate_4psk_ff_ideal,
    error_rate_4psk_map,
    error_rate_ff,
    map_nulling_threshold,
    optimized_beta,
    step_reflectances,
)
from .infotheory import (
    UsdPovm,
    heterodyne_channel,
    heterodyne_mutual_information,
    helstrom_channel,
    mutual_information,
    uniform_priors,
    usd_channel,
    usd_mutual_information,
    usd_povm,
    validate_channel,
)
from .kernels import BACKEND
from .signal_model import (
    ComplexAmplitude,
    PskConstellation,
    beam_split,
    displace,
    overlap,
    psk_amplitude,
)
from .simulate import McResult, TrajectoryOutcome, run_mc, sample_trajectories
from .static_receivers import (
    OptimizeStaticResult,
    StaticReceiver3,
    StaticReceiver4,
    channel_matrix_3psk,
    channel_matrix_4psk,
    decision_channel_3psk,
    error_rate_3psk,
    error_rate_4psk,
    event_probs_4psk,
    optimize_static,
)

__version__ = "0.1.0"
