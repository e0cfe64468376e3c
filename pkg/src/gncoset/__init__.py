"""Modified G_N-coset codes with complexity-adaptive ML decoding."""

from .codes import (
    CodeSpec,
    ReliabilityProfile,
    rm_info_set,
    beta_expansion_ranking,
    rm_polar_info_set,
    pac_precoder,
    sample_drm_polar,
    frozen_value,
    crc_attach,
    crc_check,
    save_spec,
    load_spec,
)
from .transform import bit_reversal_perm, polar_transform, encode
from .channel import snr_to_sigma, transmit, frame_rng
from .engine import (
    MetricMode,
    SCState,
    sc_decode,
    resume_from,
    score_of,
    codeword_metric,
    estimate_first_error_probs,
)
from .scos import DecodeResult, FlipSet, scos_decode
from .decoders import (
    FanoParams,
    FlipMetricParams,
    dscf_decode,
    sc_fano_decode,
    scf_decode,
    scl_decode,
)
from .oracle import VSetReport, enumerate_v_set, lemma1_check, ml_decode_bruteforce
from .harness import SimConfig, SimRecord, run_sweep, write_csv

__version__ = "0.1.0"
