"""Polar code construction, coding and AWGN BLER simulation toolkit."""

from ._accel import NUMBA_ENABLED
from .channel import ChannelParams, awgn_add, qpsk_llr, qpsk_modulate, snr_convert
from .codec import (
    CRC19_DEFAULT,
    CrcSpec,
    DecodeCandidate,
    DecodeResult,
    ca_scl_decode,
    crc_check,
    crc_encode,
    encode,
    generator_entry,
    sc_decode,
    scl_decode,
)
from .construction import (
    BecParams,
    DEFAULT_EPW_TERMS,
    DEFAULT_HPW_PARAMS,
    DEFAULT_PW_BETA,
    EpwTerm,
    GaParams,
    HpwParams,
    MethodSpec,
    PwParams,
    bec_table,
    epw_weight,
    ga_phi,
    ga_phi_inv,
    ga_table,
    hpw_weight,
    parse_method,
    pw_family_table,
    pw_weight,
)
from .core import (
    CodeSpec,
    IndexBits,
    ReliabilitySequence,
    WeightTable,
    extract_nested,
    index_bits,
    rank_by_weight,
    read_sequence,
    select_code,
    write_sequence,
)
from .simulator import (
    BlerPoint,
    ComparisonResult,
    SimConfig,
    SweepResult,
    compare_methods,
    k_grid,
    required_snr,
    run_point,
    run_sweep,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
