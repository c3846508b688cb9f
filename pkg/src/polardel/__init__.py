"""Polar coding over a binary erasure channel followed by adversarial deletions."""

__version__ = "0.1.0"

from ._accel import BACKEND
from .alphabet import ERASURE, bits, erasure_count, ternary, to_str
from .bounds import (optimal_r, optimal_r_detail, q_function, q_inverse, scaling_error_estimate,
                     simulation_r, total_error_bound)
from .channels import (DeletionParams, TrialRng, bec_transmit, cascade_transmit, delete_symbols,
                       deletion_sets)
from .listdecode import (CandidateSet, DecodeOutcome, build_candidate_set, build_candidate_set_d,
                         decode_received, embedding_count, filter_survivors, list_decode,
                         select_message)
from .polar import (PolarCode, SCDecodeResult, Status, bhattacharyya, bit_reversal_permutation,
                    construct_code, polar_encode, polar_transform, sc_decode, sc_decode_batch)
from .precode import (CRC_TABLE, CrcSpec, RandomParitySpec, attach_redundancy, check_redundancy,
                      crc_remainder)
from .sim import ExperimentConfig, ExperimentRecord, emit_csv, run_experiment, run_trial
