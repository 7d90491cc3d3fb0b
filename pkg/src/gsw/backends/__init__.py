"""Operator backends: fixture/heuristic mock and remote HTTP oracle."""

from .config import (
    API_KEY_ENV,
    ENDPOINT_ENV,
    FULL_STAGE,
    GENERATION_STAGES,
    PARSE_CLEAN,
    PARSE_FAILED,
    PARSE_REPAIRED,
    BackendConfig,
    BackendConfigError,
    BackendError,
    Decoding,
    OracleRequest,
    RawOracleOutput,
    TransportError,
)
from .generate import (
    GenerationResult,
    backend_for,
    generate,
    generate_instance,
    merge_stage,
    scrub_negatives,
)
from .mock import (
    FixtureStore,
    MockBackend,
    context_hash,
    heuristic_instance,
    mock_lookup,
    normalize_context,
    stage_slice,
)
from .parse import REPAIR_PASSES, parse_oracle_output
from .remote import (
    RemoteBackend,
    call_remote,
    generate_payload,
    post_with_retries,
    reconcile_payload,
)

__all__ = [
    "API_KEY_ENV",
    "ENDPOINT_ENV",
    "FULL_STAGE",
    "GENERATION_STAGES",
    "PARSE_CLEAN",
    "PARSE_FAILED",
    "PARSE_REPAIRED",
    "REPAIR_PASSES",
    "BackendConfig",
    "BackendConfigError",
    "BackendError",
    "Decoding",
    "FixtureStore",
    "GenerationResult",
    "MockBackend",
    "OracleRequest",
    "RawOracleOutput",
    "RemoteBackend",
    "TransportError",
    "backend_for",
    "call_remote",
    "context_hash",
    "generate",
    "generate_instance",
    "generate_payload",
    "heuristic_instance",
    "merge_stage",
    "mock_lookup",
    "normalize_context",
    "parse_oracle_output",
    "post_with_retries",
    "reconcile_payload",
    "scrub_negatives",
    "stage_slice",
]
