"""Backend configuration and request/response envelopes."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Optional

from ..core import WorkspaceInstance, normalize_situation

GENERATION_STAGES = ("actors", "roles", "states", "predicates", "questions")
#: Extra stage value used by the single-call mode (whole schema at once).
FULL_STAGE = "full"

ENDPOINT_ENV = "GSW_ENDPOINT"
API_KEY_ENV = "GSW_API_KEY"


class BackendError(Exception):
    """Base class for backend failures."""


class TransportError(BackendError):
    """Retriable transport-level failure (timeouts, 5xx, connection loss)."""


class BackendConfigError(BackendError):
    """Non-retriable configuration problem (bad endpoint, auth, 4xx)."""


@dataclass(frozen=True)
class Decoding:
    temperature: float = 0.0
    max_tokens: int = 1024

    def __post_init__(self):
        if self.temperature < 0:
            raise BackendConfigError("temperature must be >= 0")
        if self.max_tokens <= 0:
            raise BackendConfigError("max_tokens must be positive")


@dataclass(frozen=True)
class BackendConfig:
    """Where and how to run generation/classification.

    `adapter_id` names the plug-and-play per-situation adapter on the
    serving side; `prompt_template_id` carries the task spec. `single_call`
    collapses the five generation stages into one request.
    """

    kind: str  # "mock" | "remote"
    situation: str
    endpoint: Optional[str] = None
    model_name: str = "gsw-oracle"
    prompt_template_id: str = "default"
    decoding: Decoding = field(default_factory=Decoding)
    adapter_id: Optional[str] = None
    fixtures_path: Optional[str] = None
    single_call: bool = False
    retries: int = 3
    timeout: float = 60.0
    backoff_base: float = 0.25

    def __post_init__(self):
        if self.kind not in ("mock", "remote"):
            raise BackendConfigError(f"unknown backend kind: {self.kind!r}")
        object.__setattr__(self, "situation", normalize_situation(self.situation))
        if self.kind == "remote" and not self.resolved_endpoint():
            raise BackendConfigError(
                f"remote backend requires an endpoint (flag or ${ENDPOINT_ENV})"
            )

    def resolved_endpoint(self) -> Optional[str]:
        endpoint = self.endpoint or os.environ.get(ENDPOINT_ENV)
        return endpoint.rstrip("/") if endpoint else None


@dataclass(frozen=True)
class OracleRequest:
    """One stage of conditional generation. `conditioning` is the partial
    instance built by the earlier stages; stage order is enforced by the
    generation driver."""

    context: str
    situation: str
    stage: str
    conditioning: WorkspaceInstance

    def __post_init__(self):
        if self.stage not in GENERATION_STAGES and self.stage != FULL_STAGE:
            raise BackendConfigError(f"unknown generation stage: {self.stage!r}")


PARSE_CLEAN = "clean"
PARSE_REPAIRED = "repaired"
PARSE_FAILED = "failed"


@dataclass(frozen=True)
class RawOracleOutput:
    """Text body of an oracle response plus how parsing went."""

    text: str
    parse_status: str = PARSE_CLEAN
