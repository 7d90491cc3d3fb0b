"""HTTP client for a remote oracle service.

Wire format:
  POST {endpoint}/generate   {"model", "adapter", "situation", "stage",
                              "context", "partial", "temperature",
                              "max_tokens"}          -> {"text": str}
  POST {endpoint}/reconcile  {"task", "old", "new", "context"} -> {"label": int}

Transport failures and 5xx responses are retried with exponential backoff;
4xx responses are configuration errors and are not retried.
"""

from __future__ import annotations

import os
import time
from typing import Any

import requests

from ..core import instance_to_dict
from .config import (
    API_KEY_ENV,
    BackendConfig,
    BackendConfigError,
    OracleRequest,
    RawOracleOutput,
    TransportError,
)


def generate_payload(cfg: BackendConfig, req: OracleRequest) -> dict:
    return {
        "model": cfg.model_name,
        "adapter": cfg.adapter_id,
        "situation": req.situation,
        "stage": req.stage,
        "context": req.context,
        "partial": instance_to_dict(req.conditioning),
        "temperature": cfg.decoding.temperature,
        "max_tokens": cfg.decoding.max_tokens,
    }


def reconcile_payload(task: str, old: dict, new: dict, context: str) -> dict:
    return {"task": task, "old": old, "new": new, "context": context}


def _headers() -> dict[str, str]:
    headers = {"Content-Type": "application/json"}
    api_key = os.environ.get(API_KEY_ENV)
    if api_key:
        headers["Authorization"] = f"Bearer {api_key}"
    return headers


def post_with_retries(cfg: BackendConfig, path: str, payload: dict) -> Any:
    """POST JSON and return the decoded body, honoring the retry policy."""
    endpoint = cfg.resolved_endpoint()
    if not endpoint:
        raise BackendConfigError("no endpoint configured")
    url = f"{endpoint}{path}"
    attempts = cfg.retries + 1
    last_error: Exception | None = None
    for attempt in range(attempts):
        if attempt:
            time.sleep(cfg.backoff_base * (2 ** (attempt - 1)))
        try:
            response = requests.post(
                url, json=payload, headers=_headers(), timeout=cfg.timeout
            )
        except (requests.Timeout, requests.ConnectionError) as exc:
            last_error = TransportError(f"{url}: {exc}")
            continue
        if 400 <= response.status_code < 500:
            raise BackendConfigError(
                f"{url}: HTTP {response.status_code}: {response.text[:200]}"
            )
        if response.status_code >= 500:
            last_error = TransportError(f"{url}: HTTP {response.status_code}")
            continue
        try:
            return response.json()
        except ValueError as exc:
            raise TransportError(f"{url}: response is not JSON: {exc}")
    raise last_error if last_error else TransportError(f"{url}: no attempts made")


def call_remote(cfg: BackendConfig, req: OracleRequest) -> RawOracleOutput:
    """One chat-completion-style request for one generation stage."""
    if cfg.kind != "remote":
        raise BackendConfigError("call_remote requires a remote backend config")
    body = post_with_retries(cfg, "/generate", generate_payload(cfg, req))
    if not isinstance(body, dict) or not isinstance(body.get("text"), str):
        raise TransportError("malformed oracle response: missing text field")
    return RawOracleOutput(body["text"])


class RemoteBackend:
    """Stage oracle talking to the remote inference service."""

    def __init__(self, cfg: BackendConfig):
        self.cfg = cfg

    def stage_output(self, req: OracleRequest) -> RawOracleOutput:
        return call_remote(self.cfg, req)
