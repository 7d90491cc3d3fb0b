"""Fine-tuning configuration emission.

The defaults are the documented recipe for the workspace adapters: QLoRA
rank-2 adapters (~1M parameters) on a 13B backbone at 4-bit precision,
10 epochs, batch size 8, dropout 0.05, alpha 32, 1024-token window. Each
situation gets its own plug-and-play adapter id. Executing the training is
out of scope here; this package only emits the dataset and the config.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass


@dataclass
class TrainConfig:
    epochs: int = 10
    batch_size: int = 8
    lora_rank: int = 2
    lora_dropout: float = 0.05
    lora_alpha: int = 32
    max_window_tokens: int = 1024
    precision: str = "4bit"
    base_model: str = "llama-2-13b"
    adapter_template: str = "gsw-{situation}"

    def adapter_for(self, situation: str) -> str:
        return self.adapter_template.format(situation=situation)


def emit_train_config(
    out_dir: str,
    config: TrainConfig,
    situations: list[str],
    counts: dict,
) -> str:
    """Write train_config.json next to the datasets. Counts report both
    documents and examples (the "very few samples" figure is ambiguous
    between the two, so both are recorded)."""
    payload = {
        **asdict(config),
        "adapters": {s: config.adapter_for(s) for s in sorted(situations)},
        "datasets": {
            "operator": "operator.jsonl",
            "rec": "rec.jsonl",
            "qr": "qr.jsonl",
        },
        "counts": counts,
    }
    path = os.path.join(out_dir, "train_config.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, ensure_ascii=False, indent=2, sort_keys=True)
        fh.write("\n")
    return path
