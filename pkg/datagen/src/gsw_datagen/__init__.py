"""Silver-standard dataset generation for workspace operator/reconciler
training: teacher-LLM instance harvesting, pairwise label extraction,
negative-sample injection, and fine-tuning config emission."""

__version__ = "0.1.0"
