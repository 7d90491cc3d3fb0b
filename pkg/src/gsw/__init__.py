"""gsw: actor-centric semantic workspace runtime.

An operator turns text segments into workspace instances (actors with
roles and states, predicate edges, open questions); a reconciler merges
successive instances into a consensus working memory through pairwise
classification decisions.
"""

__version__ = "0.1.0"
