"""Hierarchical policy selection for active-inference navigation agents.

Thin Python surface over the C++ core: graph generation, the edge-state POMDP
model, expected-free-energy policy evaluation, policy embeddings with seeded
k-means pruning, and the benchmark harness.
"""

try:
    from ._actinf import *  # noqa: F401,F403
    from ._actinf import __doc__ as _core_doc  # noqa: F401
except ImportError:  # pragma: no cover - build-tree layout (module beside package)
    from _actinf import *  # noqa: F401,F403
