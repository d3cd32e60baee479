"""Deterministic stream splitting from a single master seed.

Every random draw in the simulator comes from a substream addressed by a
(purpose, index...) path.  Streams are derived with numpy's SeedSequence
spawn keys, so the stream for a given path never depends on how many other
streams exist.  Adding trials or topologies therefore never perturbs
earlier draws, and results are independent of worker-thread scheduling as
long as each worker only touches its own paths.
"""

import numpy as np

# purpose ids; part of the reproducibility contract, do not renumber
TOPOLOGY = 1   # node placement for topology draw i        -> (TOPOLOGY, i)
SHADOWING = 2  # shadowing + large-scale state for draw i  -> (SHADOWING, i)
TRIAL = 3      # Monte Carlo trial chunk                   -> (TRIAL, topo_i, receiver_id, chunk_i)


def substream(seed: int, *path: int) -> np.random.Generator:
    """Independent Generator for a master seed and an integer purpose path."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(p) for p in path))
    return np.random.default_rng(ss)
