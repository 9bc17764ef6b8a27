"""Deterministic seed derivation for independent random substreams.

Every stochastic component takes an integer seed and derives child seeds
through `substream`, so that e.g. sample j of a top-k decode or iteration i
of seed s always sees the same stream regardless of execution order.
"""

import hashlib


def substream(seed: int, *path: object) -> int:
    """Derive a child seed from a parent seed and a path of labels.

    Stable across platforms and processes (SHA-256 of the rendered path).
    """
    text = repr((int(seed),) + tuple(path))
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")
