"""Vertex caps guarding exponential enumerations."""

import os

ENV_VAR = "INTERLACE_VERTEX_CAP"

QLAMBDA_CAP = 14
SUBSET_CAP = 20


class CapExceeded(RuntimeError):
    def __init__(self, what: str, n: int, cap: int, residual=None):
        super().__init__(f"{what}: {n} vertices exceeds the cap of {cap} (set {ENV_VAR} to override)")
        self.n = n
        self.cap = cap
        self.residual = residual


def vertex_cap(default: int) -> int:
    raw = os.environ.get(ENV_VAR)
    if raw:
        return int(raw)
    return default


def check_cap(what: str, n: int, default: int, cap: int | None = None) -> None:
    limit = vertex_cap(default) if cap is None else cap
    if n > limit:
        raise CapExceeded(what, n, limit)
