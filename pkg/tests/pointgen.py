"""Random sheaf-map points with a balanced splitting type."""
from __future__ import annotations

import random

from quotmmp import BinaryForm, FieldSpec, ModuliParams, SheafMapPoint


def balanced_degrees(p: ModuliParams) -> list[int]:
    c, l = p.ceil_ds, p.l
    return [c] * (p.s - l) + [c - 1] * l


def random_point(p: ModuliParams, rng: random.Random, F: FieldSpec, degrees=None) -> SheafMapPoint:
    degrees = balanced_degrees(p) if degrees is None else list(degrees)
    q = F.characteristic or 7  # small integers over Q
    entries = [[BinaryForm(a, [rng.randrange(q) for _ in range(a + 1)], F) for a in degrees]
               for _ in range(p.n)]
    return SheafMapPoint(p, tuple(degrees), tuple(tuple(r) for r in entries), F)
