"""Uniform random tilings: direct draws from an enumeration, and monotone
coupling from the past over height functions.

Randomness comes from SplitMix64 used as a counter-based generator, so
every draw is a pure function of ``(seed, counter)``:

    mix(z):  z = (z + 0x9E3779B97F4A7C15) mod 2^64
             z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2^64
             z = (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2^64
             return z ^ (z >> 31)

    word(key, i)     = mix(key + i * 0x9E3779B97F4A7C15 mod 2^64)
    derive(seed, i)  = mix(seed ^ mix(i))

A uniform index below n is the first ``word(key, i) % n`` (i = 0, 1, ...)
whose word is below ``2^64 - (2^64 mod n)``.  Sample number i of a batch
uses ``derive(seed, i)``; the CFTP move at time -t uses key
``derive(sample_seed, t)`` and picks uniformly among (interior vertex,
direction) pairs.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .core import Polycell, PolycellError
from .oracle import brute_force_tilings
from .tilability import run_algorithm
from .tilings import Tiling, heights_of, tiling_from_heights

MASK = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15


def mix(z: int) -> int:
    z = (z + GAMMA) & MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


def word(key: int, i: int) -> int:
    return mix((key + i * GAMMA) & MASK)


def derive(seed: int, i: int) -> int:
    return mix((seed ^ mix(i & MASK)) & MASK)


def uniform_index(key: int, n: int) -> int:
    if n <= 0:
        raise ValueError("n must be positive")
    limit = (1 << 64) - ((1 << 64) % n)
    i = 0
    while True:
        w = word(key, i)
        if w < limit:
            return w % n
        i += 1


class SamplerError(PolycellError):
    pass


@dataclass(frozen=True)
class SamplerConfig:
    seed: int
    method: str = "cftp"
    max_doubling: int = 30

    def __post_init__(self):
        if not 0 <= self.seed <= MASK:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.method not in ("exact", "cftp"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.max_doubling < 1:
            raise ValueError("max_doubling must be at least 1")


def sample_exact(P: Polycell, all_tilings: Sequence[Tiling], seed: int) -> Tiling:
    if not all_tilings:
        raise SamplerError("untilable")
    ordered = sorted(all_tilings)
    return ordered[uniform_index(seed & MASK, len(ordered))]


class CoupledChains:
    """Bottom and top height chains of a full contractible tilable polycell."""

    def __init__(self, P: Polycell):
        self.P = P
        self.bottom = heights_of(P, run_algorithm(P, "bottom").tiling)
        self.top = heights_of(P, run_algorithm(P, "top").tiling)
        self.interior = P.interior_vertices
        k = P.k
        self._down = {}
        self._up = {}
        for v in self.interior:
            outs = [P.graph.edges[e][1] for e in P.out_edges[v]]
            ins = [P.graph.edges[e][0] for e in P.in_edges[v]]
            # (neighbor, required offset) pairs for each move
            self._down[v] = [(w, 1 - k) for w in outs] + [(u, -1) for u in ins]
            self._up[v] = [(w, 1) for w in outs] + [(u, k - 1) for u in ins]

    def apply(self, h: list[int], v: int, up: bool) -> None:
        """Raise (or lower) h[v] by k in place when the result is a height function."""
        hv = h[v]
        pattern = self._up[v] if up else self._down[v]
        for w, offset in pattern:
            if h[w] != hv + offset:
                return
        h[v] = hv + self.P.k if up else hv - self.P.k

    def move(self, key: int, t: int) -> tuple[int, bool]:
        choice = uniform_index(derive(key, t), 2 * len(self.interior))
        return self.interior[choice >> 1], bool(choice & 1)

    def sample(self, seed: int, max_doubling: int = 30) -> Tiling:
        if self.bottom == self.top or not self.interior:
            return tiling_from_heights(self.P, self.bottom)
        T = max(1, len(self.interior))
        for _ in range(max_doubling + 1):
            lo, hi = list(self.bottom), list(self.top)
            for t in range(T, 0, -1):
                v, up = self.move(seed, t)
                self.apply(lo, v, up)
                self.apply(hi, v, up)
            if lo == hi:
                return tiling_from_heights(self.P, lo)
            T *= 2
        raise SamplerError("coalescence cap reached")


def sample_cftp(P: Polycell, seed: int, max_doubling: int = 30) -> Tiling:
    return CoupledChains(P).sample(seed & MASK, max_doubling)


def sample_many(
    P: Polycell,
    config: SamplerConfig,
    n: int,
    all_tilings: Sequence[Tiling] | None = None,
    workers: int = 1,
) -> list[Tiling]:
    """n independent samples; sample i uses the sub-seed ``derive(seed, i)``."""
    if config.method == "exact":
        pool = sorted(all_tilings if all_tilings is not None else brute_force_tilings(P))

        def draw(i):
            return sample_exact(P, pool, derive(config.seed, i))

    else:
        chains = CoupledChains(P)

        def draw(i):
            return chains.sample(derive(config.seed, i), config.max_doubling)

    if workers <= 1:
        return [draw(i) for i in range(n)]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(draw, range(n)))
