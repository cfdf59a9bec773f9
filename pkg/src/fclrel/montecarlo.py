"""Monte Carlo estimate of time to absorption for a :class:`StateDiagram`.

Each trial walks the chain as a continuous-time process: it waits an
exponential holding time with the current state's total exit rate, then
jumps to a successor chosen in proportion to the transition rates, until it
is absorbed or the cutoff is passed.

Trials are simulated in fixed-size blocks. Block ``b`` draws from a Philox
generator seeded with ``SeedSequence(seed, spawn_key=(b,))``, so a block's
numbers depend only on ``(seed, b)``. Results are concatenated in block
order, which makes the estimate bit-identical however the blocks are
spread across workers.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .exceptions import ReliabilityError
from .markov import StateDiagram

__all__ = ["McConfig", "McResult", "simulate_mttf", "absorption_times"]

DEFAULT_BLOCK = 1 << 16


@dataclass(frozen=True)
class McConfig:
    trials: int
    seed: int
    max_sim_hours: float
    block_size: int = DEFAULT_BLOCK
    n_jobs: int = 1

    def __post_init__(self):
        if int(self.trials) != self.trials or self.trials < 1:
            raise ReliabilityError(f"trials must be an integer >= 1, got {self.trials!r}")
        if not (math.isfinite(self.max_sim_hours) and self.max_sim_hours > 0):
            raise ReliabilityError(f"max_sim_hours must be finite and > 0, got {self.max_sim_hours!r}")
        if self.block_size < 1 or self.n_jobs < 1:
            raise ReliabilityError("block_size and n_jobs must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ReliabilityError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")


@dataclass(frozen=True)
class McResult:
    mean_ttf: float
    std_error: float
    censored_count: int
    trials: int

    def z_score(self, analytic):
        if self.std_error == 0:
            return 0.0 if self.mean_ttf == analytic else math.inf
        return (self.mean_ttf - analytic) / self.std_error


class _Chain:
    """Jump-chain tables: exit rates and cumulative successor weights."""

    def __init__(self, d: StateDiagram):
        self.states = d.states
        self.index = {s: i for i, s in enumerate(d.states)}
        self.initial = self.index[d.initial]
        self.absorbing = np.array([s in d.absorbing for s in d.states])
        succ = {i: ([], []) for i in range(len(d.states))}
        for (a, b), r in sorted(d.rates().items(), key=lambda kv: (self.index[kv[0][0]], self.index[kv[0][1]])):
            succ[self.index[a]][0].append(self.index[b])
            succ[self.index[a]][1].append(r)
        self.exit = np.zeros(len(d.states))
        self.targets = {}
        self.cum = {}
        for i, (tgt, rates) in succ.items():
            if tgt:
                total = math.fsum(rates)
                self.exit[i] = total
                self.targets[i] = np.array(tgt)
                self.cum[i] = np.cumsum(rates) / total
        self.transient = [i for i in range(len(d.states)) if not self.absorbing[i]]


def _simulate_block(chain, n, seed, block, cutoff):
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(block,))))
    state = np.full(n, chain.initial)
    t = np.zeros(n)
    active = np.ones(n, dtype=bool)
    while active.any():
        for s in chain.transient:
            idx = np.flatnonzero(active & (state == s))
            if idx.size == 0:
                continue
            if chain.exit[s] == 0.0:
                # trapped: time to absorption is unbounded
                t[idx] = math.inf
                active[idx] = False
                continue
            t[idx] += rng.exponential(1.0 / chain.exit[s], idx.size)
            u = rng.random(idx.size)
            pick = np.searchsorted(chain.cum[s], u, side="right")
            pick = np.minimum(pick, chain.targets[s].size - 1)
            state[idx] = chain.targets[s][pick]
        over = active & (t > cutoff)
        active &= ~over
        active &= ~chain.absorbing[state]
    return t


def absorption_times(d: StateDiagram, cfg: McConfig) -> np.ndarray:
    """Per-trial times to absorption (``t > cutoff`` marks a censored trial)."""
    chain = _Chain(d)
    sizes = [cfg.block_size] * (cfg.trials // cfg.block_size)
    if cfg.trials % cfg.block_size:
        sizes.append(cfg.trials % cfg.block_size)

    def run(b):
        return _simulate_block(chain, sizes[b], cfg.seed, b, cfg.max_sim_hours)

    if cfg.n_jobs == 1:
        parts = [run(b) for b in range(len(sizes))]
    else:
        with ThreadPoolExecutor(cfg.n_jobs) as pool:
            parts = list(pool.map(run, range(len(sizes))))
    return np.concatenate(parts)


def simulate_mttf(d: StateDiagram, cfg: McConfig) -> McResult:
    """Estimate the MTTF of ``d`` in hours.

    Censored trials (not absorbed by ``cfg.max_sim_hours``) are left out of
    the mean and counted in ``censored_count``.
    """
    t = absorption_times(d, cfg)
    done = t[t <= cfg.max_sim_hours]
    censored = int(t.size - done.size)
    if done.size == 0:
        raise ReliabilityError(f"cutoff too small: all {cfg.trials} trials censored")
    mean = float(done.mean())
    se = float(done.std(ddof=1) / math.sqrt(done.size)) if done.size > 1 else 0.0
    return McResult(mean, se, censored, cfg.trials)
