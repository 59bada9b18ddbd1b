"""Markov chain over minimum cycle bases at the level of sli classes.

A state is the set of sli classes occupying the ``nu`` basis slots together
with every sli row expressed in that basis. One step picks a non-basis row
``C'`` uniformly, forms its polyhedron, and removes an equal-length member
``C`` with probability proportional to ``1 / |S(C)|``. The stationary law is
proportional to the number of concrete MCBs a state stands for, so drawing
each class member uniformly afterwards gives a uniform random MCB.

All draws use :class:`random.Random`, whose ``randrange`` is exact for big
integers; class sizes routinely exceed 2**53.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .cycles import EdgeCycle, bits_of
from .pipeline import ComponentDecomposition, Decomposition
from .vfamilies import sample_family_cycle

__all__ = [
    "NoNonBasisRows",
    "SamplerState",
    "initial_state",
    "step",
    "run",
    "realize",
    "transition_probabilities",
    "stationary_weight",
    "enumerate_states",
    "mcb_count",
    "sample_mcb",
]


class NoNonBasisRows(RuntimeError):
    pass


@dataclass
class SamplerState:
    rows: list[int]
    slot_of: list[int]
    where: list[int]
    counts: list[int]
    lengths: list[int]
    rng: random.Random
    steps: int = 0

    @property
    def basis(self) -> frozenset[int]:
        return frozenset(self.slot_of)

    @property
    def nonbasis(self) -> list[int]:
        return [i for i, w in enumerate(self.where) if w < 0]

    def copy(self, rng: random.Random | None = None) -> "SamplerState":
        return SamplerState(
            list(self.rows),
            list(self.slot_of),
            list(self.where),
            self.counts,
            self.lengths,
            rng if rng is not None else self.rng,
            self.steps,
        )


def initial_state(comp: ComponentDecomposition, rng: random.Random | int | None = None) -> SamplerState:
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    sli = comp.classes.sli
    slot_of = [-1] * comp.nu
    for s in sli:
        if s.in_basis:
            slot_of[s.slot] = s.id
    return SamplerState(
        [s.row for s in sli],
        slot_of,
        [s.slot for s in sli],
        [s.count for s in sli],
        [s.length for s in sli],
        rng,
    )


def _candidates(state: SamplerState, c_new: int) -> list[tuple[int, int]]:
    """``(slot, sli id)`` pairs that ``c_new`` may replace; slot -1 means hold."""
    length = state.lengths[c_new]
    out = [(-1, c_new)]
    for j in bits_of(state.rows[c_new]):
        occupant = state.slot_of[j]
        if state.lengths[occupant] == length:
            out.append((j, occupant))
    return out


def _swap(state: SamplerState, c_new: int, j: int) -> None:
    c_old = state.slot_of[j]
    pivot = state.rows[c_new]
    bit = 1 << j
    rows = state.rows
    for i, r in enumerate(rows):
        if r & bit:
            rows[i] = (r ^ bit) ^ pivot
    state.slot_of[j] = c_new
    state.where[c_new] = j
    state.where[c_old] = -1


def step(state: SamplerState) -> SamplerState:
    """Advance one step in place and return the state."""
    nonbasis = state.nonbasis
    if not nonbasis:
        raise NoNonBasisRows("every sli class is in the basis")
    rng = state.rng
    c_new = nonbasis[rng.randrange(len(nonbasis))]
    cands = _candidates(state, c_new)
    denom = lcm(*(state.counts[c] for _, c in cands))
    weights = [denom // state.counts[c] for _, c in cands]
    r = rng.randrange(sum(weights))
    for (j, _c), w in zip(cands, weights):
        r -= w
        if r < 0:
            break
    if j >= 0:
        _swap(state, c_new, j)
    state.steps += 1
    return state


def default_steps(state: SamplerState) -> int:
    return 10 * len(state.rows)


def run(state: SamplerState, n_steps: int | None = None) -> SamplerState:
    """Take ``n_steps`` steps (default ``10 * rows``); a chain with no
    non-basis rows stays put."""
    if n_steps is None:
        n_steps = default_steps(state)
    if n_steps < 0:
        raise ValueError("n_steps must be nonnegative")
    if not state.nonbasis:
        return state
    for _ in range(n_steps):
        step(state)
    return state


def realize(state: SamplerState, comp: ComponentDecomposition, rng: random.Random | None = None) -> list[EdgeCycle]:
    """Concrete cycles for the basis classes, in slot order."""
    rng = rng if rng is not None else state.rng
    out = []
    for c in state.slot_of:
        fams = [comp.families[f] for f in comp.classes.sli[c].families]
        r = rng.randrange(sum(f.count for f in fams))
        for fam in fams:
            r -= fam.count
            if r < 0:
                break
        out.append(sample_family_cycle(fam, comp.dags[fam.root], rng))
    return out


def transition_probabilities(state: SamplerState) -> dict[frozenset[int], Fraction]:
    """Exact one-step law from ``state``, keyed by the next basis."""
    out: dict[frozenset[int], Fraction] = {}
    nonbasis = state.nonbasis
    if not nonbasis:
        return {state.basis: Fraction(1)}
    pick = Fraction(1, len(nonbasis))
    for c_new in nonbasis:
        cands = _candidates(state, c_new)
        total = sum(Fraction(1, state.counts[c]) for _, c in cands)
        for j, c in cands:
            p = pick * Fraction(1, state.counts[c]) / total
            nxt = state.basis if j < 0 else (state.basis - {c}) | {c_new}
            out[nxt] = out.get(nxt, Fraction(0)) + p
    return out


def stationary_weight(state: SamplerState) -> int:
    w = 1
    for c in state.slot_of:
        w *= state.counts[c]
    return w


def enumerate_states(comp: ComponentDecomposition) -> dict[frozenset[int], SamplerState]:
    """Every basis reachable from the initial one (all of them, by irreducibility)."""
    start = initial_state(comp, 0)
    seen = {start.basis: start}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for c_new in s.nonbasis:
            for j, _c in _candidates(s, c_new):
                if j < 0:
                    continue
                t = s.copy()
                _swap(t, c_new, j)
                if t.basis not in seen:
                    seen[t.basis] = t
                    queue.append(t)
    return seen


def mcb_count(dec: Decomposition | ComponentDecomposition) -> int:
    """Number of concrete MCBs, summing class-size products over all states."""
    comps = dec.components if isinstance(dec, Decomposition) else [dec]
    total = 1
    for comp in comps:
        total *= sum(stationary_weight(s) for s in enumerate_states(comp).values())
    return total


def sample_mcb(
    dec: Decomposition, seed: int | None = None, steps: int | None = None, rng: random.Random | None = None
) -> list[list[EdgeCycle]]:
    """One random MCB per component, as cycles in component-local ids."""
    rng = rng if rng is not None else random.Random(seed)
    out = []
    for comp in dec.components:
        state = run(initial_state(comp, rng), steps)
        out.append(realize(state, comp))
    return out
