r"""Absorbing Markov chain MTTF engine.

A system is described by a :class:`StateDiagram`: labelled states, some of
which are absorbing (system failure), joined by transitions carrying
constant hazard rates in failures per hour. The engine forms the one-hour
stochastic transition matrix ``P``, drops the absorbing rows and columns to
get ``Q``, and reads the mean time to absorption off the fundamental matrix

.. math::

    M = (I - Q)^{-1}, \qquad \mathrm{MTTF}_i = \sum_j M_{ij}.

Rates are tiny compared to one (1e-9 .. 1e-3 per hour), so ``I - Q`` is never
formed as ``1 - P_ii``: its diagonal is rebuilt from the off-diagonal row
sums, which keeps full relative precision.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from .exceptions import DiagramError, InfiniteMTTFError
from .units import fit_to_per_hour, per_hour_to_fit

__all__ = [
    "StateDiagram",
    "TransitionMatrix",
    "build_transition_matrix",
    "truncate",
    "fundamental_matrix",
    "mttf",
    "parse_diagram",
    "format_diagram",
]

# Relative conditioning limit for the row-equilibrated I - Q.
SINGULAR_RCOND = 1e-12

_IDENT = re.compile(r"^[A-Za-z0-9_]+$")


@dataclass(frozen=True)
class StateDiagram:
    """Transient/absorbing states joined by rate-labelled transitions.

    Parameters
    ----------
    states : sequence of str
        State identifiers, in the order used for matrix rows.
    absorbing : iterable of str
        Subset of ``states`` that are absorbing (failed).
    transitions : sequence of (from, to, rate)
        Rates in failures per hour. Repeated ``(from, to)`` pairs are summed.
    initial : str
        Transient state the system starts in.
    note : str, optional
        Free-form caveat carried along with the diagram (e.g. a validity
        restriction). Not used in any computation.

    Raises
    ------
    DiagramError
        If any structural invariant is violated. The message names the
        offending state or transition.
    """

    states: tuple
    absorbing: frozenset
    transitions: tuple
    initial: str
    note: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "absorbing", frozenset(self.absorbing))
        object.__setattr__(
            self,
            "transitions",
            tuple((str(a), str(b), float(r)) for a, b, r in self.transitions),
        )
        self._validate()

    def _validate(self):
        known = set(self.states)
        if len(known) != len(self.states):
            dup = [s for s in self.states if self.states.count(s) > 1][0]
            raise DiagramError(f"state {dup!r} is listed more than once")
        for s in self.absorbing:
            if s not in known:
                raise DiagramError(f"absorbing state {s!r} is not a declared state")
        if self.initial not in known:
            raise DiagramError(f"initial state {self.initial!r} is not a declared state")
        if self.initial in self.absorbing:
            raise DiagramError(f"initial state {self.initial!r} is absorbing")
        if len(self.absorbing) == 0:
            raise DiagramError("diagram has no absorbing state")
        for a, b, rate in self.transitions:
            label = f"transition {a} -> {b}"
            if a not in known or b not in known:
                missing = a if a not in known else b
                raise DiagramError(f"{label}: unknown state {missing!r}")
            if a == b:
                raise DiagramError(f"{label}: self-transitions are not allowed")
            if a in self.absorbing:
                raise DiagramError(f"{label}: leaves absorbing state {a!r}")
            if not np.isfinite(rate) or rate < 0:
                raise DiagramError(f"{label}: rate {rate!r} must be finite and >= 0")
        reach = self.reachable()
        if not reach & self.absorbing:
            raise DiagramError(
                f"no absorbing state is reachable from initial state {self.initial!r}"
            )

    @property
    def transient(self):
        return tuple(s for s in self.states if s not in self.absorbing)

    def rates(self):
        """Summed rate per ``(from, to)`` pair, zero-rate pairs dropped."""
        out = {}
        for a, b, r in self.transitions:
            out[(a, b)] = out.get((a, b), 0.0) + r
        return {k: v for k, v in out.items() if v > 0}

    def reachable(self, start=None):
        """States reachable from ``start`` through positive-rate transitions."""
        start = self.initial if start is None else start
        succ = {}
        for a, b in self.rates():
            succ.setdefault(a, []).append(b)
        seen = {start}
        queue = deque([start])
        while queue:
            s = queue.popleft()
            for t in succ.get(s, ()):
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        return seen

    def scaled(self, k):
        """Copy of the diagram with every rate multiplied by ``k``."""
        return StateDiagram(
            self.states,
            self.absorbing,
            [(a, b, r * k) for a, b, r in self.transitions],
            self.initial,
            self.note,
        )


@dataclass(frozen=True)
class TransitionMatrix:
    """One-hour stochastic matrix over ``states`` with absorbing flags."""

    entries: np.ndarray
    states: tuple
    absorbing: frozenset

    def __post_init__(self):
        p = np.array(self.entries, dtype=float)
        p.setflags(write=False)
        object.__setattr__(self, "entries", p)
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "absorbing", frozenset(self.absorbing))
        n = len(self.states)
        if p.shape != (n, n):
            raise DiagramError(f"matrix shape {p.shape} does not match {n} states")

    @property
    def transient_index(self):
        return [i for i, s in enumerate(self.states) if s not in self.absorbing]

    def index(self, state):
        return self.states.index(state)

    def exit_rates(self):
        """Off-diagonal row sums, i.e. the per-hour leaving probability of each state."""
        off = self.entries.copy()
        np.fill_diagonal(off, 0.0)
        return off.sum(axis=1)


def build_transition_matrix(d: StateDiagram) -> TransitionMatrix:
    """Stochastic transition matrix of ``d`` with a one-hour step.

    Off-diagonal ``(i, j)`` is the rate ``i -> j``; the diagonal is one minus
    the row's off-diagonal sum; absorbing rows are identity rows.
    """
    idx = {s: i for i, s in enumerate(d.states)}
    n = len(d.states)
    p = np.zeros((n, n))
    for (a, b), r in d.rates().items():
        p[idx[a], idx[b]] = r
    for s, i in idx.items():
        if s in d.absorbing:
            p[i, i] = 1.0
            continue
        leave = p[i].sum()
        if leave >= 1.0:
            raise DiagramError(
                f"state {s!r}: total exit rate {leave:g}/h is not below 1 per one-hour step"
            )
        p[i, i] = 1.0 - leave
    return TransitionMatrix(p, d.states, d.absorbing)


def truncate(p: TransitionMatrix) -> np.ndarray:
    """Transient-to-transient block ``Q`` of ``p``, state order preserved."""
    t = p.transient_index
    if not t:
        raise DiagramError("nothing to analyze: matrix has no transient states")
    if len(t) == len(p.states):
        raise DiagramError("matrix has no absorbing states")
    return p.entries[np.ix_(t, t)].copy()


def _i_minus_q(p: TransitionMatrix, rows):
    q = p.entries[np.ix_(rows, rows)]
    a = -q.copy()
    # diagonal of I - Q equals the exit probability; never use 1 - P_ii
    a[np.diag_indices_from(a)] = p.exit_rates()[rows]
    return a


def _factor(p: TransitionMatrix, rows):
    a = _i_minus_q(p, rows)
    diag = np.diag(a).copy()
    for k, v in enumerate(diag):
        if v <= 0.0:
            raise InfiniteMTTFError(
                f"infinite MTTF: state {p.states[rows[k]]!r} has no outgoing transition"
            )
    eq = a / diag[:, None]
    rcond = 1.0 / np.linalg.cond(eq)
    if not np.isfinite(rcond) or rcond < SINGULAR_RCOND:
        raise InfiniteMTTFError("infinite MTTF: I - Q is singular (no path to absorption)")
    return lu_factor(eq), diag


def fundamental_matrix(p: TransitionMatrix) -> np.ndarray:
    """``M = (I - Q)^-1`` over all transient states of ``p``, in hours.

    Raises
    ------
    InfiniteMTTFError
        When ``I - Q`` is singular.
    """
    rows = p.transient_index
    truncate(p)  # shape checks
    lu, diag = _factor(p, rows)
    rhs = np.diag(1.0 / diag)
    return lu_solve(lu, rhs)


def mttf(d, start=None) -> float:
    """Mean time to absorption, in hours, starting from ``start``.

    ``d`` may be a :class:`StateDiagram` or a :class:`TransitionMatrix`. For a
    diagram only states reachable from ``start`` enter the linear solve, so
    unreachable parts never affect the result.

    Examples
    --------
    >>> d = StateDiagram(["up", "down"], ["down"], [("up", "down", 1e-6)], "up")
    >>> round(mttf(d))
    1000000
    """
    if isinstance(d, StateDiagram):
        start = d.initial if start is None else start
        p = build_transition_matrix(d)
        reach = d.reachable(start)
        rows = [i for i in p.transient_index if p.states[i] in reach]
    else:
        p = d
        if start is None:
            raise TypeError("start state is required for a bare TransitionMatrix")
        truncate(p)
        rows = p.transient_index
    names = [p.states[i] for i in rows]
    if start not in names:
        raise DiagramError(f"start state {start!r} is not transient")
    lu, diag = _factor(p, rows)
    times = lu_solve(lu, 1.0 / diag)
    value = float(times[names.index(start)])
    if not np.isfinite(value) or value <= 0:
        raise InfiniteMTTFError(f"infinite MTTF: solve returned {value!r}")
    return value


def parse_diagram(text: str) -> StateDiagram:
    """Read the line-oriented diagram format.

    ::

        # comment
        S1 -> S2 : 2000      (rate in FIT)
        absorbing: S4 S5
        initial: S1

    States are ordered by first appearance; absorbing-only states follow.
    """
    order = []
    transitions = []
    absorbing = None
    initial = None

    def note_state(s, lineno):
        if not _IDENT.match(s):
            raise DiagramError(f"line {lineno}: bad state identifier {s!r}")
        if s not in order:
            order.append(s)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(":")
        key = head.strip().lower()
        if key == "absorbing" and "->" not in head:
            absorbing = rest.split()
            for s in absorbing:
                note_state(s, lineno)
            continue
        if key == "initial" and "->" not in head:
            initial = rest.strip()
            note_state(initial, lineno)
            continue
        m = re.match(r"^(\S+)\s*->\s*(\S+)\s*:\s*(\S+)$", line)
        if not m:
            raise DiagramError(f"line {lineno}: cannot parse {raw.strip()!r}")
        a, b, fit = m.groups()
        note_state(a, lineno)
        note_state(b, lineno)
        try:
            rate = float(fit)
        except ValueError:
            raise DiagramError(f"line {lineno}: rate {fit!r} is not a number") from None
        transitions.append((a, b, fit_to_per_hour(rate)))
    if absorbing is None:
        raise DiagramError("missing 'absorbing:' line")
    if initial is None:
        raise DiagramError("missing 'initial:' line")
    # keep initial first so it heads the matrix
    order.remove(initial)
    order.insert(0, initial)
    return StateDiagram(order, absorbing, transitions, initial)


def format_diagram(d: StateDiagram) -> str:
    lines = []
    if d.note:
        lines.append(f"# {d.note}")
    for a, b, r in d.transitions:
        lines.append(f"{a} -> {b} : {per_hour_to_fit(r)!r}")
    lines.append("absorbing: " + " ".join(s for s in d.states if s in d.absorbing))
    lines.append(f"initial: {d.initial}")
    return "\n".join(lines) + "\n"
