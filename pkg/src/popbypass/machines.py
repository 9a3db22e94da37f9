"""Sorting machines: pop stack with bypass and its companions.

Every map here accepts any sequence of distinct integers and compares raw
values, so ``psb((5, 3))`` bypasses the 3 (it is not ``TOP - 1``).
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .perms import Perm

PUSH, POP, BYPASS = "PUSH", "POP", "BYPASS"


class MachineKind(str, enum.Enum):
    PSB = "psb"
    POPSTACK_CLASSIC = "popstack_classic"
    STACKSORT = "stacksort"
    QUEUESORT = "queuesort"
    BUBBLE_PASS = "bubble_pass"
    PARALLEL_PSB = "parallel_psb"

    @classmethod
    def parse(cls, tag: str) -> "MachineKind":
        tag = _ALIASES.get(tag, tag)
        try:
            return cls(tag)
        except ValueError:
            raise ValueError(f"unknown machine {tag!r}") from None


_ALIASES = {
    "popstack": "popstack_classic",
    "stack": "stacksort",
    "queue": "queuesort",
    "bubble": "bubble_pass",
    "bubblesort": "bubble_pass",
    "parallel": "parallel_psb",
}


@dataclass(frozen=True)
class MachineOp:
    kind: str
    stack: int | None = None

    def __str__(self):
        return self.kind if self.stack is None else f"{self.kind}@{self.stack}"

    @classmethod
    def parse(cls, text: str) -> "MachineOp":
        kind, _, stack = text.partition("@")
        if kind not in (PUSH, POP, BYPASS):
            raise ValueError(f"unknown operation {text!r}")
        return cls(kind, int(stack) if stack else None)


@dataclass
class MachineTrace:
    input: Perm
    ops: list[MachineOp] = field(default_factory=list)
    output: Perm = ()

    def as_dict(self) -> dict:
        return {"input": list(self.input), "ops": [str(op) for op in self.ops], "output": list(self.output)}


class SortingFailure(Exception):
    """Raised by the parallel machine when no rule applies.

    ``step`` is the 1-based index of the input entry being processed, or
    ``len(input) + 1`` when the machine got stuck after reading all input.
    """

    def __init__(self, step: int, trace: MachineTrace):
        super().__init__(f"no rule applies at step {step}")
        self.step = step
        self.trace = trace


def replay(trace: MachineTrace) -> Perm:
    """Re-run the logged operations on ``trace.input`` and return the output."""
    source = iter(trace.input)
    stacks: dict[int | None, list[int]] = {}
    out: list[int] = []
    for op in trace.ops:
        if op.kind == PUSH:
            stacks.setdefault(op.stack, []).append(next(source))
        elif op.kind == BYPASS:
            out.append(next(source))
        else:
            s = stacks.get(op.stack, [])
            out.extend(reversed(s))
            s.clear()
    if next(source, None) is not None or any(stacks.values()):
        raise ValueError("trace does not consume its input")
    return tuple(out)


# -- pop stack with bypass ---------------------------------------------------

def psb(p: Sequence[int]) -> Perm:
    out: list[int] = []
    stack: list[int] = []
    for x in p:
        if not stack or x == stack[-1] - 1:
            stack.append(x)
        elif x < stack[-1] - 1:
            out.append(x)
        else:
            stack.reverse()
            out.extend(stack)
            stack = [x]
    stack.reverse()
    out.extend(stack)
    return tuple(out)


def psb_trace(p: Sequence[int]) -> MachineTrace:
    """Run PSB step by step, logging every operation.

    >>> [str(op) for op in psb_trace((2, 3, 1)).ops]
    ['PUSH', 'POP', 'PUSH', 'BYPASS', 'POP']
    """
    ops: list[MachineOp] = []
    out: list[int] = []
    stack: list[int] = []
    for x in p:
        if not stack or x == stack[-1] - 1:
            ops.append(MachineOp(PUSH))
            stack.append(x)
        elif x < stack[-1] - 1:
            ops.append(MachineOp(BYPASS))
            out.append(x)
        else:
            ops += [MachineOp(POP), MachineOp(PUSH)]
            out.extend(reversed(stack))
            stack = [x]
    ops.append(MachineOp(POP))
    out.extend(reversed(stack))
    return MachineTrace(tuple(p), ops, tuple(out))


def popstack_classic(p: Sequence[int]) -> Perm:
    return popstack_classic_trace(p).output


def popstack_classic_trace(p: Sequence[int]) -> MachineTrace:
    ops: list[MachineOp] = []
    out: list[int] = []
    stack: list[int] = []
    for x in p:
        if stack and x != stack[-1] - 1:
            ops.append(MachineOp(POP))
            out.extend(reversed(stack))
            stack = []
        ops.append(MachineOp(PUSH))
        stack.append(x)
    ops.append(MachineOp(POP))
    out.extend(reversed(stack))
    return MachineTrace(tuple(p), ops, tuple(out))


# -- classical maps ----------------------------------------------------------

def stacksort(p: Sequence[int]) -> Perm:
    out: list[int] = []
    stack: list[int] = []
    for x in p:
        while stack and stack[-1] < x:
            out.append(stack.pop())
        stack.append(x)
    out.extend(reversed(stack))
    return tuple(out)


def queuesort(p: Sequence[int]) -> Perm:
    """Greedy queue with bypass.

    An entry larger than the rear of the queue is enqueued; otherwise every
    front entry smaller than it leaves the queue and the entry bypasses.
    """
    out: list[int] = []
    queue: deque[int] = deque()
    for x in p:
        if not queue or x > queue[-1]:
            queue.append(x)
        else:
            while queue and queue[0] < x:
                out.append(queue.popleft())
            out.append(x)
    out.extend(queue)
    return tuple(out)


def bubble_pass(p: Sequence[int]) -> Perm:
    q = list(p)
    for i in range(len(q) - 1):
        if q[i] > q[i + 1]:
            q[i], q[i + 1] = q[i + 1], q[i]
    return tuple(q)


# -- two pop stacks in parallel ----------------------------------------------

def _parallel(p: Sequence[int], ops: list[MachineOp] | None) -> tuple[Perm, int]:
    # Returns (output, 0) on success or (partial output, failing step).
    stacks: tuple[list[int], list[int]] = ([], [])
    out: list[int] = []
    need = 1 if not p else min(p)
    n = len(p)
    i = 0
    while i < n:
        x = p[i]
        if x == need:
            out.append(x)
            need += 1
            i += 1
            if ops is not None:
                ops.append(MachineOp(BYPASS))
            continue
        for j, s in enumerate(stacks):
            if s and s[-1] == need:
                need += len(s)
                s.reverse()
                out.extend(s)
                s.clear()
                if ops is not None:
                    ops.append(MachineOp(POP, j + 1))
                break
        else:
            target = next((j for j, s in enumerate(stacks) if s and s[-1] == x + 1), None)
            if target is None:
                target = next((j for j, s in enumerate(stacks) if not s), None)
            if target is None:
                return tuple(out), i + 1
            stacks[target].append(x)
            i += 1
            if ops is not None:
                ops.append(MachineOp(PUSH, target + 1))
    while stacks[0] or stacks[1]:
        for j, s in enumerate(stacks):
            if s and s[-1] == need:
                need += len(s)
                s.reverse()
                out.extend(s)
                s.clear()
                if ops is not None:
                    ops.append(MachineOp(POP, j + 1))
                break
        else:
            return tuple(out), n + 1
    return tuple(out), 0


def parallel_psb(p: Sequence[int]) -> MachineTrace:
    """Greedy sort with two pop stacks in parallel and a bypass.

    Returns the trace of a successful sort, raises :class:`SortingFailure`
    otherwise.  Ties between two empty stacks go to stack 1.
    """
    ops: list[MachineOp] = []
    out, failed_at = _parallel(tuple(p), ops)
    trace = MachineTrace(tuple(p), ops, out)
    if failed_at:
        raise SortingFailure(failed_at, trace)
    return trace


def parallel_sortable(p: Sequence[int]) -> bool:
    return _parallel(p, None)[1] == 0


# -- composition -------------------------------------------------------------

_MAPS: dict[MachineKind, Callable[[Sequence[int]], Perm]] = {
    MachineKind.PSB: psb,
    MachineKind.POPSTACK_CLASSIC: popstack_classic,
    MachineKind.STACKSORT: stacksort,
    MachineKind.QUEUESORT: queuesort,
    MachineKind.BUBBLE_PASS: bubble_pass,
}


def get_map(kind: MachineKind | str) -> Callable[[Sequence[int]], Perm]:
    kind = MachineKind.parse(kind) if isinstance(kind, str) else kind
    if kind is MachineKind.PARALLEL_PSB:
        raise ValueError("parallel_psb is partial and has no total map")
    return _MAPS[kind]


def compose(maps: Sequence[MachineKind | str], p: Sequence[int]) -> Perm:
    """Apply ``maps`` in the listed order: ``compose([psb, stacksort], p)``
    is ``stacksort(psb(p))``.
    """
    fns = [get_map(m) for m in maps]
    out = tuple(p)
    for fn in fns:
        out = fn(out)
    return out


def sorts(kinds: Sequence[MachineKind | str], p: Sequence[int]) -> bool:
    """Whether the (composed) machine turns ``p`` into the identity."""
    kinds = [MachineKind.parse(k) if isinstance(k, str) else k for k in kinds]
    if kinds == [MachineKind.PARALLEL_PSB]:
        return parallel_sortable(p)
    out = compose(kinds, p)
    return all(v == i for i, v in enumerate(out, 1))


# -- nondeterministic oracle -------------------------------------------------

def nd_sortable(kind: MachineKind | str, p: Sequence[int]) -> bool:
    """Breadth-first search over every legal operation order.

    A configuration is (input index, stack contents, count of entries
    already output).  Moves that would output anything other than the next
    entry of the identity are dropped.
    """
    kind = MachineKind.parse(kind) if isinstance(kind, str) else kind
    if kind is MachineKind.PSB:
        n_stacks = 1
    elif kind is MachineKind.PARALLEL_PSB:
        n_stacks = 2
    else:
        raise ValueError(f"no nondeterministic model for {kind.value}")
    p = tuple(p)
    n = len(p)
    start = (0, ((),) * n_stacks, 0)
    seen = {start}
    frontier = deque([start])
    while frontier:
        i, stacks, done = frontier.popleft()
        if i == n and done == n:
            return True
        moves = []
        if i < n:
            if p[i] == done + 1:
                moves.append((i + 1, stacks, done + 1))
            for j in range(n_stacks):
                grown = stacks[:j] + (stacks[j] + (p[i],),) + stacks[j + 1:]
                moves.append((i + 1, grown, done))
        for j, s in enumerate(stacks):
            if s and s[::-1] == tuple(range(done + 1, done + 1 + len(s))):
                moves.append((i, stacks[:j] + ((),) + stacks[j + 1:], done + len(s)))
        for state in moves:
            if n_stacks == 2:
                state = (state[0], tuple(sorted(state[1])), state[2])
            if state not in seen:
                seen.add(state)
                frontier.append(state)
    return False
