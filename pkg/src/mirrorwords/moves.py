"""Elementary rewrite moves shared by all word normalizers.

A normalization is a sequence of these moves; recording them lets the CLI
emit a trace that can be replayed step by step, and lets tests check the
oracle invariants at every intermediate word.
"""

from __future__ import annotations

from dataclasses import dataclass, field

INVOLUTION = "involution"  # delete an adjacent equal pair        (length -2)
PENCIL = "pencil"          # replace an adjacent pair in-pencil   (length 0)
POLAR_SPLIT = "polar_split"  # replace one line by an orthogonal pair (length +1)


@dataclass(frozen=True)
class Move:
    kind: str
    index: int
    mirrors: tuple = field(default=())


def apply_move(word, move: Move, same) -> list:
    """Apply one move to a word, returning a new list.

    `same` is the mirror-coincidence predicate of the calling module. The
    structural preconditions are asserted here; geometric validity (pencil
    membership, product preservation) is the business of each module's
    replay checker.
    """
    w = list(word)
    i = move.index
    if move.kind == INVOLUTION:
        if not (0 <= i < len(w) - 1):
            raise IndexError(f"involution index {i} out of range for length {len(w)}")
        if not same(w[i], w[i + 1]):
            raise ValueError(f"involution at {i}: mirrors do not coincide")
        del w[i : i + 2]
    elif move.kind == PENCIL:
        if not (0 <= i < len(w) - 1):
            raise IndexError(f"pencil index {i} out of range for length {len(w)}")
        if len(move.mirrors) != 2:
            raise ValueError("pencil move must carry exactly two mirrors")
        w[i : i + 2] = list(move.mirrors)
    elif move.kind == POLAR_SPLIT:
        if not (0 <= i < len(w)):
            raise IndexError(f"polar_split index {i} out of range for length {len(w)}")
        if len(move.mirrors) != 2:
            raise ValueError("polar_split move must carry exactly two mirrors")
        w[i : i + 1] = list(move.mirrors)
    else:
        raise ValueError(f"unknown move kind {move.kind!r}")
    return w


def replay(word, moves, same) -> list:
    """Apply a move sequence, returning every intermediate word (incl. start)."""
    states = [list(word)]
    for mv in moves:
        states.append(apply_move(states[-1], mv, same))
    return states
