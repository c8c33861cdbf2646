"""Cube and XOR-of-cubes (ESOP) algebra for independence constraints.

A *cube* is a conjunction of literals, each a variable or its negation;
an *ESOP* is an XOR of cubes.  The central operation rewrites the OR of
the per-edge violation cubes ``x_i AND x_j`` into an equivalent ESOP via
the chain identity ``a OR b = (a AND NOT b) XOR b``, which keeps the
resulting cube set pairwise disjoint: every two cubes disagree on some
variable's polarity, so no assignment satisfies more than one of them.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property

from .graphs import Graph

#: Default ceiling on intermediate cube counts during chain expansion.
DEFAULT_CUBE_BUDGET = 1 << 20


class CubeBudgetError(RuntimeError):
    """Chain expansion exceeded the configured intermediate cube budget."""


@dataclass(frozen=True)
class Cube:
    """Conjunction of polarized literals, stored as two variable bitmasks.

    Bit ``v`` of ``pos`` means the literal ``x_v``; bit ``v`` of ``neg``
    means ``~x_v``.  The masks are disjoint by construction (a variable
    carries one polarity at most), and the empty cube is the constant
    true.  Literal order is therefore canonically ascending by variable.
    """

    pos: int = 0
    neg: int = 0

    def __post_init__(self) -> None:
        if self.pos & self.neg:
            raise ValueError("a variable cannot appear with both polarities")
        if self.pos < 0 or self.neg < 0:
            raise ValueError("literal masks must be nonnegative")

    @classmethod
    def from_literals(cls, literals) -> "Cube":
        """Build from (variable, negated) pairs; duplicates must agree."""
        pos = neg = 0
        for var, negated in literals:
            bit = 1 << var
            if negated:
                neg |= bit
            else:
                pos |= bit
        return cls(pos, neg)

    @classmethod
    def parse(cls, text: str) -> "Cube":
        """Parse the dump syntax, e.g. ``"x0 ~x2 x3"``; ``"1"`` is the empty cube."""
        text = text.strip()
        if text in ("", "1"):
            return cls()
        literals = []
        for tok in text.split():
            negated = tok.startswith("~")
            if negated:
                tok = tok[1:]
            if not tok.startswith("x"):
                raise ValueError(f"bad literal {tok!r}")
            literals.append((int(tok[1:]), negated))
        return cls.from_literals(literals)

    @property
    def support(self) -> int:
        return self.pos | self.neg

    @property
    def width(self) -> int:
        """Number of literals."""
        return self.support.bit_count()

    def literals(self) -> list[tuple[int, bool]]:
        """(variable, negated) pairs in ascending variable order."""
        out = []
        mask = self.support
        v = 0
        while mask:
            if mask & 1:
                out.append((v, bool((self.neg >> v) & 1)))
            mask >>= 1
            v += 1
        return out

    def satisfied_by(self, bits: int) -> bool:
        return (bits & self.pos) == self.pos and (bits & self.neg) == 0

    def __str__(self) -> str:
        if not self.support:
            return "1"
        return " ".join(f"~x{v}" if negated else f"x{v}" for v, negated in self.literals())


def cube_and(a: Cube, b: Cube) -> Cube | None:
    """Conjunction of two cubes; ``None`` marks a contradiction.

    The merge is idempotent on shared literals and fails exactly when
    some variable appears positively in one cube and negatively in the
    other.
    """
    if (a.pos & b.neg) or (a.neg & b.pos):
        return None
    return Cube(a.pos | b.pos, a.neg | b.neg)


def cubes_disjoint(a: Cube, b: Cube) -> bool:
    """True when some variable has opposite polarities in ``a`` and ``b``."""
    return bool((a.pos & b.neg) | (a.neg & b.pos))


@dataclass(frozen=True)
class Esop:
    """XOR-combined sequence of cubes; value = parity of satisfied cubes."""

    cubes: tuple[Cube, ...] = ()

    @cached_property
    def cube_count(self) -> int:
        return len(self.cubes)


def esop_eval(e: Esop, bits: int) -> bool:
    """Parity of the cubes satisfied by the assignment mask."""
    parity = False
    for c in e.cubes:
        if c.satisfied_by(bits):
            parity = not parity
    return parity


def minimize(e: Esop) -> Esop:
    """Cancel identical cube pairs (x XOR x = 0); keeps first-seen order.

    This is the only simplification applied; it preserves the value at
    every assignment and is idempotent.
    """
    counts = Counter(e.cubes)
    survivors = []
    emitted = set()
    for c in e.cubes:
        if counts[c] % 2 == 1 and c not in emitted:
            survivors.append(c)
            emitted.add(c)
    return Esop(tuple(survivors))


def pairwise_disjoint(e: Esop) -> bool:
    """True when every cube pair clashes on some variable's polarity.

    For such an ESOP at most one cube is satisfied by any assignment,
    which is what lets XOR composition collapse into a plain sum at the
    Hamiltonian level.
    """
    cubes = e.cubes
    for i in range(len(cubes)):
        for j in range(i + 1, len(cubes)):
            if not cubes_disjoint(cubes[i], cubes[j]):
                return False
    return True


def edge_cube(i: int, j: int) -> Cube:
    return Cube(pos=(1 << i) | (1 << j))


def violation_sop(g: Graph) -> list[Cube]:
    """One positive two-literal cube per edge, in the graph's edge order.

    The cubes carry OR semantics at this stage (any satisfied cube means
    the assignment violates independence).
    """
    return [edge_cube(i, j) for i, j in g.edges]


def negate_edge_cube(e: Cube) -> Esop:
    """Rewrite ``NOT (x_i AND x_j)`` as the two-cube ESOP ``(~x_i AND x_j) XOR ~x_j``.

    Requires exactly two positive literals; ``i`` is the smaller variable.
    """
    if e.neg or e.pos.bit_count() != 2:
        raise ValueError("expected a cube of exactly two positive literals")
    (i, _), (j, _) = e.literals()
    return Esop((Cube(pos=1 << j, neg=1 << i), Cube(neg=1 << j)))


def or_chain_to_esop(cubes, cube_budget: int = DEFAULT_CUBE_BUDGET) -> Esop:
    """Expand an OR of positive two-literal cubes into an equivalent ESOP.

    Applies ``a OR b = (a AND NOT b) XOR b`` along the sequence, i.e. the
    result is the XOR over k of ``e_k AND (NOT e_{k+1}) AND ... AND (NOT
    e_last)``.  Each negated-edge factor is folded in one at a time,
    distributing AND over XOR and dropping contradictions; a cube that
    already contradicts the edge being negated passes through unchanged
    (it implies the negation), which is what keeps the expansion from
    accumulating redundant disjoint cube pairs.

    The cube set depends on the input order.  Intermediate growth beyond
    ``cube_budget`` raises :class:`CubeBudgetError` rather than silently
    truncating: the worst case is exponential in the number of edges.
    """
    cubes = list(cubes)
    for c in cubes:
        if c.neg or c.pos.bit_count() != 2:
            raise ValueError("chain inputs must be positive two-literal cubes")
    terms: list[Cube] = []
    for k, head in enumerate(cubes):
        acc = [head]
        for er in cubes[k + 1:]:
            negated = negate_edge_cube(er).cubes
            nxt: list[Cube] = []
            for c in acc:
                if cube_and(c, er) is None:
                    nxt.append(c)
                    continue
                for d in negated:
                    merged = cube_and(c, d)
                    if merged is not None:
                        nxt.append(merged)
            if len(nxt) + len(terms) > cube_budget:
                raise CubeBudgetError(
                    f"intermediate cube count exceeded budget {cube_budget}"
                )
            acc = nxt
        terms.extend(acc)
    return minimize(Esop(tuple(terms)))


def format_cubes(e: Esop) -> str:
    """Canonical text dump: one cube per line, sorted for stable goldens.

    Literals print as ``xK`` / ``~xK`` ascending by K; cubes sort by
    their (variable, polarity) literal sequences.
    """
    keyed = sorted(e.cubes, key=lambda c: tuple((v, n) for v, n in c.literals()))
    return "\n".join(str(c) for c in keyed)
