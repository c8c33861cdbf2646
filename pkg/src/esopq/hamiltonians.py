"""Diagonal Hamiltonians as multilinear polynomials in Pauli-Z factors.

Every diagonal operator over n qubits has a unique expansion
``sum_S c_S * prod_{i in S} Z_i`` with real coefficients; supports are
stored as variable bitmasks and multiplication uses ``Z_i^2 = I``, i.e.
the symmetric difference of supports.

Boolean lowering follows the indicator calculus: a positive literal maps
to ``(I - Z)/2``, a negated one to ``(I + Z)/2``, a cube to the product
of its literal polynomials (a 0/1 diagonal), and an XOR of expressions
``f, g`` to ``H_f + H_g - 2 H_f H_g``.  When the cubes of an ESOP are
pairwise disjoint the XOR composition telescopes to a plain sum because
``(I - Z_j)(I + Z_j) = 0`` kills every cross term.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .esop import Cube, Esop, or_chain_to_esop, pairwise_disjoint, violation_sop
from .esop import DEFAULT_CUBE_BUDGET
from .graphs import ENUMERATION_MAX_N, Graph

#: Coefficients below this magnitude are pruned during normalization.
COEFF_EPS = 1e-12

#: Per-cube sign conventions for lowering an ESOP to a penalty Hamiltonian.
SIGN_NORMALIZED = "sign_normalized"
ALTERNATING_SIGN = "alternating_sign"
MODES = (SIGN_NORMALIZED, ALTERNATING_SIGN)


class ZPolynomial:
    """Real multilinear polynomial in Pauli-Z factors.

    ``terms`` maps a support bitmask (0 = identity) to its coefficient.
    Instances are value-like: arithmetic returns new objects and inputs
    are never mutated.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, float] | None = None):
        normalized: dict[int, float] = {}
        for support, coeff in (terms or {}).items():
            if abs(coeff) >= COEFF_EPS:
                normalized[int(support)] = float(coeff)
        self.terms = normalized

    @classmethod
    def zero(cls) -> "ZPolynomial":
        return cls()

    @classmethod
    def identity(cls, coeff: float = 1.0) -> "ZPolynomial":
        return cls({0: coeff})

    @classmethod
    def z(cls, var: int, coeff: float = 1.0) -> "ZPolynomial":
        return cls({1 << var: coeff})

    def coefficient(self, support: int) -> float:
        return self.terms.get(support, 0.0)

    @property
    def support_mask(self) -> int:
        mask = 0
        for s in self.terms:
            mask |= s
        return mask

    def __add__(self, other: "ZPolynomial") -> "ZPolynomial":
        acc = dict(self.terms)
        for s, c in other.terms.items():
            acc[s] = acc.get(s, 0.0) + c
        return ZPolynomial(acc)

    def __sub__(self, other: "ZPolynomial") -> "ZPolynomial":
        return self + (-other)

    def __neg__(self) -> "ZPolynomial":
        return ZPolynomial({s: -c for s, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return ZPolynomial({s: c * other for s, c in self.terms.items()})
        acc: dict[int, float] = {}
        for sa, ca in self.terms.items():
            for sb, cb in other.terms.items():
                s = sa ^ sb
                acc[s] = acc.get(s, 0.0) + ca * cb
        return ZPolynomial(acc)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, ZPolynomial) and self.terms == other.terms

    def __repr__(self) -> str:
        return f"ZPolynomial({self.terms!r})"

    def isclose(self, other: "ZPolynomial", tol: float = 1e-12) -> bool:
        supports = set(self.terms) | set(other.terms)
        return all(
            abs(self.coefficient(s) - other.coefficient(s)) <= tol for s in supports
        )


def zpoly_add(a: ZPolynomial, b: ZPolynomial) -> ZPolynomial:
    return a + b


def zpoly_scale(a: ZPolynomial, r: float) -> ZPolynomial:
    return a * r


def zpoly_mul(a: ZPolynomial, b: ZPolynomial) -> ZPolynomial:
    return a * b


def literal_zpoly(var: int, negated: bool = False) -> ZPolynomial:
    """0/1 indicator of a literal: ``(I - Z)/2`` for x, ``(I + Z)/2`` for ~x."""
    return ZPolynomial({0: 0.5, 1 << var: 0.5 if negated else -0.5})


def cube_indicator_zpoly(c: Cube) -> ZPolynomial:
    """Product of literal indicators; its diagonal is the cube's truth table."""
    if not c.support:
        warnings.warn("indicator of the empty cube is the constant 1", stacklevel=2)
        return ZPolynomial.identity(1.0)
    out = ZPolynomial.identity(1.0)
    for var, negated in c.literals():
        out = out * literal_zpoly(var, negated)
    return out


def cube_alternating_sign_zpoly(c: Cube) -> ZPolynomial:
    """Cube lowering with every second literal factor scaled by -1.

    Counting literals in ascending variable order, factor j of k picks up
    ``(-1)^(j+1)``, so the net effect is the indicator polynomial times
    ``(-1)^floor(k/2)``: -1 for widths 2, 3, 6, 7, ... and +1 for widths
    4, 5, 8, 9, ...  Widths where the sign is +1 make this lowering
    reward rather than penalize the cube, which is why it is not the
    default (see :func:`esop_hamiltonian`).
    """
    if not c.support:
        warnings.warn("alternating-sign lowering of the empty cube", stacklevel=2)
        return ZPolynomial.identity(1.0)
    sign = -1.0 if (c.width // 2) % 2 else 1.0
    return cube_indicator_zpoly(c) * sign


def xor_compose(hf: ZPolynomial, hg: ZPolynomial) -> ZPolynomial:
    """Indicator of ``f XOR g`` from the indicators of ``f`` and ``g``."""
    return hf + hg - 2.0 * (hf * hg)


def esop_hamiltonian(e: Esop, mode: str = SIGN_NORMALIZED) -> ZPolynomial:
    """Lower an ESOP to a penalty Hamiltonian whose magnitude marks violations.

    For a pairwise-disjoint ESOP the result is the plain sum of per-cube
    polynomials: ``sign_normalized`` contributes ``-indicator`` for every
    cube (so the sum is exactly minus the ESOP's 0/1 truth table), while
    ``alternating_sign`` uses :func:`cube_alternating_sign_zpoly`, whose
    per-cube sign flips positive for widths 4, 5, 8, 9, ...  The two
    agree whenever all cube widths fall in {2, 3, 6, 7, ...}.

    Without disjointness the sum identity does not hold, so the function
    falls back to folding :func:`xor_compose` over the cube indicators
    and returns minus the composed indicator in both modes.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if pairwise_disjoint(e):
        out = ZPolynomial.zero()
        for c in e.cubes:
            if mode == SIGN_NORMALIZED:
                out = out + (cube_indicator_zpoly(c) * -1.0)
            else:
                out = out + cube_alternating_sign_zpoly(c)
        return out
    folded = ZPolynomial.zero()
    for c in e.cubes:
        folded = xor_compose(folded, cube_indicator_zpoly(c))
    return -folded


def vertex_count_zpoly(n: int) -> ZPolynomial:
    """Hamiltonian whose diagonal counts selected vertices: sum of (I - Z_j)/2."""
    if n < 1:
        raise ValueError("need n >= 1")
    terms = {0: n / 2.0}
    for j in range(n):
        terms[1 << j] = -0.5
    return ZPolynomial(terms)


def cost_from_esop(
    e: Esop,
    n: int,
    penalty: float | None = None,
    mode: str = SIGN_NORMALIZED,
) -> ZPolynomial:
    """Assemble the full cost from a prebuilt constraint ESOP.

    ``cost = -vertex_count - penalty * esop_hamiltonian(e, mode)``; the
    default penalty is ``2n``.  In ``sign_normalized`` mode this equals
    ``-vertex_count + penalty * indicator(violation)``, so every
    infeasible assignment costs at least ``penalty - n`` more than any
    feasible one.
    """
    if penalty is None:
        penalty = 2.0 * n
    if penalty <= 0:
        raise ValueError("penalty must be positive")
    return -vertex_count_zpoly(n) - penalty * esop_hamiltonian(e, mode)


def esop_cost_hamiltonian(
    g: Graph,
    penalty: float | None = None,
    mode: str = SIGN_NORMALIZED,
    cube_budget: int = DEFAULT_CUBE_BUDGET,
) -> ZPolynomial:
    """ESOP-encoded cost for maximum independent set on ``g``.

    Expands the edge-violation OR into an ESOP (cube-budget errors
    propagate) and assembles ``cost_from_esop`` with the default penalty
    ``2 * g.n``.
    """
    e = or_chain_to_esop(violation_sop(g), cube_budget=cube_budget)
    return cost_from_esop(e, g.n, penalty=penalty, mode=mode)


def standard_cost_hamiltonian(g: Graph, edge_penalty: float = 2.0) -> ZPolynomial:
    """Quadratic penalty encoding: ``-sum x_i + J * sum_{(i,j) in E} x_i x_j``.

    Lowered by substituting ``x_i -> (I - Z_i)/2``.  Any ``J > 1`` makes
    the minimizers exactly the maximum independent sets; the default is
    the smallest such integer, 2.
    """
    if edge_penalty <= 1.0:
        raise ValueError("edge_penalty must exceed 1")
    out = -vertex_count_zpoly(g.n)
    for i, j in g.edges:
        out = out + edge_penalty * (literal_zpoly(i) * literal_zpoly(j))
    return out


@dataclass(frozen=True)
class DiagonalCost:
    """Cost eigenvalues indexed by assignment mask (bit i = x_i).

    ``argmin_set`` lists every assignment attaining ``c_min`` (within a
    1e-9 absolute tolerance to absorb float accumulation).
    """

    values: np.ndarray
    c_min: float = field(init=False)
    c_max: float = field(init=False)
    argmin_set: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1 or values.size == 0 or values.size & (values.size - 1):
            raise ValueError("values must be a length-2^n vector")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        c_min = float(values.min())
        c_max = float(values.max())
        argmin = np.flatnonzero(values <= c_min + 1e-9)
        object.__setattr__(self, "c_min", c_min)
        object.__setattr__(self, "c_max", c_max)
        object.__setattr__(self, "argmin_set", tuple(int(z) for z in argmin))

    @property
    def n(self) -> int:
        return int(self.values.size).bit_length() - 1


def zpoly_to_diagonal(h: ZPolynomial, n: int) -> DiagonalCost:
    """Evaluate the polynomial on all 2^n assignments (Z_i eigenvalue 1 - 2 x_i)."""
    if n < 1 or n > ENUMERATION_MAX_N:
        raise ValueError(f"n must be in 1..{ENUMERATION_MAX_N}")
    if h.support_mask >> n:
        raise ValueError("polynomial touches variables >= n")
    z = np.arange(1 << n, dtype=np.uint64)
    values = np.zeros(1 << n, dtype=np.float64)
    for support, coeff in h.terms.items():
        if support == 0:
            values += coeff
        else:
            parity = np.bitwise_count(z & np.uint64(support)) & 1
            values += coeff * (1.0 - 2.0 * parity)
    return DiagonalCost(values)


def format_zpoly(h: ZPolynomial) -> str:
    """Text dump: one ``coeff Z<i>Z<j>...`` line per term, sorted by support.

    The identity support prints as ``1``; coefficients carry 12
    significant digits.
    """
    def support_vars(mask: int) -> tuple[int, ...]:
        return tuple(v for v in range(mask.bit_length()) if (mask >> v) & 1)

    lines = []
    for support in sorted(h.terms, key=support_vars):
        coeff = h.terms[support]
        label = "1" if support == 0 else "".join(f"Z{v}" for v in support_vars(support))
        lines.append(f"{coeff:.12g} {label}")
    return "\n".join(lines)
