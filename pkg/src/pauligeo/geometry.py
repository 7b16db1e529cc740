"""Finite projective geometries over GF(2) and their two-qubit Pauli labelling.

Points of PG(n, 2) are the nonzero integers below ``2**(n+1)``, read as bit
vectors with the most significant bit first. A line is a sorted triple
``(a, b, a ^ b)``. For PG(3, 2) each point is tied to a two-qubit Pauli string
through its square-bracket code, which turns bitwise addition into
multiplication up to phase.
"""
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, StructureError
from .hypercomplex import COMPLEX_QUATERNIONS, SignedUnit
from .pauli import (
    commutes,
    from_square_binary,
    generator,
    multiply,
    parse_label,
    square_binary,
    to_matrix,
)

MAX_LINE_DIM = 6


@dataclass(frozen=True)
class Line:
    points: tuple

    def __post_init__(self):
        a, b, c = sorted(int(p) for p in self.points)
        if len({a, b, c}) != 3 or a ^ b != c:
            raise StructureError(f"{(a, b, c)} is not a line: need three distinct points with a^b=c")
        object.__setattr__(self, "points", (a, b, c))

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p):
        return p in self.points


def pg_point_count(n, m):
    """Number of points of PG(n, m)."""
    if n < 0 or m < 1:
        raise DomainError(f"need n >= 0 and m >= 1, got n={n}, m={m}")
    if m == 1:
        return n + 1
    return (m ** (n + 1) - 1) // (m - 1)


def pg_points(n):
    return list(range(1, 2 ** (n + 1)))


def point_bits(p, n):
    return tuple((p >> (n - i)) & 1 for i in range(n + 1))


def pg_lines(n):
    if not 1 <= n <= MAX_LINE_DIM:
        raise DomainError(f"line enumeration supports 1 <= n <= {MAX_LINE_DIM}, got {n}")
    pts = pg_points(n)
    return [Line((a, b, a ^ b)) for a, b in itertools.combinations(pts, 2) if a < b < a ^ b]


def eg_decomposition(n):
    """Split PG(n, 2) points into a PG(n-1, 2) hyperplane plus 2**n affine points."""
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    return pg_point_count(n - 1, 2), 2 ** n


def lines_through(lines, p):
    return [ln for ln in lines if p in ln]


# --- Pauli labelling of PG(3, 2) ---------------------------------------------

def point_to_pauli(p):
    if not 1 <= p < 16:
        raise DomainError(f"PG(3,2) point must be in 1..15, got {p}")
    return from_square_binary(point_bits(p, 3))


def pauli_to_point(s):
    if isinstance(s, str):
        s = parse_label(s)
    bits = square_binary(s)
    return int("".join(map(str, bits)), 2)


def pauli_line_classify(line):
    """``"commuting"`` or ``"cyclic"`` for a PG(3, 2) line under the Pauli labelling."""
    line = line if isinstance(line, Line) else Line(tuple(line))
    a, b, c = (point_to_pauli(p) for p in line)
    if multiply(a, b).letters != c.letters:
        raise StructureError(f"{a}*{b} is not proportional to {c}")
    flags = {commutes(a, b), commutes(b, c), commutes(a, c)}
    if flags == {True}:
        return "commuting"
    if flags == {False}:
        return "cyclic"
    raise StructureError(f"line {line.points} mixes commuting and anticommuting pairs")


def line_labels(line):
    return [point_to_pauli(p).letters for p in line]


@dataclass(frozen=True)
class Doily:
    points: tuple
    lines: tuple

    def lines_per_point(self):
        return {p: sum(1 for ln in self.lines if p in ln) for p in self.points}

    def collinear(self, a, b):
        return any(a in ln and b in ln for ln in self.lines)


def doily():
    """W(3, 2): the 15 points with the 15 commuting lines."""
    lines = tuple(ln for ln in pg_lines(3) if pauli_line_classify(ln) == "commuting")
    return Doily(tuple(pg_points(3)), lines)


def find_ovoids(d=None):
    d = d or doily()
    out = []
    for five in itertools.combinations(d.points, 5):
        if any(d.collinear(a, b) for a, b in itertools.combinations(five, 2)):
            continue
        if all(sum(1 for p in five if p in ln) == 1 for ln in d.lines):
            out.append(five)
    return out


def find_grids(d=None):
    """3x3 grids whose rows and columns are doily lines, deduplicated by point set."""
    d = d or doily()
    seen, out = set(), []
    for rows in itertools.combinations(d.lines, 3):
        pts = set().union(*map(set, rows))
        if len(pts) != 9:
            continue
        cols = [ln for ln in d.lines if ln not in rows and set(ln) <= pts]
        if len(cols) != 3 or len(set().union(*map(set, cols))) != 9:
            continue
        key = frozenset(pts)
        if key in seen:
            continue
        seen.add(key)
        grid = [[next(p for p in r if p in c) for c in cols] for r in rows]
        out.append(tuple(tuple(r) for r in grid))
    return out


def grid_signs(grid):
    """Signs of the dense row and column products (each is +-identity)."""
    eye = np.eye(4)
    signs = []
    for line in list(grid) + [list(c) for c in zip(*grid)]:
        prod = eye.astype(complex)
        for p in line:
            prod = prod @ to_matrix(point_to_pauli(p))
        if np.allclose(prod, eye):
            signs.append(1)
        elif np.allclose(prod, -eye):
            signs.append(-1)
        else:
            raise StructureError(f"grid line {line} does not multiply to +-identity")
    return signs


def mermin_parity_ok(grid):
    return grid_signs(grid).count(-1) % 2 == 1


def find_spreads(lines=None):
    """All sets of 5 pairwise disjoint PG(3, 2) lines, in lexicographic order."""
    lines = lines if lines is not None else pg_lines(3)
    out = []

    def extend(chosen, covered, start):
        if len(chosen) == 5:
            out.append(tuple(chosen))
            return
        first = min(p for p in range(1, 16) if p not in covered)
        for k in range(start, len(lines)):
            ln = lines[k]
            if first not in ln or covered & set(ln):
                continue
            chosen.append(ln)
            extend(chosen, covered | set(ln), k + 1)
            chosen.pop()

    extend([], set(), 0)
    return out


# --- duality inside Fano sets ------------------------------------------------

def centre_duality(g, center):
    """Partner of ``g`` in the Fano set of ``center``: the string ``g * center`` without phase.

    For centre ZZ this is the I<->Z, X<->Y exchange.
    """
    return multiply(g, generator(center).string).unsigned()


def duality_pairing(center):
    """Pair each non-centre member of a two-letter-centre Fano set with its dual.

    Returns ``[(g, dual(g), sign)]`` with the dense product ``g * dual(g)``
    equal to ``sign * centre``.
    """
    from .subalgebra import find_fano_sets

    c = generator(center)
    if c.string.weight != 2:
        raise DomainError("duality pairing needs a two-letter centre")
    fano = next(f for f in find_fano_sets() if f.center == c.index)
    cm = to_matrix(c.string)
    out = []
    for m in fano.members:
        if m == c.index:
            continue
        g = generator(m).string
        d = centre_duality(g, c.index)
        if d.letters == "II" or generator(d.letters).index not in fano.members:
            raise StructureError(f"dual of {g.letters} is {d.letters}, outside the set of {c.label}")
        prod = to_matrix(g) @ to_matrix(d)
        if np.allclose(prod, cm):
            sign = 1
        elif np.allclose(prod, -cm):
            sign = -1
        else:
            raise StructureError(f"{g.letters}*{d.letters} is not +-{c.label}")
        out.append((g.letters, d.letters, sign))
    return out


# --- round-bracket quaternion labelling ---------------------------------------

_XYZ_UNIT = {(0, 0, 0): (1, 0), (1, 0, 0): (1, 3), (0, 1, 0): (1, 1), (0, 0, 1): (1, 2)}


def quaternion_label(bits):
    """Signed complex-quaternion unit for a 4-bit round-bracket label ``(t, x, y, z)``.

    ``t`` contributes a factor ``K``. The xyz part maps 000, 100, 010, 001 to
    1, k, i, j; complementing all three bits negates the unit.
    """
    if isinstance(bits, str):
        bits = [int(ch) for ch in bits.strip().strip("()")]
    bits = tuple(int(b) for b in bits)
    if len(bits) != 4 or any(b not in (0, 1) for b in bits):
        raise DomainError(f"round-bracket label needs 4 bits, got {bits}")
    if not any(bits):
        raise DomainError("the all-zero label has no quaternion")
    t, xyz = bits[0], bits[1:]
    if xyz in _XYZ_UNIT:
        sign, q = _XYZ_UNIT[xyz]
    else:
        sign, q = _XYZ_UNIT[tuple(1 - b for b in xyz)]
        sign = -sign
    return SignedUnit(sign, q | (t << 2))


def quaternion_labelling():
    """All 15 round-bracket labels with their units, keyed by ``"(tzyx)"`` text."""
    out = {}
    for p in range(1, 16):
        bits = point_bits(p, 3)
        out["(" + "".join(map(str, bits)) + ")"] = quaternion_label(bits)
    return out


def labelling_is_additive():
    """Check label(a) * label(b) = +-label(a ^ b) for every pair with a != b."""
    for a, b in itertools.permutations(range(1, 16), 2):
        prod = COMPLEX_QUATERNIONS.mul(quaternion_label(point_bits(a, 3)), quaternion_label(point_bits(b, 3)))
        target = quaternion_label(point_bits(a ^ b, 3))
        if prod.index != target.index:
            return False
    return True
