"""Finite hypercomplex multiplication tables: Q8, the co-quaternion group,
the order-16 complex quaternions and the octonions.

Units are stored as signed basis indices. Complex quaternions use the basis
``1, i, j, k, K, Ki, Kj, Kk`` where ``K`` commutes with ``i, j, k`` and
squares to -1. Octonions use ``1, i, j, k, p, q, r, s`` with products fixed
by seven oriented triples; ``(abc)`` means ``ab = c, bc = a, ca = b``.
"""
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParseError

CQ_BASIS = ("1", "i", "j", "k", "K", "Ki", "Kj", "Kk")
OCT_BASIS = ("1", "i", "j", "k", "p", "q", "r", "s")
OCTONION_TRIPLES = ("irj", "jpk", "kqi", "psi", "qsj", "rsk", "pqr")

# Hamilton products on 1, i, j, k: (sign, index)
_QUAT = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


@dataclass(frozen=True)
class SignedUnit:
    sign: int
    index: int
    basis: tuple = CQ_BASIS

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError(f"sign must be +1 or -1, got {self.sign}")
        if not 0 <= self.index < len(self.basis):
            raise DomainError(f"basis index {self.index} out of range")

    def __neg__(self):
        return SignedUnit(-self.sign, self.index, self.basis)

    def __str__(self):
        return ("-" if self.sign < 0 else "") + self.basis[self.index]


class Algebra:
    """Signed-unit multiplication given by a structure table."""

    def __init__(self, name, basis, struct):
        self.name = name
        self.basis = tuple(basis)
        self._struct = struct

    def unit(self, text):
        t = text.strip()
        sign = 1
        if t.startswith("-"):
            sign, t = -1, t[1:]
        elif t.startswith("+"):
            t = t[1:]
        if t not in self.basis:
            raise ParseError(f"{text!r} is not a unit of the {self.name} basis")
        return SignedUnit(sign, self.basis.index(t), self.basis)

    def mul(self, a, b):
        s, idx = self._struct[a.index][b.index]
        return SignedUnit(a.sign * b.sign * s, idx, self.basis)

    def all_units(self):
        return [SignedUnit(s, i, self.basis) for s in (1, -1) for i in range(len(self.basis))]


def _cq_struct():
    table = []
    for a in range(8):
        row = []
        for b in range(8):
            s, q = _QUAT[a & 3, b & 3]
            kpow = (a >> 2) + (b >> 2)
            if kpow == 2:
                s, kpow = -s, 0
            row.append((s, (kpow << 2) | q))
        table.append(row)
    return table


def _octonion_struct(triples=OCTONION_TRIPLES):
    n = len(OCT_BASIS)
    table = [[None] * n for _ in range(n)]
    for a in range(n):
        table[0][a] = (1, a)
        table[a][0] = (1, a)
    for a in range(1, n):
        table[a][a] = (-1, 0)
    for tri in triples:
        a, b, c = (OCT_BASIS.index(ch) for ch in tri)
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            table[x][y] = (1, z)
            table[y][x] = (-1, z)
    if any(cell is None for row in table for cell in row):
        raise DomainError("oriented triples do not cover every pair of imaginary units")
    return table


COMPLEX_QUATERNIONS = Algebra("complex quaternion", CQ_BASIS, _cq_struct())
OCTONIONS = Algebra("octonion", OCT_BASIS, _octonion_struct())


class CayleyTable:
    """Products ``row * column`` over an ordered element list."""

    def __init__(self, name, algebra, elements):
        self.name = name
        self.algebra = algebra
        self.elements = tuple(elements)
        self.products = tuple(tuple(algebra.mul(a, b) for b in self.elements) for a in self.elements)
        self._pos = {e: n for n, e in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def product(self, a, b):
        if isinstance(a, str):
            a = self.algebra.unit(a)
        if isinstance(b, str):
            b = self.algebra.unit(b)
        return self.algebra.mul(a, b)

    def labels(self):
        return [str(e) for e in self.elements]

    def text_rows(self):
        return [[str(c) for c in row] for row in self.products]

    def render(self):
        cells = [[""] + self.labels()] + [[str(e)] + r for e, r in zip(self.elements, self.text_rows())]
        width = max(len(c) for row in cells for c in row)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells) + "\n"

    def to_dict(self):
        return {"group": self.name, "elements": self.labels(), "products": self.text_rows()}

    def compare(self, printed_rows):
        """Cells where ``printed_rows`` (lists of unit strings) disagree with the algebra."""
        bad = []
        for a, row in zip(self.elements, printed_rows):
            for b, text in zip(self.elements, row):
                got = self.algebra.mul(a, b)
                if str(got) != text.strip():
                    bad.append((str(a), str(b), text.strip(), str(got)))
        return bad


def _table(name, algebra, labels):
    return CayleyTable(name, algebra, [algebra.unit(t) for t in labels.split()])


def q8_table():
    return _table("q8", COMPLEX_QUATERNIONS, "1 k -1 -k i j -i -j")


def coquaternion_table():
    return _table("coq", COMPLEX_QUATERNIONS, "1 k -1 -k Ki Kj -Ki -Kj")


def complex_quaternion_table():
    return _table("cq16", COMPLEX_QUATERNIONS,
                  "1 k -1 -k K -K Kk -Kk i j -i -j Ki -Ki Kj -Kj")


def c2_c4_table():
    """Upper-left 8x8 block of the order-16 table: (1, Kk) x +-(1, k)."""
    return _table("c2c4", COMPLEX_QUATERNIONS, "1 k -1 -k K -K Kk -Kk")


def octonion_table():
    return _table("oct", OCTONIONS, " ".join(OCT_BASIS) + " " + " ".join("-" + b for b in OCT_BASIS))


GROUPS = {
    "q8": q8_table,
    "coq": coquaternion_table,
    "cq16": complex_quaternion_table,
    "oct": octonion_table,
}


@dataclass
class GroupReport:
    closed: bool
    associative: bool
    has_identity: bool
    has_inverses: bool
    failing_triple: tuple = None

    @property
    def is_group(self):
        return self.closed and self.associative and self.has_identity and self.has_inverses

    def to_dict(self):
        return {
            "closed": self.closed,
            "associative": self.associative,
            "identity": self.has_identity,
            "inverses": self.has_inverses,
            "is_group": self.is_group,
            "failing_triple": None if self.failing_triple is None else [str(x) for x in self.failing_triple],
        }


def verify_group(t):
    els = set(t.elements)
    mul = t.algebra.mul
    closed = all(c in els for row in t.products for c in row)
    failing = None
    for a, b, c in itertools.product(t.elements, repeat=3):
        if mul(mul(a, b), c) != mul(a, mul(b, c)):
            failing = (a, b, c)
            break
    one = SignedUnit(1, 0, t.algebra.basis)
    ident = one in els and all(mul(one, a) == a and mul(a, one) == a for a in t.elements)
    inverses = ident and all(any(mul(a, b) == one and mul(b, a) == one for b in t.elements)
                             for a in t.elements)
    return GroupReport(closed, failing is None, ident, inverses, failing)


def negative_square_count(t):
    minus_one = SignedUnit(-1, 0, t.algebra.basis)
    return sum(1 for a in t.elements if t.algebra.mul(a, a) == minus_one)


def center(t):
    mul = t.algebra.mul
    return [a for a in t.elements if all(mul(a, b) == mul(b, a) for b in t.elements)]


def c2_q8_factorization(t=None):
    """How the order-16 table relates to ``{1, Kk} x Q8``.

    ``{1, Kk}`` is an order-2 subgroup and its products with Q8 give every
    element exactly once, but ``Kk`` does not commute with ``i`` or ``j``, so
    the product is not direct. The actual centre is ``{+-1, +-K}``.
    """
    t = t or complex_quaternion_table()
    alg = t.algebra
    kk, one = alg.unit("Kk"), alg.unit("1")
    q8 = q8_table().elements
    generated = [alg.mul(c, q) for c in (one, kk) for q in q8]
    cen = center(t)
    return {
        "kk_squares_to_one": alg.mul(kk, kk) == one,
        "covers_each_element_once": len(set(generated)) == len(t) and set(generated) == set(t.elements),
        "kk_central": kk in cen,
        "center": [str(c) for c in cen],
    }


_SIGMA = {
    1: np.array([[0, 1], [1, 0]], dtype=complex),
    2: np.array([[0, -1j], [1j, 0]], dtype=complex),
    3: np.array([[1, 0], [0, -1]], dtype=complex),
}


def quaternion_matrix(u):
    """2x2 image under 1 -> I and (i, j, k) -> -i (sigma_x, sigma_y, sigma_z)."""
    if u.index > 3:
        raise DomainError("only 1, i, j, k have a 2x2 Pauli image")
    m = np.eye(2, dtype=complex) if u.index == 0 else -1j * _SIGMA[u.index]
    return u.sign * m


def pauli_homomorphism_check():
    """Compare every Q8 product against the matrix product of the images."""
    t = q8_table()
    mismatches = []
    for a, row in zip(t.elements, t.products):
        for b, c in zip(t.elements, row):
            if not np.allclose(quaternion_matrix(a) @ quaternion_matrix(b), quaternion_matrix(c)):
                mismatches.append((str(a), str(b)))
    squares = all(np.allclose(quaternion_matrix(u) @ quaternion_matrix(u), -np.eye(2))
                  for u in t.elements if u.index)
    return {"products_checked": len(t) ** 2, "mismatches": mismatches,
            "squares_to_minus_identity": squares, "ok": not mismatches and squares}


# --- octonion arithmetic on integer coefficient vectors ----------------------

def _struct_arrays(algebra):
    n = len(algebra.basis)
    sign = np.zeros((n, n), dtype=np.int64)
    idx = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            s, c = algebra._struct[a][b]
            sign[a, b], idx[a, b] = s, c
    return sign, idx


def algebra_multiply(x, y, algebra=OCTONIONS):
    """Product of two coefficient vectors (integer or float)."""
    sign, idx = _struct_arrays(algebra)
    x, y = np.asarray(x), np.asarray(y)
    out = np.zeros(len(algebra.basis), dtype=np.result_type(x, y))
    np.add.at(out, idx.ravel(), (sign * np.outer(x, y)).ravel())
    return out


def norm_squared(x):
    x = np.asarray(x)
    return int(np.dot(x, x)) if x.dtype.kind in "iu" else float(np.dot(x, x))


def norm_multiplicativity(n_samples=1000, seed=0, low=-9, high=9, algebra=OCTONIONS):
    """Count integer samples where |xy|^2 != |x|^2 |y|^2 (exact arithmetic)."""
    rng = np.random.default_rng(seed)
    failures = 0
    dim = len(algebra.basis)
    for _ in range(n_samples):
        x = rng.integers(low, high + 1, dim)
        y = rng.integers(low, high + 1, dim)
        if norm_squared(algebra_multiply(x, y, algebra)) != norm_squared(x) * norm_squared(y):
            failures += 1
    return failures


def alternative_laws(algebra=OCTONIONS):
    """Check x(xy) = (xx)y and (yx)x = y(xx) on all pairs of signed units."""
    mul = algebra.mul
    units = algebra.all_units()
    for x, y in itertools.product(units, repeat=2):
        if mul(x, mul(x, y)) != mul(mul(x, x), y) or mul(mul(y, x), x) != mul(y, mul(x, x)):
            return False
    return True


def unit_squares(algebra=OCTONIONS):
    return {algebra.basis[i]: str(algebra.mul(SignedUnit(1, i, algebra.basis),
                                              SignedUnit(1, i, algebra.basis)))
            for i in range(1, len(algebra.basis))}
