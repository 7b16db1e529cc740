"""Exact algebra of n-qubit Pauli strings.

A string is stored in symplectic form: one ``(x, z)`` bit pair per qubit plus
a phase exponent ``k`` meaning an overall factor ``i**k``. Bits are kept in
label order, so the leftmost letter (the highest-index qubit, ``tau`` for two
qubits) is element 0.

Letter code::

    (x, z) = (0, 0) -> I    (0, 1) -> Z    (1, 0) -> X    (1, 1) -> Y

The two-qubit generator dictionary (``GENERATORS``) ties the fifteen
normalized operators ``O_2 .. O_16`` to their strings and alternative labels.
"""
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimensionError, DomainError, FormatError, ParseError, SizeError

MATRIX_QUBIT_CAP = 10

_LETTER_BITS = {"I": (0, 0), "Z": (0, 1), "X": (1, 0), "Y": (1, 1)}
_BITS_LETTER = {v: k for k, v in _LETTER_BITS.items()}

# square-bracket binary: I:00, Z:01, Y:10, X:11
_LETTER_SQUARE = {"I": (0, 0), "Z": (0, 1), "Y": (1, 0), "X": (1, 1)}
_SQUARE_LETTER = {v: k for k, v in _LETTER_SQUARE.items()}

_PAULI_2X2 = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _letter_product(a, b):
    """Return (phase exponent, letter) with a*b = i**k * letter."""
    if a == "I":
        return 0, b
    if b == "I":
        return 0, a
    if a == b:
        return 0, "I"
    cyc = "XYZ"
    ia, ib = cyc.index(a), cyc.index(b)
    c = cyc[3 - ia - ib]
    return (1 if (ib - ia) % 3 == 1 else 3), c


@dataclass(frozen=True)
class PauliString:
    x: tuple
    z: tuple
    phase: int = 0

    def __post_init__(self):
        x = tuple(int(v) & 1 for v in self.x)
        z = tuple(int(v) & 1 for v in self.z)
        if len(x) != len(z):
            raise DimensionError(f"x has {len(x)} bits but z has {len(z)}")
        if not x:
            raise DimensionError("a Pauli string needs at least one qubit")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "phase", int(self.phase) % 4)

    @property
    def n_qubits(self):
        return len(self.x)

    @property
    def letters(self):
        return "".join(_BITS_LETTER[p] for p in zip(self.x, self.z))

    @property
    def weight(self):
        """Number of non-identity letters."""
        return sum(1 for a, b in zip(self.x, self.z) if a or b)

    def unsigned(self):
        return PauliString(self.x, self.z, 0)

    def __mul__(self, other):
        return multiply(self, other)

    def __str__(self):
        return ("", "i", "-", "-i")[self.phase] + self.letters

    def to_dict(self):
        return {"phase_exponent": self.phase, "x_bits": list(self.x), "z_bits": list(self.z)}

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(d["x_bits"]), tuple(d["z_bits"]), d.get("phase_exponent", 0))


def parse_label(s):
    """Parse a letter string such as ``"XZ"`` into a phase-free string."""
    if not isinstance(s, str) or not s:
        raise ParseError("empty Pauli label")
    x, z = [], []
    for pos, ch in enumerate(s):
        try:
            xb, zb = _LETTER_BITS[ch]
        except KeyError:
            raise ParseError(f"invalid Pauli letter {ch!r} at position {pos} in {s!r}") from None
        x.append(xb)
        z.append(zb)
    return PauliString(tuple(x), tuple(z), 0)


def render_label(p):
    return p.letters


def _check_same_size(a, b):
    if a.n_qubits != b.n_qubits:
        raise DimensionError(f"qubit counts differ: {a.n_qubits} vs {b.n_qubits}")


def multiply(a, b):
    _check_same_size(a, b)
    k = a.phase + b.phase
    out = []
    for la, lb in zip(a.letters, b.letters):
        dk, c = _letter_product(la, lb)
        k += dk
        out.append(c)
    p = parse_label("".join(out))
    return PauliString(p.x, p.z, k)


def symplectic_product(a, b):
    _check_same_size(a, b)
    return sum(xa * zb + za * xb for xa, za, xb, zb in zip(a.x, a.z, b.x, b.z)) % 2


def commutes(a, b):
    return symplectic_product(a, b) == 0


def to_matrix(p, cap=MATRIX_QUBIT_CAP):
    if p.n_qubits > cap:
        raise SizeError(f"{p.n_qubits} qubits exceeds the dense-matrix cap of {cap}")
    m = np.array([[1.0 + 0j]])
    for ch in p.letters:
        m = np.kron(m, _PAULI_2X2[ch])
    return (1j ** p.phase) * m


def duality(p):
    """Exchange I<->Z and X<->Y on every qubit (flip all z bits)."""
    return PauliString(p.x, tuple(1 - v for v in p.z), p.phase)


def square_binary(p):
    """Per-qubit square-bracket code concatenated into a tuple of 2n bits."""
    bits = []
    for ch in p.letters:
        bits.extend(_LETTER_SQUARE[ch])
    return tuple(bits)


def render_square(bits):
    return "[" + "".join(str(int(b)) for b in bits) + "]"


def from_square_binary(bits):
    """Inverse of ``square_binary``; accepts a bit sequence or ``"[0101]"``."""
    if isinstance(bits, str):
        txt = bits.strip().strip("[]")
        if any(c not in "01" for c in txt):
            raise FormatError(f"not a binary string: {bits!r}")
        bits = [int(c) for c in txt]
    bits = [int(b) for b in bits]
    if not bits or len(bits) % 2:
        raise FormatError(f"square binary needs an even, nonzero number of bits, got {len(bits)}")
    letters = "".join(_SQUARE_LETTER[(bits[i], bits[i + 1])] for i in range(0, len(bits), 2))
    return parse_label(letters)


def xstate_generating_set(q):
    """The ``2**(q+1) - 1`` strings spanning q-qubit X-states.

    A (q+1)-bit word with leading 0 reads its remaining bits as 0:I, 1:Z; a
    leading 1 switches the reading to 0:Y, 1:X. Words are taken in
    increasing binary order, skipping the all-zero word.
    """
    if q < 1:
        raise DomainError("X-state generating sets need at least one qubit")
    out = []
    for word in range(1, 2 ** (q + 1)):
        lead = word >> q
        tail = [(word >> (q - 1 - j)) & 1 for j in range(q)]
        table = ("I", "Z") if lead == 0 else ("Y", "X")
        out.append(parse_label("".join(table[b] for b in tail)))
    return out


# --- two-qubit generator dictionary -----------------------------------------

@dataclass(frozen=True)
class Generator:
    index: int
    string: PauliString
    weight: Fraction
    square: str
    label: str
    signed_label: str
    round_bracket: str
    dirac: str
    dirac_class: str
    bivector: str
    quaternion: str

    @property
    def matrix(self):
        return float(self.weight) * to_matrix(self.string)


# index, letters, signed letters, round bracket, Dirac name, Dirac class, bivector, quaternion
_TABLE = [
    (3, "ZI", "ZI", "(0101)", "Sigma_3", "T", "G_03", "-i"),
    (10, "YI", "YI", "(1110)", "Sigma_2", "T", "G_02", "-Kj"),
    (9, "XI", "XI", "(1011)", "Sigma_1", "T", "G_01", "-Kk"),
    (2, "IZ", "IZ", "(0010)", "gamma_4", "V", "G_30", "i"),
    (4, "ZZ", "ZZ", "(0111)", "A_3", "A", "G_33", "±1"),
    (12, "YZ", "YZ", "(1100)", "A_2", "A", "G_32", "Kk"),
    (11, "XZ", "XZ", "(1001)", "A_1", "A", "G_31", "Kj"),
    (6, "IY", "IY", "(1010)", "alpha_5", "A", "G_20", "Ki"),
    (8, "ZY", "ZY", "(1111)", "gamma_3", "V", "G_23", "-K"),
    (14, "YY", "-YY", "(0100)", "gamma_2", "V", "G_22", "k"),
    (16, "XY", "XY", "(0001)", "gamma_1", "V", "G_21", "j"),
    (5, "IX", "IX", "(1000)", "gamma_5", "P", "G_10", "K"),
    (7, "ZX", "ZX", "(1101)", "alpha_3", "T", "G_13", "-Ki"),
    (15, "YX", "YX", "(0110)", "alpha_2", "T", "G_12", "-j"),
    (13, "XX", "XX", "(0011)", "alpha_1", "T", "G_11", "-k"),
]


def _build_generators():
    gens = {}
    for idx, letters, signed, rnd, dirac, dclass, biv, quat in _TABLE:
        p = parse_label(letters)
        w = Fraction(1, 2) if p.weight == 1 else Fraction(1, 4)
        gens[idx] = Generator(idx, p, w, render_square(square_binary(p)), letters, signed,
                              rnd, dirac, dclass, biv, quat)
    return tuple(gens[i] for i in range(2, 17))


GENERATORS = _build_generators()
GENERATOR_INDICES = tuple(g.index for g in GENERATORS)
_BY_INDEX = {g.index: g for g in GENERATORS}
_BY_LETTERS = {g.label: g for g in GENERATORS}


def generator(key):
    """Look up a generator by index (2..16), letter label or PauliString."""
    if isinstance(key, Generator):
        return key
    if isinstance(key, PauliString):
        key = key.letters
    if isinstance(key, str):
        k = key.strip()
        if k.upper().startswith("O") and k[1:].isdigit():
            key = int(k[1:])
        elif k in _BY_LETTERS:
            return _BY_LETTERS[k]
        else:
            raise DomainError(f"unknown two-qubit generator {key!r}")
    try:
        return _BY_INDEX[int(key)]
    except (KeyError, ValueError, TypeError):
        raise DomainError(f"unknown two-qubit generator {key!r}") from None


def commutator(a, b):
    """Normalized commutator of two basis generators.

    Returns ``None`` when the generators commute, otherwise
    ``(coefficient, target_index)`` with ``[w_a A, w_b B] = coefficient * w_c C``.
    """
    ga, gb = generator(a), generator(b)
    if commutes(ga.string, gb.string):
        return None
    prod = multiply(ga.string, gb.string)
    gc = _BY_LETTERS[prod.letters]
    # [A, B] = 2 AB for anticommuting strings; AB carries phase +-i
    mag = 2 * ga.weight * gb.weight / gc.weight
    return complex(0, float(mag)) * (1j ** (prod.phase - 1)), gc.index
