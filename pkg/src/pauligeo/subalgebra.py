"""su(4) commutator table and closed sub-algebras of the 15-generator basis."""
import csv
import io
import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .pauli import (
    GENERATOR_INDICES,
    commutator,
    commutes,
    generator,
    multiply,
    parse_label,
    to_matrix,
)

_POS = {idx: k for k, idx in enumerate(GENERATOR_INDICES)}


@dataclass(frozen=True)
class Cell:
    """Nonzero table entry ``sign * i * magnitude * O_target``."""

    magnitude: Fraction
    sign: int
    target: int

    @property
    def coefficient(self):
        return complex(0, self.sign * float(self.magnitude))

    def __str__(self):
        s = "-" if self.sign < 0 else ""
        mag = "" if self.magnitude == 1 else f"/{self.magnitude.denominator}"
        return f"{s}i{mag}*O{self.target}"


class CommutatorTable:
    """15x15 table of normalized commutators ``[O_i, O_j]``, rows/cols ordered O_2..O_16."""

    def __init__(self, cells):
        self.indices = GENERATOR_INDICES
        self._cells = cells

    def __getitem__(self, key):
        a, b = key
        return self._cells[_POS[int(a)]][_POS[int(b)]]

    def rows(self):
        return [list(r) for r in self._cells]

    def zero_mask(self):
        return np.array([[c is None for c in row] for row in self._cells])

    def zeros_per_row(self):
        return self.zero_mask().sum(axis=1)

    def is_antisymmetric(self):
        for i in self.indices:
            for j in self.indices:
                a, b = self[i, j], self[j, i]
                if (a is None) != (b is None):
                    return False
                if a is not None and (a.target != b.target or a.magnitude != b.magnitude
                                      or a.sign != -b.sign):
                    return False
        return True

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["O_X"] + [f"O{j}" for j in self.indices])
        for i in self.indices:
            w.writerow([f"O{i}"] + [str(self[i, j]) if self[i, j] else "0" for j in self.indices])
        return buf.getvalue()

    def to_records(self):
        out = []
        for i in self.indices:
            for j in self.indices:
                c = self[i, j]
                out.append({
                    "row": i,
                    "col": j,
                    "zero": c is None,
                    "magnitude": None if c is None else str(c.magnitude),
                    "sign": None if c is None else c.sign,
                    "target": None if c is None else c.target,
                    "text": "0" if c is None else str(c),
                })
        return out


def build_table():
    cells = []
    for i in GENERATOR_INDICES:
        row = []
        for j in GENERATOR_INDICES:
            res = commutator(i, j)
            if res is None:
                row.append(None)
            else:
                coef, target = res
                mag = Fraction(abs(coef.imag)).limit_denominator(16)
                row.append(Cell(mag, 1 if coef.imag > 0 else -1, target))
        cells.append(tuple(row))
    return CommutatorTable(tuple(cells))


@dataclass(frozen=True)
class SubalgebraSet:
    members: tuple
    kind: str
    center: int = None
    entangling: bool = None

    @property
    def labels(self):
        return tuple(generator(i).label for i in self.members)

    def to_dict(self):
        return {
            "members": list(self.members),
            "labels": list(self.labels),
            "kind": self.kind,
            "center": self.center,
            "center_label": None if self.center is None else generator(self.center).label,
            "entangling": self.entangling,
        }


def _anticommuting_target(i, j):
    a, b = generator(i).string, generator(j).string
    if commutes(a, b):
        return None
    return generator(multiply(a, b).letters).index


def is_closed(members):
    s = set(members)
    for i, j in itertools.combinations(s, 2):
        t = _anticommuting_target(i, j)
        if t is not None and t not in s:
            return False
    return True


def classify_center(c):
    """``"entangling"`` iff both letters of the centre are non-identity."""
    g = generator(c)
    return "entangling" if g.string.weight == 2 else "non_entangling"


def _fano_from_center(c):
    c = generator(c).index
    members = tuple(sorted({c} | {g for g in GENERATOR_INDICES if g != c and _anticommuting_target(c, g) is None}))
    return SubalgebraSet(members, "fano7", c, classify_center(c) == "entangling")


def find_fano_sets():
    return [_fano_from_center(c) for c in GENERATOR_INDICES]


_KINDS = {7: "fano7", 8: "su3_8", 10: "so5_10"}


def _closed_subsets(k):
    """Backtracking over increasing index tuples.

    A partial set is abandoned once some anticommuting pair inside it needs a
    target that is smaller than every index still allowed to join.
    """
    idx = sorted(GENERATOR_INDICES)
    out = []

    def extend(chosen, start):
        if len(chosen) == k:
            if is_closed(chosen):
                out.append(tuple(chosen))
            return
        if len(idx) - start < k - len(chosen):
            return
        for pos in range(start, len(idx)):
            cand = idx[pos]
            s = set(chosen)
            ok = True
            for m in chosen:
                t = _anticommuting_target(m, cand)
                if t is not None and t not in s and t != cand and t < cand:
                    ok = False
                    break
            if ok:
                chosen.append(cand)
                extend(chosen, pos + 1)
                chosen.pop()

    extend([], 0)
    return out


def find_closed_sets(k):
    if k not in _KINDS:
        raise DomainError(f"closed-set search supports sizes 7, 8 and 10, not {k}")
    found = _closed_subsets(k)
    if k == 7:
        centers = {}
        for s in find_fano_sets():
            centers[s.members] = s
        return [centers.get(m, SubalgebraSet(m, "fano7")) for m in found]
    return [SubalgebraSet(m, _KINDS[k]) for m in found]


def center_of(members):
    """Members commuting with every other member."""
    return [c for c in members
            if all(_anticommuting_target(c, g) is None for g in members if g != c)]


def pseudo_spin_split(s):
    """Split a Fano set into its two mutually commuting su(2) triplets.

    Returns ``(plus, minus)``. Each triplet is a list of three combinations,
    each combination a tuple of ``(coefficient, label)`` terms with an overall
    factor 1/2. The plus triplet lives in the range of ``(II + centre)/2``, the
    minus one in the range of ``(II - centre)/2``, and each is ordered so that
    ``[A, B] = 2i C``. For centre ZZ this gives
    ``1/2 (XX - YY, YX + XY, IZ + ZI)`` and ``1/2 (XX + YY, XY - YX, IZ - ZI)``.
    """
    if not isinstance(s, SubalgebraSet) or s.kind != "fano7" or s.center is None:
        raise DomainError("pseudo-spin split needs a fano7 set with a centre")
    c = generator(s.center).string
    pairs, seen = [], set()
    for m in s.members:
        if m == s.center or m in seen:
            continue
        partner = generator(multiply(c, generator(m).string).letters).index
        seen.update({m, partner})
        pairs.append((min(m, partner), max(m, partner)))
    # the pair holding the smallest index plays the "z" role
    lowest = min(pr[0] for pr in pairs)
    pairs.sort(key=lambda pr: pr[0] == lowest)
    triplets = []
    for proj in (1, -1):
        combos = []
        for lo, hi in pairs:
            first = generator(lo).string
            fc = multiply(first, c)  # first*c = +-second, phase 0 or 2
            sign = 1 if fc.phase == 0 else -1
            combos.append(((1, first.letters), (proj * sign, generator(hi).label)))
        a, b, z = combos
        if not np.allclose(_commutator(a, b), 2j * _combo_matrix(z)):
            b = _negate(b)
        triplets.append([a, b, z])
    return triplets[0], triplets[1]


def _negate(combo):
    flipped = [(-coef, lab) for coef, lab in combo]
    return tuple(sorted(flipped, key=lambda t: t[0] < 0))


def _combo_matrix(combo):
    return 0.5 * sum(coef * to_matrix(parse_label(lab)) for coef, lab in combo)


def _commutator(a, b):
    ma, mb = _combo_matrix(a), _combo_matrix(b)
    return ma @ mb - mb @ ma


def triplet_matrices(triplet):
    return [_combo_matrix(t) for t in triplet]


def render_combo(combo):
    out = ""
    for k, (coef, lab) in enumerate(combo):
        if k == 0:
            out += ("-" if coef < 0 else "") + lab
        else:
            out += (" - " if coef < 0 else " + ") + lab
    return out
