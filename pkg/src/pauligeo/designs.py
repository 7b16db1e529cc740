"""Block-design parameters, Steiner triple systems from PG(n, 2), and the
Kirkman resolution of the 35 lines of PG(3, 2)."""
import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, StructureError
from .geometry import find_spreads, pg_lines, pg_points


@dataclass(frozen=True)
class DesignParams:
    v: int
    b: int
    r: int
    k: int
    lam: int = 1

    def __post_init__(self):
        if self.v * self.r != self.b * self.k:
            raise StructureError(f"v*r={self.v * self.r} but b*k={self.b * self.k}")
        if self.lam * (self.v - 1) != self.r * (self.k - 1):
            raise StructureError("lambda*(v-1) != r*(k-1)")

    def to_dict(self):
        return {"v": self.v, "b": self.b, "r": self.r, "k": self.k, "lambda": self.lam}


def qubit_design_params(q):
    """Steiner triple parameters for q qubits (2q a positive integer)."""
    q = Fraction(q)
    two_q = 2 * q
    if two_q.denominator != 1 or two_q < 1:
        raise DomainError(f"2q must be a positive integer, got q={q}")
    e = int(two_q)
    v = 2 ** e - 1
    r = 2 ** (e - 1) - 1
    return DesignParams(v, v * r // 3, r, 3, 1)


def general_params(n, m):
    """Parameters of the design formed by the lines of PG(n, m), block size m + 1."""
    if n < 1 or m < 1:
        raise DomainError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    v = sum(m ** i for i in range(n + 1))
    r = sum(m ** i for i in range(n))
    return DesignParams(v, v * r // (m + 1), r, m + 1, 1)


# Rows as printed, for the discrepancy report: q -> (v, b, r)
PRINTED_QUBIT_ROWS = {
    Fraction(1, 2): (1, 0, 0),
    Fraction(1): (3, 1, 1),
    Fraction(3, 2): (7, 7, 3),
    Fraction(2): (15, 35, 7),
    Fraction(5, 2): (31, 155, 15),
    Fraction(3): (63, 641, 31),
    Fraction(7, 2): (127, 2667, 63),
}


def qubit_design_report(qs=None):
    """Formula rows next to the printed rows, with a note wherever they disagree."""
    rows = []
    for q in (qs or PRINTED_QUBIT_ROWS):
        q = Fraction(q)
        p = qubit_design_params(q)
        printed = PRINTED_QUBIT_ROWS.get(q)
        row = {"q": str(q), "v": p.v, "b": p.b, "r": p.r, "k": p.k, "lambda": p.lam,
               "printed": None, "discrepancies": []}
        if printed is not None:
            row["printed"] = dict(zip(("v", "b", "r"), printed))
            for name, val in zip(("v", "b", "r"), printed):
                got = getattr(p, name)
                if got != val:
                    row["discrepancies"].append(f"{name}: formula gives {got}, printed {val}")
        rows.append(row)
    return rows


def pg_dimension_table(n_max=4, m_values=(1, 2, 3, 4)):
    """Point counts of PG(n, m) for n = 0..n_max, one column per m."""
    return {m: [sum(m ** i for i in range(n + 1)) for n in range(n_max + 1)] for m in m_values}


def steiner_from_pg(n):
    if n not in (2, 3):
        raise DomainError(f"Steiner systems are built for n in (2, 3), got {n}")
    return [ln.points for ln in pg_lines(n)]


def pair_coverage(blocks):
    c = Counter()
    for blk in blocks:
        for a, b in itertools.combinations(sorted(blk), 2):
            c[a, b] += 1
    return c


def is_steiner_triple_system(blocks, points):
    cov = pair_coverage(blocks)
    return all(cov[pr] == 1 for pr in itertools.combinations(sorted(points), 2)) and sum(cov.values()) == len(
        list(itertools.combinations(points, 2)))


@dataclass(frozen=True)
class Resolution:
    classes: tuple

    def to_dict(self):
        return {"classes": [[list(b) for b in cls] for cls in self.classes]}

    def render(self, labels=None):
        fmt = (lambda p: labels[p]) if labels else str
        lines = []
        for day, cls in enumerate(self.classes, 1):
            lines.append(f"day {day}: " + "  ".join("{" + ",".join(fmt(p) for p in blk) + "}" for blk in cls))
        return "\n".join(lines) + "\n"


def kirkman_resolve():
    """First resolution of the PG(3, 2) lines into 7 spreads (depth-first, lexicographic)."""
    lines = pg_lines(3)
    spreads = [frozenset(s) for s in find_spreads(lines)]
    order = {ln: k for k, ln in enumerate(lines)}

    def search(chosen, used):
        if len(chosen) == 7:
            return list(chosen)
        # the lowest unused line must go into the next class
        target = min((ln for ln in lines if ln not in used), key=order.get)
        for sp in spreads:
            if target in sp and not (sp & used):
                chosen.append(sp)
                got = search(chosen, used | sp)
                if got:
                    return got
                chosen.pop()
        return None

    found = search([], frozenset())
    if found is None:
        raise StructureError("no Kirkman resolution found; the search is broken")
    classes = tuple(tuple(sorted((ln.points for ln in sp))) for sp in found)
    return Resolution(classes)


def check_resolution(res, blocks=None, points=None):
    """Independent certificate check; returns a list of problems (empty when valid)."""
    blocks = [tuple(sorted(b)) for b in (blocks if blocks is not None else steiner_from_pg(3))]
    points = set(points if points is not None else pg_points(3))
    problems = []
    seen = Counter(tuple(sorted(b)) for cls in res.classes for b in cls)
    if set(seen) != set(blocks) or any(n != 1 for n in seen.values()):
        problems.append("classes do not use every block exactly once")
    for day, cls in enumerate(res.classes, 1):
        cover = Counter(p for b in cls for p in b)
        if set(cover) != points or any(n != 1 for n in cover.values()):
            problems.append(f"class {day} is not an exact cover of the points")
    cov = pair_coverage(b for cls in res.classes for b in cls)
    if any(cov[pr] != 1 for pr in itertools.combinations(sorted(points), 2)):
        problems.append("some pair of points is not covered exactly once")
    return problems
