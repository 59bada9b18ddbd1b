"""Relevance filtering, pi classes, canonical ordering, sli merging, polyhedra.

Rows are bitsets over MCB slots. A row's *diagonal* bits are the slots whose
basis cycle has the same length as the row; every other set bit belongs to a
strictly shorter basis cycle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cycles import bits_of
from .vfamilies import RMatrix, VFamily

__all__ = [
    "SliClass",
    "PiClass",
    "Polyhedron",
    "Classes",
    "diagonal_bits",
    "filter_relevant",
    "pi_classes",
    "canonical_sort",
    "sli_merge",
    "extract_polyhedra",
    "pi_rank",
    "classify",
]


def diagonal_bits(row: int, length: int, col_lengths: list[int]) -> int:
    d = 0
    for j in bits_of(row):
        if col_lengths[j] == length:
            d |= 1 << j
    return d


def filter_relevant(R1: RMatrix, col_lengths: list[int], families: list[VFamily] | None = None) -> RMatrix:
    """Keep rows whose expansion uses a basis cycle of their own length."""
    keep = []
    for i, (row, length) in enumerate(zip(R1.rows, R1.lengths)):
        top = max((col_lengths[j] for j in bits_of(row)), default=0)
        if top > length:
            raise AssertionError(f"row {i} expands over a longer basis cycle")
        ok = top == length
        if families is not None:
            for f in R1.families[i]:
                families[f].relevant = ok
        if ok:
            keep.append(i)
    return R1.subset(keep)


def pi_classes(R2: RMatrix, col_lengths: list[int]) -> list[list[int]]:
    """Basis slots grouped into pi classes, ordered by (length, lowest slot)."""
    parent = list(range(len(col_lengths)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row, length, slot in zip(R2.rows, R2.lengths, R2.slot):
        if slot >= 0:
            continue
        diag = bits_of(diagonal_bits(row, length, col_lengths))
        for j in diag[1:]:
            a, b = find(diag[0]), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for j in range(len(col_lengths)):
        groups.setdefault(find(j), []).append(j)
    return sorted(groups.values(), key=lambda g: (col_lengths[g[0]], g[0]))


def _row_class(row: int, length: int, col_lengths: list[int], slot_class: list[int]) -> int:
    d = diagonal_bits(row, length, col_lengths)
    return slot_class[(d & -d).bit_length() - 1]


def canonical_sort(R2: RMatrix, classes: list[list[int]], col_lengths: list[int]) -> tuple[RMatrix, list[int]]:
    """Group rows by pi class; basis rows first, then by diagonal weight and
    right-to-left lexicographic order of the diagonal (shorter bits break ties).

    Returns the sorted matrix and the pi class of each of its rows.
    """
    slot_class = [0] * len(col_lengths)
    for c, slots in enumerate(classes):
        for j in slots:
            slot_class[j] = c

    def key(i: int):
        row, length, slot = R2.rows[i], R2.lengths[i], R2.slot[i]
        c = _row_class(row, length, col_lengths, slot_class)
        if slot >= 0:
            return (c, 0, slot, 0, 0, 0)
        d = diagonal_bits(row, length, col_lengths)
        return (c, 1, 0, d.bit_count(), d, row ^ d)

    order = sorted(range(len(R2)), key=key)
    R3 = R2.subset(order)
    pis = [key(i)[0] for i in order]
    return R3, pis


@dataclass
class SliClass:
    id: int
    pi: int
    length: int
    row: int
    families: list[int]
    count: int
    slot: int

    @property
    def in_basis(self) -> bool:
        return self.slot >= 0

    @property
    def representative(self) -> int:
        return self.families[0]


@dataclass
class Polyhedron:
    row: int
    faces_sli: list[int]
    faces_slots: list[int]
    non_unique: bool

    @property
    def size(self) -> int:
        return 1 + len(self.faces_slots)


@dataclass
class PiClass:
    id: int
    length: int
    slots: list[int]
    sli: list[int]
    polyhedra: list[Polyhedron] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.slots)


def sli_merge(R3: RMatrix, pis: list[int], col_lengths: list[int], families: list[VFamily]) -> list[SliClass]:
    """Merge rows of a pi class with identical diagonal bits.

    The merged row keeps the bits of its first row; counts are summed.
    """
    out: list[SliClass] = []
    seen: dict[tuple[int, int], SliClass] = {}
    for i in range(len(R3)):
        row, length = R3.rows[i], R3.lengths[i]
        d = diagonal_bits(row, length, col_lengths)
        key = (pis[i], d)
        cls = seen.get(key)
        fams = R3.families[i]
        count = sum(families[f].count for f in fams)
        if cls is None:
            cls = SliClass(len(out), pis[i], length, row, list(fams), count, R3.slot[i])
            seen[key] = cls
            out.append(cls)
        else:
            cls.families.extend(fams)
            cls.count += count
            if R3.slot[i] >= 0:
                raise AssertionError("two basis rows share their diagonal bits")
    return out


def extract_polyhedra(sli: list[SliClass], pis: list[PiClass], slot_sli: list[int]) -> None:
    """Attach one polyhedron per non-basis sli row to its pi class."""
    for c in sli:
        if c.in_basis:
            continue
        slots = bits_of(c.row)
        faces = [c.id] + [slot_sli[j] for j in slots]
        non_unique = any(sli[f].count > 1 for f in faces)
        pis[c.pi].polyhedra.append(Polyhedron(c.id, faces, slots, non_unique))


def pi_rank(pi: PiClass) -> int:
    return pi.rank


@dataclass
class Classes:
    sli: list[SliClass]
    pi: list[PiClass]
    slot_sli: list[int]
    R: RMatrix


def classify(R1: RMatrix, col_lengths: list[int], families: list[VFamily]) -> Classes:
    """Run filter, pi closure, sort, merge and polyhedron extraction."""
    R2 = filter_relevant(R1, col_lengths, families)
    groups = pi_classes(R2, col_lengths)
    R3, row_pi = canonical_sort(R2, groups, col_lengths)
    sli = sli_merge(R3, row_pi, col_lengths, families)
    pis = [PiClass(c, col_lengths[g[0]], list(g), []) for c, g in enumerate(groups)]
    slot_sli = [-1] * len(col_lengths)
    for s in sli:
        pis[s.pi].sli.append(s.id)
        if s.in_basis:
            slot_sli[s.slot] = s.id
    extract_polyhedra(sli, pis, slot_sli)
    R = RMatrix(
        [s.row for s in sli],
        [s.length for s in sli],
        [list(s.families) for s in sli],
        R1.ncols,
        [],
        [s.slot for s in sli],
    )
    return Classes(sli, pis, slot_sli, R)
