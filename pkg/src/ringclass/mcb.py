"""Minimum cycle basis from R0 via witness vectors, and change of basis.

All vectors are int bitsets over the ``nu`` fundamental coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cycles import CycleVec, bits_of
from .vfamilies import RMatrix

__all__ = [
    "RankDeficient",
    "McbBasis",
    "compute_mcb",
    "compute_modified_witnesses",
    "expand_in_mcb",
    "build_R1",
    "transpose_bits",
]


class RankDeficient(RuntimeError):
    pass


def _odd(x: int) -> bool:
    return x.bit_count() & 1 == 1


@dataclass
class McbBasis:
    basis: list[int]
    rows: list[int]
    lengths: list[int]
    witnesses: list[int]
    modified: list[int] | None = None
    _wt: list[int] | None = field(default=None, repr=False)

    @property
    def nu(self) -> int:
        return len(self.basis)

    @property
    def cost(self) -> int:
        return sum(self.lengths)

    def vec(self, i: int) -> CycleVec:
        return CycleVec(self.basis[i])

    @property
    def W(self) -> list[int]:
        if self.modified is None:
            raise RuntimeError("modified witnesses not computed")
        return self.modified

    @property
    def Wt(self) -> list[int]:
        """Row ``i`` holds bit ``j`` iff fundamental coordinate ``i`` is set in column ``j`` of W."""
        if self._wt is None:
            self._wt = transpose_bits(self.W, self.nu)
        return self._wt


def compute_mcb(R0: RMatrix) -> McbBasis:
    """Pick ``B_j`` as the first R0 row with odd overlap with ``S_j``."""
    nu = R0.ncols
    S = [1 << j for j in range(nu)]
    basis, rows, lengths = [], [], []
    R = R0.rows
    used = set()
    for j in range(nu):
        s = S[j]
        for i, r in enumerate(R):
            if i not in used and _odd(r & s):
                break
        else:
            raise RankDeficient(f"no row has odd inner product with witness {j}")
        used.add(i)
        b = R[i]
        basis.append(b)
        rows.append(i)
        lengths.append(R0.lengths[i])
        for k in range(j + 1, nu):
            if _odd(b & S[k]):
                S[k] ^= s
    return McbBasis(basis, rows, lengths, S)


def compute_modified_witnesses(mcb: McbBasis) -> list[int]:
    """Backward sweep so that ``<B_i, S~_j> = [i == j]``."""
    nu = mcb.nu
    St = list(mcb.witnesses)
    for k in range(nu - 1, 0, -1):
        bk = mcb.basis[k]
        for j in range(k):
            if _odd(bk & mcb.witnesses[j]):
                St[j] ^= St[k]
    mcb.modified = St
    mcb._wt = None
    return St


def transpose_bits(cols: list[int], nrows: int) -> list[int]:
    out = [0] * nrows
    for j, c in enumerate(cols):
        bit = 1 << j
        for i in bits_of(c):
            out[i] |= bit
    return out


def expand_in_mcb(c: CycleVec | int, mcb: McbBasis) -> int:
    """MCB coordinates of ``c`` as a bitset over basis slots."""
    x = c.bits if isinstance(c, CycleVec) else c
    out = 0
    wt = mcb.Wt
    for i in bits_of(x):
        out ^= wt[i]
    return out


def build_R1(R0: RMatrix, mcb: McbBasis) -> RMatrix:
    rows = [expand_in_mcb(r, mcb) for r in R0.rows]
    slot = [-1] * len(rows)
    for j, i in enumerate(mcb.rows):
        slot[i] = j
    return RMatrix(
        rows, list(R0.lengths), [list(f) for f in R0.families], R0.ncols, list(range(len(rows))), slot
    )
