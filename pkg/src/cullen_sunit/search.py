"""Exhaustive searches over S-unit boxes.

Two kinds of campaign live here:

* ``max_shifted_nu2`` -- the largest 2-adic valuation of s + delta over every
  s = prod p_i^{a_i} in a box and every shift delta.  The box is laid out as a
  numpy grid of residues mod 2^w, so one shift costs a handful of vector
  passes.  Cells whose residue is 0 at width w are re-examined at 64 bits and
  then exactly; cells where s + delta is exactly 0 are skipped and counted.
* ``solve_factorial_sunit`` -- every u_n + eps*m! (u Cullen or Woodall) that
  is plus or minus an S-unit inside the box caps.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyBox, InternalCertificateFailure, ZeroArgument
from .recurrence import derive_closed_form, is_degenerate, iterate_terms, preset
from .valuation import nu

_DTYPES = {24: np.uint32, 32: np.uint32, 64: np.uint64}


@dataclass(frozen=True)
class SUnitBox:
    primes: tuple[int, ...]
    caps: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "primes", tuple(int(p) for p in self.primes))
        object.__setattr__(self, "caps", tuple(int(c) for c in self.caps))
        if len(self.primes) != len(self.caps):
            raise ValueError("primes and caps differ in length")
        if any(b <= a for a, b in zip(self.primes, self.primes[1:])):
            raise ValueError("primes must be strictly increasing")
        if any(c < 0 for c in self.caps):
            raise ValueError(f"caps must be nonnegative, got {self.caps}")

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(c + 1 for c in self.caps)

    @property
    def size(self) -> int:
        return math.prod(self.shape)

    def value(self, exps: Sequence[int]) -> int:
        return math.prod(p**e for p, e in zip(self.primes, exps))

    def with_two(self, cap: int) -> "SUnitBox":
        if 2 in self.primes:
            raise ValueError("box already contains 2")
        return SUnitBox((2,) + self.primes, (cap,) + self.caps)


class Smoothness(Enum):
    NOT_SMOOTH = "not smooth"
    CAP_EXCEEDED = "cap exceeded"


NOT_SMOOTH = Smoothness.NOT_SMOOTH
CAP_EXCEEDED = Smoothness.CAP_EXCEEDED


def smooth_decompose(x: int, box: SUnitBox) -> tuple[int, ...] | Smoothness:
    if x == 0:
        raise ZeroArgument("0 has no factorization")
    x = abs(x)
    exps = []
    for p in box.primes:
        if x % p:
            exps.append(0)
            continue
        e = nu(x, p)
        x //= p**e
        exps.append(e)
    if x != 1:
        return NOT_SMOOTH
    if any(e > c for e, c in zip(exps, box.caps)):
        return CAP_EXCEEDED
    return tuple(exps)


# ---------------------------------------------------------------------------
# nu_2 scans


@dataclass
class ScanReport:
    max_val: int | None
    # (*exponents, shift_index); None when every pair was skipped
    argmax: tuple[int, ...] | None
    count_scanned: int
    count_skipped_zero: int
    width_escalations: int
    shift_label: str | None = None
    # pairs dropped because s + unit_part == 0 (only with unit_parts)
    count_skipped_cancel: int = 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["argmax"] = list(self.argmax) if self.argmax is not None else None
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ScanReport":
        d = dict(d)
        if d.get("argmax") is not None:
            d["argmax"] = tuple(d["argmax"])
        return cls(**d)


def _better(val: int | None, key, best_val: int | None, best_key) -> bool:
    if val is None:
        return False
    if best_val is None or val > best_val:
        return True
    return val == best_val and key < best_key


def merge_reports(parts: Iterable[ScanReport]) -> ScanReport:
    """Commutative max-reduction; ties go to the lexicographically least argmax."""
    out = ScanReport(None, None, 0, 0, 0)
    for r in parts:
        if _better(r.max_val, r.argmax, out.max_val, out.argmax):
            out.max_val, out.argmax, out.shift_label = r.max_val, r.argmax, r.shift_label
        out.count_scanned += r.count_scanned
        out.count_skipped_zero += r.count_skipped_zero
        out.width_escalations += r.width_escalations
        out.count_skipped_cancel += r.count_skipped_cancel
    return out


def _residue_grid(primes, caps, lo: int, hi: int) -> np.ndarray:
    """prod p_i^{a_i} mod 2^64 for a_0 in [lo, hi), other exponents full range."""
    mask = (1 << 64) - 1
    grid = None
    for i, (p, c) in enumerate(zip(primes, caps)):
        rng = range(lo, hi) if i == 0 else range(c + 1)
        pw = np.array([pow(p, e, 1 << 64) & mask for e in rng], dtype=np.uint64)
        grid = pw if grid is None else np.multiply.outer(grid, pw)
    return grid.reshape(-1)


def _sub_shape(caps, lo, hi):
    return (hi - lo,) + tuple(c + 1 for c in caps[1:])


def _lowbit(x: np.ndarray) -> np.ndarray:
    return x & (x.dtype.type(0) - x)


def _escalate(primes, caps, lo, hi, grid64, idx, delta, width):
    """Valuations at flat indices whose width-w residue was 0. -1 marks an exact zero."""
    vals = np.empty(idx.size, dtype=np.int64)
    n_esc = idx.size
    if width < 64:
        x64 = grid64[idx] + np.uint64(delta & ((1 << 64) - 1))
        low = _lowbit(x64)
        nz = low != 0
        vals[nz] = [int(v).bit_length() - 1 for v in low[nz]]
        rest = np.flatnonzero(~nz)
        n_esc += rest.size
    else:
        rest = np.arange(idx.size)
    shape = _sub_shape(caps, lo, hi)
    for r in rest:
        cell = np.unravel_index(int(idx[r]), shape)
        exps = (int(cell[0]) + lo,) + tuple(int(c) for c in cell[1:])
        v = math.prod(p**e for p, e in zip(primes, exps)) + delta
        vals[r] = -1 if v == 0 else nu(v, 2)
    return vals, n_esc


def _cell(flat: int, caps, lo, hi) -> tuple[int, ...]:
    cell = np.unravel_index(flat, _sub_shape(caps, lo, hi))
    return (int(cell[0]) + lo,) + tuple(int(c) for c in cell[1:])


def _cancel_cells(primes, caps, lo, hi, unit_parts):
    """Flat index (within rows [lo, hi)) of the cell with s == -unit, per shift, or None."""
    box = SUnitBox(primes, caps)
    shape = _sub_shape(caps, lo, hi)
    out = []
    for u in unit_parts:
        cell = None
        if u is not None and -u >= 1:
            d = smooth_decompose(-u, box)
            if not isinstance(d, Smoothness) and lo <= d[0] < hi:
                cell = int(np.ravel_multi_index((d[0] - lo,) + d[1:], shape))
        out.append(cell)
    return out


def _scan_partition(args) -> ScanReport:
    primes, caps, lo, hi, shifts, width, unit_parts = args
    grid64 = _residue_grid(primes, caps, lo, hi)
    dtype = _DTYPES[width]
    wmask = (1 << width) - 1
    grid = grid64 if width == 64 else (grid64 & np.uint64(wmask)).astype(dtype)
    buf = np.empty_like(grid)
    low = np.empty_like(grid)
    cancel = _cancel_cells(primes, caps, lo, hi, unit_parts) if unit_parts else [None] * len(shifts)
    best_val, best_key = None, None
    skipped = escalations = cancelled = 0
    for si, delta in enumerate(shifts):
        np.add(grid, dtype(delta & wmask), out=buf)
        if width == 24:
            np.bitwise_and(buf, dtype(wmask), out=buf)
        np.subtract(dtype(0), buf, out=low)
        np.bitwise_and(low, buf, out=low)
        excl = cancel[si]
        if excl is not None:
            # a lowbit of 0 drops the cell from the max; it is removed from idx below
            low[excl] = 0
            cancelled += 1
        top = int(low.max())
        cand_val, cand_flat = None, None
        if top:
            cand_val = top.bit_length() - 1
            cand_flat = int(np.argmax(low))
        if not low.all():
            idx = np.flatnonzero(low == 0)
            if excl is not None:
                idx = idx[idx != excl]
            vals, n_esc = _escalate(primes, caps, lo, hi, grid64, idx, delta, width)
            escalations += n_esc
            skipped += int(np.count_nonzero(vals < 0))
            if vals.size and vals.max() >= 0:
                # escalated cells have nu_2 >= width, beating every regular cell
                v = int(vals.max())
                cand_val, cand_flat = v, int(idx[int(np.argmax(vals))])
        if cand_val is not None:
            key = _cell(cand_flat, caps, lo, hi) + (si,)
            if _better(cand_val, key, best_val, best_key):
                best_val, best_key = cand_val, key
    scanned = grid.size * len(shifts)
    return ScanReport(best_val, best_key, scanned, skipped, escalations,
                      count_skipped_cancel=cancelled)


def nu2_grid(box: SUnitBox, shift: int, width: int = 32) -> np.ndarray:
    """nu_2(s + shift) for every cell of the box (shape ``box.shape``); -1 where s + shift == 0.

    Same truncated-residue path as the scan, kept for spot checks.
    """
    primes, caps = box.primes, box.caps
    grid64 = _residue_grid(primes, caps, 0, caps[0] + 1)
    wmask = (1 << width) - 1
    dtype = _DTYPES[width]
    grid = grid64 if width == 64 else (grid64 & np.uint64(wmask)).astype(dtype)
    x = grid + dtype(shift & wmask)
    if width == 24:
        x &= dtype(wmask)
    low = _lowbit(x)
    out = np.full(low.shape, -1, dtype=np.int64)
    nz = low != 0
    # lowbit is a power of two; log2 is exact in float64 for widths <= 64
    out[nz] = np.log2(low[nz].astype(np.float64)).astype(np.int64)
    idx = np.flatnonzero(~nz)
    if idx.size:
        out[idx], _ = _escalate(primes, caps, 0, caps[0] + 1, grid64, idx, shift, width)
    return out.reshape(box.shape)


def _partition_bounds(n_rows: int, n_parts: int) -> list[tuple[int, int]]:
    n_parts = max(1, min(n_parts, n_rows))
    edges = [n_rows * i // n_parts for i in range(n_parts + 1)]
    return [(edges[i], edges[i + 1]) for i in range(n_parts)]


def _config_hash(box: SUnitBox, shifts: Sequence[int], width: int, n_parts: int,
                 unit_parts=None) -> str:
    h = hashlib.sha256()
    h.update(json.dumps([box.primes, box.caps, width, n_parts,
                         None if unit_parts is None else list(unit_parts)]).encode())
    for s in shifts:
        h.update(str(s).encode() + b",")
    return h.hexdigest()


def _write_atomic(path: str, payload: dict) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".ckpt")
    with os.fdopen(fd, "w") as f:
        json.dump(payload, f)
    os.replace(tmp, path)


def max_shifted_nu2(
    box: SUnitBox,
    shifts: Sequence[int],
    width: int = 32,
    workers: int = 1,
    partitions: int | None = None,
    checkpoint: str | None = None,
    labels: Sequence[str] | None = None,
    unit_parts: Sequence[int] | None = None,
    stop_after: int | None = None,
) -> ScanReport:
    """max* over the box and shifts of nu_2(s + delta).

    Pairs with s + delta == 0 are always skipped.  When a shift is composite,
    delta = unit + rest (as in +-1 +- m!), passing ``unit_parts`` also skips
    the cells where s + unit == 0, i.e. where the unit cancels s outright.

    The box is split along its first prime into ``partitions`` row blocks.
    With ``checkpoint`` the running reduction is saved after every block and
    a rerun with the same configuration resumes where it stopped.
    ``stop_after`` ends the run early after that many blocks (for testing
    resumption); the returned report is then partial.
    """
    if not shifts:
        raise EmptyBox("no shifts given")
    if box.size == 0 or not box.primes:
        raise EmptyBox("box has no cells")
    if any(p == 2 for p in box.primes):
        raise ValueError("nu_2 scans need odd primes only")
    if width not in _DTYPES:
        raise ValueError(f"width must be one of {sorted(_DTYPES)}")
    shifts = [int(s) for s in shifts]
    n_rows = box.caps[0] + 1
    if partitions is None:
        partitions = min(n_rows, max(8, 4 * workers))
    bounds = _partition_bounds(n_rows, partitions)
    if unit_parts is not None and len(unit_parts) != len(shifts):
        raise ValueError("unit_parts must match shifts in length")
    chash = _config_hash(box, shifts, width, len(bounds), unit_parts)

    done = 0
    running = ScanReport(None, None, 0, 0, 0)
    if checkpoint and os.path.exists(checkpoint):
        with open(checkpoint) as f:
            state = json.load(f)
        if state.get("config") != chash:
            raise ValueError(f"checkpoint {checkpoint} belongs to a different scan")
        done = state["next_partition"]
        running = ScanReport.from_dict(state["running"])

    todo = bounds[done:]
    if stop_after is not None:
        todo = todo[:stop_after]
    units = None if unit_parts is None else [None if u is None else int(u) for u in unit_parts]
    jobs = [(box.primes, box.caps, lo, hi, shifts, width, units) for lo, hi in todo]

    def absorb(part: ScanReport):
        nonlocal running, done
        running = merge_reports([running, part])
        done += 1
        if checkpoint:
            _write_atomic(checkpoint, {"config": chash, "next_partition": done,
                                       "partitions": len(bounds), "running": running.to_dict()})

    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as ex:
            for part in ex.map(_scan_partition, jobs):
                absorb(part)
    else:
        for job in jobs:
            absorb(_scan_partition(job))

    if running.argmax is not None:
        *exps, si = running.argmax
        exact = box.value(exps) + shifts[si]
        if nu(exact, 2) != running.max_val:
            raise InternalCertificateFailure(f"argmax {running.argmax} does not re-verify")
        running.shift_label = labels[si] if labels is not None else str(shifts[si])
    return running


@dataclass(frozen=True)
class ShiftSet:
    values: list[int]
    labels: list[str]
    # None entries: the shift is a bare unit and exact-zero skipping covers it
    unit_parts: list[int | None]

    def __len__(self):
        return len(self.values)


def pm1_shifts() -> ShiftSet:
    return ShiftSet([1, -1], ["+1", "-1"], [None, None])


def factorial_shifts(m_lo: int, m_hi: int) -> ShiftSet:
    """Shifts e1 + e2*m! for m in [m_lo, m_hi], m-major, signs (+,+), (+,-), (-,+), (-,-)."""
    shifts, labels, units = [], [], []
    f = math.factorial(m_lo)
    for m in range(m_lo, m_hi + 1):
        if m > m_lo:
            f *= m
        for e1 in (1, -1):
            for e2 in (1, -1):
                shifts.append(e1 + e2 * f)
                units.append(e1)
                labels.append(f"{'+' if e1 > 0 else '-'}1{'+' if e2 > 0 else '-'}{m}!")
    return ShiftSet(shifts, labels, units)


def scan_shift_set(box: SUnitBox, shifts: ShiftSet, skip_cancelling: bool = True,
                   **kwargs) -> ScanReport:
    """max_shifted_nu2 over a ShiftSet, labels attached."""
    return max_shifted_nu2(box, shifts.values, labels=shifts.labels,
                           unit_parts=shifts.unit_parts if skip_cancelling and any(
                               u is not None for u in shifts.unit_parts) else None, **kwargs)


# ---------------------------------------------------------------------------
# factorial / S-unit enumeration

FAMILIES = ("cullen", "woodall")
_SYMBOL = {"cullen": "C", "woodall": "W"}


@dataclass(frozen=True)
class SolutionRecord:
    family: str
    n: int
    m: int
    eps: int
    value: int
    sign_s: int
    exponents: tuple[int, ...]
    degenerate: bool

    @property
    def identity(self) -> str:
        return f"{_SYMBOL[self.family]}_{self.n}{'+' if self.eps > 0 else '-'}{self.m}!"

    def verify(self, box: SUnitBox) -> bool:
        u = preset(self.family)
        un = iterate_terms(u, self.n + 1)[self.n]
        return (un + self.eps * math.factorial(self.m) == self.value
                == self.sign_s * box.value(self.exponents)
                and all(e <= c for e, c in zip(self.exponents, box.caps)))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["exponents"] = list(self.exponents)
        return d


@dataclass
class SolveResult:
    box: SUnitBox
    records: list[SolutionRecord]
    values: list[int] = field(default_factory=list)

    def by_value(self) -> dict[int, list[SolutionRecord]]:
        out: dict[int, list[SolutionRecord]] = {}
        for r in self.records:
            out.setdefault(r.value, []).append(r)
        return dict(sorted(out.items()))

    def headline(self, m_min: int = 2) -> tuple[int, int]:
        """(max n over nondegenerate records with m >= m_min, max m over the same)."""
        nd = [r for r in self.records if not r.degenerate and r.m >= m_min]
        return max(r.n for r in nd), max(r.m for r in nd)

    def to_dict(self) -> dict:
        return {
            "primes": list(self.box.primes), "caps": list(self.box.caps),
            "records": [r.to_dict() for r in self.records],
            "values": self.values,
        }

    def to_csv(self) -> str:
        """One row per value: value, factorization, identities (dagger marks degenerate)."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["value", "factorization", "identities"])
        for v, recs in self.by_value().items():
            w.writerow([v, format_factorization(recs[0].sign_s, self.box.primes, recs[0].exponents),
                        " = ".join(r.identity + ("†" if r.degenerate else "") for r in recs)])
        return buf.getvalue()


def format_factorization(sign: int, primes, exps) -> str:
    parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in zip(primes, exps) if e]
    body = "*".join(parts) if parts else "1"
    return ("-" if sign < 0 else "") + body


def _solve_family(args):
    family, n_max, m_lo, m_hi, box = args
    cf = derive_closed_form(preset(family))
    terms = iterate_terms(preset(family), n_max + 1)
    out = []
    f = math.factorial(m_lo)
    for m in range(m_lo, m_hi + 1):
        if m > m_lo:
            f *= m
        for n, un in enumerate(terms):
            for eps in (1, -1):
                v = un + eps * f
                if v == 0:
                    continue
                d = smooth_decompose(v, box)
                if isinstance(d, Smoothness):
                    continue
                out.append(SolutionRecord(family, n, m, eps, v, 1 if v > 0 else -1, d,
                                          is_degenerate(cf, -eps, m, n)))
    return out


def solve_factorial_sunit(families: Iterable[str], n_max: int, m_range: tuple[int, int],
                          box: SUnitBox, workers: int = 1) -> SolveResult:
    """Every (family, n, m, eps) with u_n + eps*m! = +-s, s an S-unit within the caps."""
    m_lo, m_hi = m_range
    if m_lo < 0 or m_hi < m_lo or n_max < 0:
        raise ValueError(f"bad ranges n_max={n_max}, m_range={m_range}")
    fams = sorted(set(f.lower() for f in families))
    for f in fams:
        if f not in FAMILIES:
            raise ValueError(f"unknown family {f!r}")
    jobs = [(f, n_max, m_lo, m_hi, box) for f in fams]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(min(workers, len(jobs))) as ex:
            chunks = list(ex.map(_solve_family, jobs))
    else:
        chunks = [_solve_family(j) for j in jobs]
    records = sorted((r for c in chunks for r in c),
                     key=lambda r: (r.value, r.family, r.n, r.m, -r.eps))
    return SolveResult(box, records, sorted({r.value for r in records}))
