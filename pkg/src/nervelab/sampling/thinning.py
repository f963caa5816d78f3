"""Seeded Poisson sampling and staged dependent thinning on finite spaces.

Stage j draws a Poisson configuration with independent uniform marks, then
removes every candidate that loses a proximity duel: against a same-stage
peer of higher (mark, id), or against any survivor of an earlier stage, a
candidate dies when the kernel value of the pair distance reaches the pair's
own uniform variable. Kernel 1 within eps makes the union of survivors
eps-separated unconditionally; kernel 0 beyond 2*eps caps the interaction
range. All decisions are exact rational comparisons; floats only prefilter
pairs that are out of range anyway.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from ..errors import ContractError
from ..mmspace.space import FiniteMMSpace, _CircleBackend, _TorusBackend
from .rng import derive, poisson_counts, unit_fraction

_PAD = Fraction(1, 1 << 40)  # relative float-prefilter slack


@dataclass(frozen=True)
class PointConfig:
    space: FiniteMMSpace
    points: tuple[int, ...]
    marks: Mapping[int, Fraction]
    stage: Mapping[int, int]

    def __post_init__(self):
        pts = tuple(sorted(self.points))
        if len(set(pts)) != len(pts):
            raise ContractError("duplicate points in configuration")
        n = self.space.n
        if any(not 0 <= p < n for p in pts):
            raise ContractError("configuration point out of range")
        for p in pts:
            m = self.marks.get(p)
            if m is None or not 0 <= m <= 1:
                raise ContractError(f"point {p}: mark missing or outside [0,1]")
            if self.stage.get(p, 0) < 1:
                raise ContractError(f"point {p}: missing stage index")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "marks", dict(self.marks))
        object.__setattr__(self, "stage", dict(self.stage))

    def serialize(self) -> str:
        lines = ["point mark stage"]
        for p in self.points:
            lines.append(f"{p} {self.marks[p]} {self.stage[p]}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ThinningParams:
    eps: Fraction
    stages: int
    intensity: Fraction
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "eps", Fraction(self.eps))
        object.__setattr__(self, "intensity", Fraction(self.intensity))
        if self.eps <= 0:
            raise ContractError("eps must be positive")
        if self.stages < 1:
            raise ContractError("need at least one stage")
        if self.intensity < 0:
            raise ContractError("intensity must be non-negative")


class _AtomIndex:
    """Near-neighbor lookup among a fixed set of atoms, by backend shape."""

    def __init__(self, space: FiniteMMSpace, atoms: Sequence[int]):
        self.space = space
        self.atoms = sorted(atoms)
        b = space.backend
        if isinstance(b, _TorusBackend):
            self.kind = "torus"
            self.k = b.k
            self.cells: dict[tuple[int, int], list[int]] = {}
        elif isinstance(b, _CircleBackend):
            self.kind = "circle"
            self.k = b.k
        else:
            self.kind = "dense"
        self._cell_size = None

    def near(self, atom: int, radius: Fraction) -> list[int]:
        """Candidate atoms with dist <= radius, plus possibly a few farther
        ones; exact filtering is the caller's job."""
        sp = self.space
        if self.kind == "circle":
            steps = int(radius / sp.backend.h) + 1
            k = self.k
            if 2 * steps + 1 >= k:
                return list(self.atoms)
            lo, hi = atom - steps, atom + steps
            out = []
            for a, b in ((lo % k, min(hi % k, k - 1)) if lo % k <= hi % k
                         else ((lo % k, k - 1), (0, hi % k))) if lo // k != hi // k \
                    else ((lo, hi),):
                pass
            # windows, possibly wrapping
            if lo < 0:
                spans = [(lo + k, k - 1), (0, hi)]
            elif hi >= k:
                spans = [(lo, k - 1), (0, hi - k)]
            else:
                spans = [(lo, hi)]
            out = []
            for a, b in spans:
                i = bisect.bisect_left(self.atoms, a)
                j = bisect.bisect_right(self.atoms, b)
                out.extend(self.atoms[i:j])
            return out
        if self.kind == "torus":
            c = int(radius / sp.backend.h) + 1
            if self._cell_size != c:
                self._cell_size = c
                self.cells = {}
                for a in self.atoms:
                    key = ((a // self.k) // c, (a % self.k) // c)
                    self.cells.setdefault(key, []).append(a)
            ncells = -(-self.k // c)
            r0, c0 = (atom // self.k) // c, (atom % self.k) // c
            out = []
            seen = set()
            for dr in (-1, 0, 1):
                for dc in (-1, 0, 1):
                    key = ((r0 + dr) % ncells, (c0 + dc) % ncells)
                    if key in seen:
                        continue
                    seen.add(key)
                    out.extend(self.cells.get(key, ()))
            return out
        return list(self.atoms)


def poisson_sample(space: FiniteMMSpace, intensity, seed: int,
                   tag: str = "arrivals") -> tuple[dict[int, Fraction], int]:
    """Marks for the retained candidate at each hit atom, plus the total
    arrival count before same-atom collapse.

    Per-atom counts are Poisson(intensity * weight); multiple arrivals at an
    atom keep the highest of their independent marks.
    """
    intensity = Fraction(intensity)
    if intensity < 0:
        raise ContractError("intensity must be negative-free")
    if intensity == 0:
        return {}, 0
    by_lam: dict[Fraction, list[int]] = {}
    for i, w in enumerate(space.weight):
        by_lam.setdefault(intensity * w, []).append(i)
    marks: dict[int, Fraction] = {}
    total = 0
    for lam, idxs in sorted(by_lam.items()):
        ids = np.array(idxs, dtype=np.uint64)
        counts = poisson_counts(float(lam), seed, tag + "-count", ids)
        total += int(counts.sum())
        for atom, c in zip(idxs, counts):
            if c == 0:
                continue
            best = max(
                unit_fraction(seed, tag + "-mark", atom, occ)
                for occ in range(int(c))
            )
            marks[atom] = best
    return marks, total


def kernel_phi(t, eps) -> Fraction:
    """1 on [0, eps], 0 from 2*eps on, linear in between."""
    t, eps = Fraction(t), Fraction(eps)
    if t < 0:
        raise ContractError("distance must be non-negative")
    if eps <= 0:
        raise ContractError("eps must be positive")
    if t <= eps:
        return Fraction(1)
    if t >= 2 * eps:
        return Fraction(0)
    return (2 * eps - t) / eps


def pair_variable(seed: int, a: int, b: int) -> Fraction:
    """Symmetric uniform X for an unordered atom pair."""
    lo, hi = (a, b) if a <= b else (b, a)
    return unit_fraction(seed, "pair", lo, hi)


def thin(space: FiniteMMSpace, params: ThinningParams) -> PointConfig:
    eps, seed = params.eps, params.seed
    two_eps = 2 * eps
    reach_f = float(two_eps * (1 + _PAD))
    surv_marks: dict[int, Fraction] = {}
    surv_stage: dict[int, int] = {}
    surv_index: _AtomIndex | None = None

    for j in range(1, params.stages + 1):
        cand, _ = poisson_sample(space, params.intensity, seed, tag=f"stage{j}")
        for a in list(cand):
            if a in surv_marks:
                # same atom as a prior survivor: distance 0, killed for sure
                del cand[a]
        if not cand:
            continue
        cand_index = _AtomIndex(space, list(cand))
        kept: list[int] = []
        for s in cand:
            ms = cand[s]
            killed = False
            for t in cand_index.near(s, two_eps):
                if t == s:
                    continue
                if (ms, s) >= (cand[t], t):
                    continue
                if space.dist_float(s, t) > reach_f:
                    continue
                d = space.dist(s, t)
                if d <= eps:
                    killed = True
                    break
                if d < two_eps and kernel_phi(d, eps) >= pair_variable(seed, s, t):
                    killed = True
                    break
            if not killed and surv_index is not None:
                for y in surv_index.near(s, two_eps):
                    if space.dist_float(s, y) > reach_f:
                        continue
                    d = space.dist(s, y)
                    if d <= eps:
                        killed = True
                        break
                    if d < two_eps and kernel_phi(d, eps) >= pair_variable(seed, s, y):
                        killed = True
                        break
            if not killed:
                kept.append(s)
        for s in kept:
            surv_marks[s] = cand[s]
            surv_stage[s] = j
        if kept or surv_index is None:
            surv_index = _AtomIndex(space, list(surv_marks))
    return PointConfig(space, tuple(sorted(surv_marks)), surv_marks, surv_stage)


def separated_covering_check(space: FiniteMMSpace, config: PointConfig,
                             eps) -> tuple[bool, Fraction | float]:
    """(all pairwise gaps exceed eps, max distance to the nearest point).

    The covering radius is exact; it is math.inf for an empty configuration.
    """
    eps = Fraction(eps)
    pts = config.points
    if not pts:
        return True, math.inf
    index = _AtomIndex(space, pts)
    sep_f = float(eps * (1 + _PAD))
    separated = True
    for s in pts:
        for t in index.near(s, eps):
            if t <= s:
                continue
            if space.dist_float(s, t) > sep_f:
                continue
            if space.dist(s, t) <= eps:
                separated = False
                break
        if not separated:
            break
    return separated, _covering_radius(space, pts)


def _covering_radius(space: FiniteMMSpace, pts: Sequence[int]) -> Fraction:
    b = space.backend
    if isinstance(b, _CircleBackend):
        k, h = b.k, b.h
        atoms = sorted(pts)
        worst = 0
        for a, nxt in zip(atoms, atoms[1:] + [atoms[0] + k]):
            gap = nxt - a
            worst = max(worst, gap // 2)
        return min(worst, k // 2) * h
    if isinstance(b, _TorusBackend):
        from scipy.ndimage import distance_transform_edt

        k = b.k
        pad = k // 2
        grid = np.ones((k, k), dtype=bool)
        rows = np.array([p // k for p in pts])
        cols = np.array([p % k for p in pts])
        grid[rows, cols] = False
        tiled = np.ones((k + 2 * pad, k + 2 * pad), dtype=bool)
        for dr in (-1, 0, 1):
            for dc in (-1, 0, 1):
                r0, c0 = pad + dr * k, pad + dc * k
                rr = rows + r0
                cc = cols + c0
                keep = (rr >= 0) & (rr < k + 2 * pad) & (cc >= 0) & (cc < k + 2 * pad)
                tiled[rr[keep], cc[keep]] = False
        dist_px = distance_transform_edt(tiled)[pad:pad + k, pad:pad + k]
        worst = float(dist_px.max()) * float(b.h)
        return Fraction(worst)
    worst = Fraction(0)
    for z in range(space.n):
        nearest = min(space.dist(z, s) for s in pts)
        worst = max(worst, nearest)
    return worst
