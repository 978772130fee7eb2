"""Compact sets built from finitely many disjoint closed real intervals.

An :class:`IntervalSet` stores the bands of K = [a, b] minus its open
gaps.  Values are immutable; every operation returns a fresh set, so
instances are safe to share across threads.
"""

from dataclasses import dataclass

DEFAULT_MERGE_TOL = 1e-12


@dataclass(frozen=True)
class IntervalSet:
    """Sorted disjoint nondegenerate closed intervals ("bands")."""

    bands: tuple

    def __post_init__(self):
        if not self.bands:
            raise ValueError("IntervalSet needs at least one band")
        for a, b in self.bands:
            if not a < b:
                raise ValueError(f"degenerate band ({a}, {b})")
        for (_, b0), (a1, _) in zip(self.bands, self.bands[1:]):
            if not b0 < a1:
                raise ValueError("bands must be strictly ordered and disjoint")

    @property
    def hull(self):
        return (self.bands[0][0], self.bands[-1][1])

    @property
    def endpoints(self):
        """All band endpoints in ascending order."""
        return tuple(e for band in self.bands for e in band)

    def contains(self, x, tol=0.0):
        return any(a - tol <= x <= b + tol for a, b in self.bands)

    def band_index(self, x, tol=0.0):
        """Index of the band containing x, or None."""
        for j, (a, b) in enumerate(self.bands):
            if a - tol <= x <= b + tol:
                return j
        return None


@dataclass(frozen=True)
class Gap:
    """Open interval between two consecutive bands."""

    left: float
    right: float
    index: int

    def __post_init__(self):
        if not self.left < self.right:
            raise ValueError("gap endpoints out of order")

    @property
    def midpoint(self):
        return 0.5 * (self.left + self.right)


def normalize(raw_intervals, merge_tol=DEFAULT_MERGE_TOL):
    """Sort endpoint pairs and merge overlapping or near-touching ones.

    Pairs whose closures overlap, touch, or come within merge_tol of each
    other fuse into one band.  A pair with equal endpoints, or a merge
    that would leave a single-point component, is rejected: isolated
    points are outside the sets this package handles.
    """
    pairs = [tuple(sorted(map(float, p))) for p in raw_intervals]
    if not pairs:
        raise ValueError("no intervals given")
    for a, b in pairs:
        if a == b:
            raise ValueError(f"degenerate interval ({a}, {b})")
    pairs.sort()
    merged = [list(pairs[0])]
    for a, b in pairs[1:]:
        if a <= merged[-1][1] + merge_tol:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    for a, b in merged:
        if a == b:
            raise ValueError("merging produced a single-point component")
    return IntervalSet(tuple((a, b) for a, b in merged))


def gaps(interval_set):
    """Gaps of the set, one per consecutive band pair."""
    out = []
    for k, ((_, b0), (a1, _)) in enumerate(zip(interval_set.bands, interval_set.bands[1:])):
        out.append(Gap(b0, a1, k))
    return out


def affine_map(interval_set, source_hull, target_hull):
    """Image under the increasing affine map source_hull -> target_hull."""
    sa, sb = map(float, source_hull)
    ta, tb = map(float, target_hull)
    if sa == sb or ta == tb:
        raise ValueError("degenerate hull")
    scale = (tb - ta) / (sb - sa)

    def f(x):
        return ta + (x - sa) * scale

    return IntervalSet(tuple((f(a), f(b)) for a, b in interval_set.bands))
