"""Breadth-first enumeration of group elements pruned by displacement.

Elements are kept as a flat table (matrix, parent index, generator label,
step count) so that words are only materialised on demand. Elements reached
along different paths (relations in the group, or a redundant generating
set) are merged on a hash of the rounded, sign-normalised matrix.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..config import Deadline
from ..errors import BudgetExceeded
from .matrices import cosh_displacement, sign_normalize
from .words import free_reduce, inverse

KEY_SCALE = 1e6
_MIX = np.array([0x9E3779B97F4A7C15, 0xC2B2AE3D27D4EB4F, 0x165667B19E3779F9, 0x27D4EB2F165667C5],
                dtype=np.uint64)


def element_hashes(ms, scale=KEY_SCALE):
    """64-bit hashes of elements of PSL(2,R) up to rounding."""
    q = np.round(sign_normalize(ms).reshape(len(ms), 4) * scale).astype(np.int64)
    with np.errstate(over="ignore"):
        return (q.astype(np.uint64) * _MIX).sum(axis=1, dtype=np.uint64)


@dataclass
class Ball:
    mats: np.ndarray  # (n, 2, 2)
    parent: np.ndarray
    label: np.ndarray  # index into `labels`, -1 for the identity
    wordlen: np.ndarray  # generator steps from the identity
    labels: list
    radius: float
    complete: bool  # frontier emptied before the step cap

    def __len__(self):
        return len(self.mats)

    def word(self, i):
        out = []
        while self.label[i] >= 0:
            out.append(self.labels[self.label[i]])
            i = self.parent[i]
        return free_reduce("".join(reversed(out)))

    @property
    def cosh_disp(self):
        return cosh_displacement(self.mats)

    def within(self, radius):
        return np.nonzero(self.cosh_disp <= math.cosh(radius) * (1 + 1e-12))[0]


def _label_order(labels):
    return sorted(labels, key=lambda w: (len(w), [(ch.lower(), ch.isupper()) for ch in w]))


def ball_elements(generators, radius, max_depth=10_000, max_elements=3_000_000, deadline=None,
                  accept=None):
    """Elements reachable from the identity through prefixes with d(i, g i) <= radius.

    `generators` maps labels (letters or whole words) to matrices. A step that
    undoes the previous one is skipped when the inverse label is present.
    `accept`, if given, replaces the displacement test: it maps a stack of
    matrices to a boolean mask of the prefixes worth extending.
    """
    deadline = deadline or Deadline()
    labels = _label_order(generators)
    gens = np.array([generators[w].array() for w in labels])
    inv_idx = np.array([labels.index(inverse(w)) if inverse(w) in generators else -2 for w in labels])
    bound = math.cosh(radius) * (1 + 1e-12)
    ng = len(labels)

    mats = [np.eye(2)[None]]
    parent = [np.array([-1])]
    label = [np.array([-1])]
    wordlen = [np.array([0])]
    seen = element_hashes(mats[0])
    total = 1
    f_mats, f_idx, f_last = mats[0], np.array([0]), np.array([-1])
    depth = 0
    while len(f_mats) and depth < max_depth:
        deadline.check("group ball enumeration")
        depth += 1
        kids = np.einsum("nij,gjk->ngik", f_mats, gens).reshape(-1, 2, 2)
        par = np.repeat(f_idx, ng)
        let = np.tile(np.arange(ng), len(f_mats))
        last = np.repeat(f_last, ng)
        ok = (last < 0) | (let != inv_idx[np.maximum(last, 0)])
        ok &= accept(kids) if accept is not None else cosh_displacement(kids) <= bound
        kids, par, let = kids[ok], par[ok], let[ok]
        if depth % 16 == 0 and len(kids):
            det = kids[:, 0, 0] * kids[:, 1, 1] - kids[:, 0, 1] * kids[:, 1, 0]
            kids = kids / np.sqrt(det)[:, None, None]
        h = element_hashes(kids)
        _, first = np.unique(h, return_index=True)
        first.sort()
        pos = np.minimum(np.searchsorted(seen, h[first]), len(seen) - 1)
        fresh = first[seen[pos] != h[first]]
        kids, par, let = kids[fresh], par[fresh], let[fresh]
        seen = np.union1d(seen, h[fresh])
        idx = np.arange(total, total + len(kids))
        total += len(kids)
        if total > max_elements:
            raise BudgetExceeded(
                f"search region of radius {radius:.3f} exceeds the {max_elements} element budget"
            )
        mats.append(kids)
        parent.append(par)
        label.append(let)
        wordlen.append(np.full(len(kids), depth))
        f_mats, f_idx, f_last = kids, idx, let
    return Ball(
        mats=np.concatenate(mats),
        parent=np.concatenate(parent),
        label=np.concatenate(label),
        wordlen=np.concatenate(wordlen),
        labels=labels,
        radius=radius,
        complete=len(f_mats) == 0,
    )
