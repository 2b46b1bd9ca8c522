"""Finite joint PMFs over X x Y x Z, channels, and their marginals."""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, EmptyAlphabet, MarginalMismatch, NegativeMass, NotNormalized

EPS_PMF = 1e-9


def _freeze(arr):
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


def _default_labels(prefix, size):
    return tuple(f"{prefix}{i + 1}" for i in range(size))


@dataclass(frozen=True, eq=False)
class JointPMF:
    """Probability table ``probs[x, y, z]``.

    ``exact`` optionally carries the same table as nested ``Fraction`` values
    (as parsed from rational input); marginals are then summed exactly and
    rounded once.
    """

    probs: np.ndarray
    x_labels: tuple = None
    y_labels: tuple = None
    z_labels: tuple = None
    exact: tuple = field(default=None, repr=False)

    def __post_init__(self):
        probs = np.array(self.probs, dtype=float)
        if probs.ndim != 3:
            raise DimensionMismatch(f"joint PMF table must be 3-D, got shape {probs.shape}")
        object.__setattr__(self, "probs", _freeze(probs))
        for name, prefix, size in (("x_labels", "x", probs.shape[0]),
                                   ("y_labels", "y", probs.shape[1]),
                                   ("z_labels", "z", probs.shape[2])):
            labels = getattr(self, name)
            labels = _default_labels(prefix, size) if labels is None else tuple(labels)
            if len(labels) != size:
                raise DimensionMismatch(f"{name} has {len(labels)} entries for an alphabet of size {size}")
            object.__setattr__(self, name, labels)

    @property
    def x_size(self):
        return self.probs.shape[0]

    @property
    def y_size(self):
        return self.probs.shape[1]

    @property
    def z_size(self):
        return self.probs.shape[2]

    @property
    def shape(self):
        return self.probs.shape

    def __eq__(self, other):
        if not isinstance(other, JointPMF):
            return NotImplemented
        return (self.shape == other.shape and np.array_equal(self.probs, other.probs)
                and (self.x_labels, self.y_labels, self.z_labels)
                == (other.x_labels, other.y_labels, other.z_labels))

    __hash__ = None

    @classmethod
    def from_exact(cls, table, **labels):
        """Build from a nested [x][y][z] list of ``Fraction``-convertible values."""
        exact = tuple(tuple(tuple(Fraction(v) for v in row) for row in plane) for plane in table)
        probs = [[[float(v) for v in row] for row in plane] for plane in exact]
        return cls(probs=probs, exact=exact, **labels)


@dataclass(frozen=True, eq=False)
class Channel:
    """Row-stochastic matrix; entry ``(k, j)`` is P(output j | input k)."""

    probs: np.ndarray

    def __post_init__(self):
        probs = np.array(self.probs, dtype=float)
        if probs.ndim != 2:
            raise DimensionMismatch(f"channel must be 2-D, got shape {probs.shape}")
        object.__setattr__(self, "probs", _freeze(probs))

    @property
    def rows(self):
        return self.probs.shape[0]

    @property
    def cols(self):
        return self.probs.shape[1]

    def is_stochastic(self, tol=EPS_PMF):
        p = self.probs
        if p.size == 0:
            return False
        return bool(np.all(p >= -tol) and np.all(p <= 1 + tol)
                    and np.all(np.abs(p.sum(axis=1) - 1.0) <= tol))


def validate_pmf(p, eps=EPS_PMF):
    """Raise if ``p`` is not a valid joint PMF; return None otherwise."""
    if min(p.shape) < 1:
        raise EmptyAlphabet(f"every alphabet needs at least one symbol, got sizes {p.shape}")
    if not np.all(np.isfinite(p.probs)):
        raise NegativeMass("table contains non-finite entries")
    if np.any(p.probs < 0):
        raise NegativeMass(f"smallest entry is {p.probs.min()}")
    total = float(sum(sum(sum(r) for r in pl) for pl in p.exact)) if p.exact else float(p.probs.sum())
    if abs(total - 1.0) > eps:
        raise NotNormalized(f"entries sum to {total!r}")


def _marginal(p, keep_axes_order, summed_axis):
    validate_pmf(p)
    if p.exact is not None:
        shape = p.shape
        out = np.zeros([shape[a] for a in keep_axes_order])
        idx = np.ndindex(*out.shape)
        for i, j in idx:
            total = Fraction(0)
            for s in range(shape[summed_axis]):
                key = [0, 0, 0]
                key[keep_axes_order[0]], key[keep_axes_order[1]], key[summed_axis] = i, j, s
                total += p.exact[key[0]][key[1]][key[2]]
            out[i, j] = float(total)
        return out
    return np.transpose(p.probs.sum(axis=summed_axis), axes=_transpose_after_sum(keep_axes_order, summed_axis))


def _transpose_after_sum(keep, summed):
    remaining = [a for a in range(3) if a != summed]
    return [remaining.index(a) for a in keep]


def marginal_yz(p):
    """|Y| x |Z| matrix with entries P_YZ(y, z)."""
    return _marginal(p, (1, 2), 0)


def marginal_yx(p):
    """|Y| x |X| matrix with entries P_YX(y, x)."""
    return _marginal(p, (1, 0), 2)


def swap_xy(p):
    """Exchange the roles of X and Y."""
    exact = None
    if p.exact is not None:
        exact = tuple(tuple(tuple(p.exact[x][y][z] for z in range(p.z_size)) for x in range(p.x_size))
                      for y in range(p.y_size))
    return JointPMF(probs=np.transpose(p.probs, (1, 0, 2)), x_labels=p.y_labels,
                    y_labels=p.x_labels, z_labels=p.z_labels, exact=exact)


def joint_from_marginals(a, c):
    """A joint PMF whose P_YZ is ``a`` and whose P_YX is ``c``.

    Uses X - Y - Z as a Markov chain: P(x, y, z) = P_YX(y, x) P_YZ(y, z) / P_Y(y).
    Rows of ``a`` and ``c`` must share their sums.
    """
    a = np.asarray(a, dtype=float)
    c = np.asarray(c, dtype=float)
    if a.shape[0] != c.shape[0]:
        raise DimensionMismatch("a and c need the same number of rows (|Y|)")
    py = a.sum(axis=1)
    if np.max(np.abs(py - c.sum(axis=1))) > EPS_PMF:
        raise MarginalMismatch("row sums of a and c differ")
    safe = np.where(py > 0, py, 1.0)
    probs = np.einsum("yx,yz->xyz", c, a) / safe[None, :, None]
    return JointPMF(probs=probs)


def pmf_from_dict(data):
    """Parse the JSON PMF schema ``{"x": [...], "y": [...], "z": [...], "p": [[[...]]]}``.

    Entries of ``p`` are numbers or rational strings such as ``"6/100"``.
    String entries are parsed exactly.
    """
    try:
        table = data["p"]
    except (KeyError, TypeError):
        raise ValueError('PMF document needs a "p" table') from None
    if not isinstance(table, list) or not all(isinstance(pl, list) for pl in table):
        raise ValueError('"p" must be nested as [x][y][z]')
    try:
        exact = [[[Fraction(v) for v in row] for row in plane]
                 for plane in table]
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ValueError(f"bad probability entry: {exc}") from None
    sizes = {len(plane) for plane in exact}
    zsizes = {len(row) for plane in exact for row in plane}
    if len(sizes) > 1 or len(zsizes) > 1:
        raise ValueError('"p" is ragged')
    labels = {}
    for key in ("x", "y", "z"):
        if key in data:
            labels[f"{key}_labels"] = [str(s) for s in data[key]]
    pmf = JointPMF.from_exact(exact, **labels) if exact and exact[0] and exact[0][0] else None
    if pmf is None:
        raise EmptyAlphabet("empty probability table")
    return pmf


def pmf_to_dict(p, exact=True):
    if exact and p.exact is not None:
        table = [[[str(v) for v in row] for row in plane] for plane in p.exact]
    else:
        table = p.probs.tolist()
    return {"x": list(p.x_labels), "y": list(p.y_labels), "z": list(p.z_labels), "p": table}
