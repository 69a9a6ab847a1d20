"""Network models and their directed Laplacian matrices.

Four regular families are supported: the ring, the r-nearest-neighbor
ring, the 2-D torus and the m-dimensional torus (the torus kind covers
every m >= 2; the ring is kept as its own kind because the 1-D case is
treated separately throughout).

Links are directional: the forward neighbor of a node is weighted
(1 - a) / 2 and the backward neighbor (1 + a) / 2, where a in [0, 1] is
the asymmetric link factor.  a = 0 reproduces the undirected network
exactly, a = 1 is a fully one-directional cycle.  Although links are
directed, every node's in-weights and out-weights sum to the same value
for these families, which is why the Laplacians below have zero column
sums as well as zero row sums.

All values are immutable after construction and every operation is a
pure function of its inputs, so everything here is safe to share across
threads.
"""

from __future__ import annotations

import enum
import math
import re as _re
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, SizeError, TopologyError

DEFAULT_DENSE_CAP = 10_000


class Kind(enum.Enum):
    RING = "ring"
    R_NEAREST_RING = "rnearest"
    TORUS = "torus"


@dataclass(frozen=True)
class NetworkModel:
    """Topology descriptor plus the asymmetric link factor.

    Exactly one of the size fields is meaningful per kind: ``n`` for
    RING, ``n`` and ``r`` for R_NEAREST_RING, ``dims`` for TORUS.
    """

    kind: Kind
    a: float
    n: int | None = None
    r: int | None = None
    dims: tuple[int, ...] | None = None

    @property
    def order(self) -> int:
        """Total node count."""
        if self.kind is Kind.TORUS:
            return math.prod(self.dims)
        return self.n

    @property
    def degree_weight(self) -> float:
        """Diagonal Laplacian entry: 1 (ring), r (r-nearest), m (torus)."""
        if self.kind is Kind.RING:
            return 1.0
        if self.kind is Kind.R_NEAREST_RING:
            return float(self.r)
        return float(len(self.dims))

    @property
    def shape(self) -> tuple[int, ...]:
        """Eigenvalue index space: (n,) for 1-D kinds, dims for tori."""
        if self.kind is Kind.TORUS:
            return self.dims
        return (self.n,)


def ring(n: int, a: float = 0.0) -> NetworkModel:
    return validate(NetworkModel(kind=Kind.RING, a=a, n=n))


def r_nearest_ring(n: int, r: int, a: float = 0.0) -> NetworkModel:
    return validate(NetworkModel(kind=Kind.R_NEAREST_RING, a=a, n=n, r=r))


def torus(dims, a: float = 0.0) -> NetworkModel:
    return validate(NetworkModel(kind=Kind.TORUS, a=a, dims=tuple(dims)))


def validate(model: NetworkModel) -> NetworkModel:
    """Return ``model`` unchanged if all its invariants hold.

    Raises ParameterError naming the violated constraint otherwise.
    """
    a = model.a
    if not (isinstance(a, (int, float)) and math.isfinite(a)):
        raise ParameterError(f"asymmetric factor a must be a finite real, got {a!r}")
    if not 0.0 <= a <= 1.0:
        raise ParameterError(f"asymmetric factor a={a} outside [0, 1]")

    if model.kind is Kind.RING:
        n = model.n
        if not isinstance(n, int) or n < 3:
            raise ParameterError(f"ring needs integer n >= 3, got n={n}")
    elif model.kind is Kind.R_NEAREST_RING:
        n, r = model.n, model.r
        if not isinstance(r, int) or r < 1:
            raise ParameterError(f"r-nearest ring needs integer r >= 1, got r={r}")
        if isinstance(n, int) and n == 2 * r + 1:
            raise ParameterError(
                f"n = 2r + 1 = {n} makes every node adjacent to every other "
                f"(a complete graph); model it densely and use the generic "
                f"pipeline instead"
            )
        if not isinstance(n, int) or n < 2 * r + 2:
            raise ParameterError(
                f"r-nearest ring needs n >= 2r + 2 = {2 * r + 2} so the two "
                f"neighbor arcs stay disjoint, got n={n}"
            )
    elif model.kind is Kind.TORUS:
        dims = model.dims
        if dims is None or len(dims) < 2:
            raise ParameterError(f"torus needs at least 2 dimensions, got dims={dims}")
        for i, k in enumerate(dims):
            if not isinstance(k, int) or k < 3:
                raise ParameterError(f"torus needs every k_i >= 3, got k_{i + 1}={k}")
    else:
        raise ParameterError(f"unknown kind {model.kind!r}")
    return model


@dataclass(frozen=True)
class CirculantRow:
    """First row of a circulant matrix; generates the whole matrix by
    cyclic shifts.  Entries sum to zero (Laplacian row sums)."""

    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float)
        object.__setattr__(self, "entries", entries)

    @property
    def order(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class DenseLaplacian:
    """Materialized Laplacian with node index i mapped to matrix row i.

    Row sums and column sums are both zero, which is what makes the
    consensus iteration average-preserving.
    """

    order: int
    values: np.ndarray


def circulant_row(model: NetworkModel) -> CirculantRow:
    """First Laplacian row for the 1-D families.

    Offset +1 (next index mod n) carries the forward weight (1 - a) / 2,
    offset -1 the backward weight (1 + a) / 2; the Laplacian negates
    both.  Tori are not single circulants, use dense_laplacian.
    """
    validate(model)
    if model.kind is Kind.TORUS:
        raise TopologyError("a torus is not a single circulant; use dense_laplacian")
    n, a = model.n, model.a
    row = np.zeros(n)
    if model.kind is Kind.RING:
        row[0] = 1.0
        row[1] = (-1.0 + a) / 2.0
        row[n - 1] = (-1.0 - a) / 2.0
    else:
        r = model.r
        row[0] = float(r)
        row[1 : r + 1] = (-1.0 + a) / 2.0
        row[n - r : n] = (-1.0 - a) / 2.0
    return CirculantRow(entries=row)


def _ring_row(k: int, a: float) -> np.ndarray:
    row = np.zeros(k)
    row[0] = 1.0
    row[1] = (-1.0 + a) / 2.0
    row[k - 1] = (-1.0 - a) / 2.0
    return row


def _circulant_matrix(row: np.ndarray) -> np.ndarray:
    n = len(row)
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    return row[idx]


def dense_laplacian(model: NetworkModel, cap: int = DEFAULT_DENSE_CAP) -> DenseLaplacian:
    """Materialize the full Laplacian matrix.

    1-D kinds expand their circulant row cyclically.  A torus is the
    Kronecker sum of ring Laplacians, one per dimension, all sharing the
    same asymmetric factor; node indices are mixed-radix with dimension
    1 slowest-varying.
    """
    validate(model)
    order = model.order
    if order > cap:
        raise SizeError(f"order {order} exceeds dense cap {cap}")
    if model.kind is Kind.TORUS:
        mat = np.zeros((1, 1))
        for k in model.dims:
            ring_lap = _circulant_matrix(_ring_row(k, model.a))
            mat = np.kron(mat, np.eye(k)) + np.kron(np.eye(mat.shape[0]), ring_lap)
        return DenseLaplacian(order=order, values=mat)
    row = circulant_row(model)
    return DenseLaplacian(order=order, values=_circulant_matrix(row.entries))


# --- model grammar -----------------------------------------------------------
#
# ring:n=<int>,a=<float>
# rnearest:n=<int>,r=<int>,a=<float>
# torus:dims=<int>x<int>[x<int>...],a=<float>

_DIMS_RE = _re.compile(r"^\d+(x\d+)+$")


def parse_model(text: str) -> NetworkModel:
    """Parse a model specification string into a validated model."""
    head, _, body = text.strip().partition(":")
    head = head.lower()
    fields = {}
    for part in body.split(","):
        if not part:
            continue
        key, eq, value = part.partition("=")
        if not eq:
            raise ParameterError(f"malformed field {part!r} in model spec {text!r}")
        fields[key.strip()] = value.strip()

    def need(key):
        if key not in fields:
            raise ParameterError(f"model spec {text!r} is missing {key}=")
        return fields.pop(key)

    try:
        if head == "ring":
            model = NetworkModel(Kind.RING, n=int(need("n")), a=float(need("a")))
        elif head == "rnearest":
            model = NetworkModel(
                Kind.R_NEAREST_RING, n=int(need("n")), r=int(need("r")), a=float(need("a"))
            )
        elif head == "torus":
            dims_text = need("dims")
            if not _DIMS_RE.match(dims_text):
                raise ParameterError(f"malformed dims {dims_text!r}, expected <int>x<int>[x<int>...]")
            dims = tuple(int(d) for d in dims_text.split("x"))
            model = NetworkModel(Kind.TORUS, dims=dims, a=float(need("a")))
        else:
            raise ParameterError(
                f"unknown model kind {head!r}; expected ring, rnearest or torus"
            )
    except ValueError as exc:
        raise ParameterError(f"bad numeric field in model spec {text!r}: {exc}") from exc
    if fields:
        raise ParameterError(f"unexpected fields {sorted(fields)} in model spec {text!r}")
    return validate(model)


def _format_float(x: float) -> str:
    return repr(float(x))


def format_model(model: NetworkModel) -> str:
    """Inverse of parse_model: format_model(parse_model(s)) round-trips."""
    a = _format_float(model.a)
    if model.kind is Kind.RING:
        return f"ring:n={model.n},a={a}"
    if model.kind is Kind.R_NEAREST_RING:
        return f"rnearest:n={model.n},r={model.r},a={a}"
    dims = "x".join(str(k) for k in model.dims)
    return f"torus:dims={dims},a={a}"
