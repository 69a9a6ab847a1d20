"""Best-constant weight design: consensus parameter, factor and rate.

The canonical route (``design_pipeline``) works on any validated model:
take the spectrum, pick the extremal eigenvalue pair, solve

    |1 - h*lambda_s| = |1 - h*lambda_l|

for the single nonzero real h, and report the convergence factor
gamma = |1 - h*lambda_s| and rate R = 1 - gamma.

A catalog of closed-form expressions covers each topology/parity case
(even/odd ring, even-even/odd-odd torus, all-even/all-odd m-torus,
even/odd r-nearest ring).  The catalog entries are evaluated exactly as
catalogued and then *reconciled* against the pipeline, never silently
corrected: ``closed_form_R`` returns the raw value together with a tag
recording whether it equals the pipeline rate, the pipeline rate minus
one, or neither.  Known quirks of the catalog (literal 0.16
coefficients in the odd-odd torus entry, the squared asymmetry
coefficient in the r-nearest entries being read as a**2) are preserved
as-is so that deviations stay visible.

``minimax_h`` is an independent oracle: it minimizes the worst modulus
max |1 - h*lambda| over all nonzero eigenvalues by ternary search,
which is valid because that objective is a pointwise maximum of convex
functions of h.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError, UnsupportedParityError
from .spectral import (
    ComplexEigenvalue,
    ExtremalPair,
    Spectrum,
    SpectrumSource,
    extremal_pair,
    full_spectrum,
)
from .topology import DEFAULT_DENSE_CAP, Kind, NetworkModel, validate

ASSUMPTION_NOTES = (
    "r-nearest closed forms read the squared asymmetry coefficient as a**2",
    "odd-odd torus closed form keeps its literal 0.16 coefficients",
)


class DesignMethod(enum.Enum):
    PAIR_SOLVE = "PairSolve"
    CLOSED_FORM = "ClosedForm"
    MINIMAX = "Minimax"


class ReconciliationTag(enum.Enum):
    IDENTICAL = "Identical"
    OFFSET_BY_ONE = "OffsetByOne"
    MISMATCH = "Mismatch"


@dataclass(frozen=True)
class ConsensusDesign:
    h: float
    gamma: float
    rate: float
    method: DesignMethod
    extremal: ExtremalPair | None


@dataclass(frozen=True)
class ReconciledRate:
    """A catalog rate value and its relation to the pipeline rate."""

    value: float
    tag: ReconciliationTag
    pipeline_rate: float
    case: str


def _as_complex(lam) -> complex:
    if isinstance(lam, ComplexEigenvalue):
        return lam.value
    return complex(lam)


def solve_h_pair(lambda_s, lambda_l) -> float:
    """Real nonzero solution of |1 - h*l_s| = |1 - h*l_l|.

    Expanding both squared moduli and cancelling the quadratic equation's
    trivial root h = 0 leaves

        h = 2 (Re l_l - Re l_s) / (|l_l|^2 - |l_s|^2),

    which does not exist when the moduli coincide.
    """
    ls = _as_complex(lambda_s)
    ll = _as_complex(lambda_l)
    den = abs(ll) ** 2 - abs(ls) ** 2
    if abs(den) <= 1e-12 * max(1.0, abs(ll) ** 2):
        raise DegenerateError(
            f"|lambda_s| = |lambda_l| (= {abs(ls)!r}); equal-modulus equation has no nonzero solution"
        )
    return 2.0 * (ll.real - ls.real) / den


def design_pipeline(
    model: NetworkModel,
    source: SpectrumSource = SpectrumSource.CLOSED_FORM,
    cap: int = DEFAULT_DENSE_CAP,
) -> ConsensusDesign:
    """Canonical best-constant design: spectrum -> extremal pair -> h.

    This is the reference every closed-form entry is checked against.
    """
    spectrum = full_spectrum(model, source=source, cap=cap)
    pair = extremal_pair(spectrum)
    h = solve_h_pair(pair.lambda_s, pair.lambda_l)
    gamma = abs(1.0 - h * pair.lambda_s.value)
    return ConsensusDesign(
        h=h, gamma=gamma, rate=1.0 - gamma, method=DesignMethod.PAIR_SOLVE, extremal=pair
    )


# --- closed-form catalog ------------------------------------------------------
#
# Case ids: ring-even, ring-odd, torus2-even, torus2-odd, torusN-even,
# torusN-odd, rnearest-even, rnearest-odd.
#
# Torus entries are written against a specific dimension ordering: the
# dimension that carries the slow eigenvalue index is the one with the
# largest side (that side minimizes the nonzero real part), so the 2-D
# entries receive (k_small, k_big) and the N-D entries put the largest
# side first.


def formula_case(model: NetworkModel) -> str:
    validate(model)
    if model.kind is Kind.RING:
        return "ring-even" if model.n % 2 == 0 else "ring-odd"
    if model.kind is Kind.R_NEAREST_RING:
        return "rnearest-even" if model.n % 2 == 0 else "rnearest-odd"
    parities = {k % 2 for k in model.dims}
    if len(parities) > 1:
        raise UnsupportedParityError(
            f"no closed form for mixed-parity torus dims {model.dims}; use design_pipeline"
        )
    even = parities.pop() == 0
    if len(model.dims) == 2:
        return "torus2-even" if even else "torus2-odd"
    return "torusN-even" if even else "torusN-odd"


def _h_ring_even(n: int, a: float) -> float:
    c, s = math.cos(2 * math.pi / n), math.sin(2 * math.pi / n)
    return (2 + 2 * c) / (3 - c * c + 2 * c - a * a * s * s)


def _h_ring_odd(n: int, a: float) -> float:
    c1, s1 = math.cos(math.pi / n), math.sin(math.pi / n)
    c2, s2 = math.cos(2 * math.pi / n), math.sin(2 * math.pi / n)
    return (2 * (c1 + c2)) / (
        -c2 * c2 + 2 * c2 - a * a * s2 * s2 + c1 * c1 + a * a * s1 * s1 + 2 * c1
    )


def _h_torus2_even(k_big: int, a: float) -> float:
    c, s = math.cos(2 * math.pi / k_big), math.sin(2 * math.pi / k_big)
    return (6 + 2 * c) / (15 - c * c + 2 * c - a * a * s * s)


def _h_torus2_odd(k_small: int, k_big: int, a: float) -> float:
    # a is intentionally unused: the entry hard-codes 0.16 literals in
    # the two places the squared asymmetry coefficient would sit
    del a
    c = math.cos(2 * math.pi / k_big)
    s = math.sin(2 * math.pi / k_big)
    c1 = math.cos(math.pi * (k_small - 1) / k_small)
    c2 = math.cos(math.pi * (k_big - 1) / k_big)
    s1 = math.sin(math.pi * (k_small - 1) / k_small)
    s2 = math.sin(math.pi * (k_big - 1) / k_big)
    x = 2 * c1 + c2
    num = -2 * c + 2 * x - 2
    den = 0.16 * s * s - 0.16 * (s1 + s2) ** 2 + c * c - 2 * c - x * x + 4 * x - 3
    return num / den


def _h_torusN_even(k_slow: int, m: int, a: float) -> float:
    c, s = math.cos(2 * math.pi / k_slow), math.sin(2 * math.pi / k_slow)
    return (2 - 2 * c - 4 * m) / (1 - 4 * m * m + c * c - 2 * c + a * a * s * s)


def _h_torusN_odd(dims_slow_first: tuple[int, ...], a: float) -> float:
    k1 = dims_slow_first[0]
    m = len(dims_slow_first)
    c, s = math.cos(2 * math.pi / k1), math.sin(2 * math.pi / k1)
    sum_c = sum(math.cos(math.pi * (k - 1) / k) for k in dims_slow_first)
    sum_s = sum(math.sin(math.pi * (k - 1) / k) for k in dims_slow_first)
    num = 2 - 2 * c - 4 * m
    den = (
        1 + c * c - 2 * c + a * a * s * s - m * m - sum_c * sum_c - a * a * sum_s * sum_s
    )
    return num / den


def _rnearest_terms(n: int, r: int):
    """Shared building blocks: the slow-index Dirichlet ratio S and the
    matching imaginary-part combination C."""
    S = math.sin((2 * r + 1) * math.pi / n) / math.sin(math.pi / n)
    C = 1 / math.tan(math.pi / n) - math.cos((2 * r + 1) * math.pi / n) / math.sin(math.pi / n)
    return S, C


def _h_rnearest_even(n: int, r: int, a: float) -> float:
    S, C = _rnearest_terms(n, r)
    cr = math.cos(math.pi * r)
    num = cr - S
    den = 0.25 * S * S - (r + 0.5) * (S - cr) - 0.25 * cr * cr + 0.25 * a * a * C * C
    if den == 0.0:
        return math.nan if num == 0.0 else math.copysign(math.inf, num)
    return num / den


def _h_rnearest_odd(n: int, r: int, a: float) -> float:
    S, C = _rnearest_terms(n, r)
    half = math.pi * (n - 1) / (2 * n)
    Sp = math.sin((2 * r + 1) * half) / math.sin(half)
    Cp = 1 / math.tan(half) - math.cos((2 * r + 1) * half) / math.sin(half)
    num = Sp - S
    den = (
        0.25 * S * S
        + (r + 0.5) * (S - Sp)
        - 0.25 * Sp * Sp
        + 0.25 * a * a * C * C
        - 0.25 * a * a * Cp * Cp
    )
    if den == 0.0:
        return math.nan if num == 0.0 else math.copysign(math.inf, num)
    return num / den


def _torus_dims_for_formulas(model: NetworkModel) -> tuple[int, ...]:
    """Largest side first, so it carries the slow eigenvalue index."""
    return tuple(sorted(model.dims, reverse=True))


def closed_form_h(model: NetworkModel) -> float:
    """Catalog consensus parameter for the model's parity case.

    Values are the catalog entries verbatim; no case is patched to agree
    with the pipeline.  Raises UnsupportedParityError for mixed-parity
    tori.
    """
    case = formula_case(model)
    a = model.a
    if case == "ring-even":
        return _h_ring_even(model.n, a)
    if case == "ring-odd":
        return _h_ring_odd(model.n, a)
    if case == "rnearest-even":
        return _h_rnearest_even(model.n, model.r, a)
    if case == "rnearest-odd":
        return _h_rnearest_odd(model.n, model.r, a)
    dims = _torus_dims_for_formulas(model)
    if case == "torus2-even":
        return _h_torus2_even(dims[0], a)
    if case == "torus2-odd":
        return _h_torus2_odd(dims[1], dims[0], a)
    if case == "torusN-even":
        return _h_torusN_even(dims[0], len(dims), a)
    return _h_torusN_odd(dims, a)


def _R_ring_even(n: int, a: float) -> float:
    c = math.cos(2 * math.pi / n)
    a2 = a * a
    return (2 - 2 * a2 - 2 * c + 2 * a2 * c) / (3 - a2 + (-1 + a2) * c)


def _R_ring_odd(n: int, a: float) -> float:
    c1 = math.cos(math.pi / n)
    c2 = math.cos(2 * math.pi / n)
    c3 = math.cos(3 * math.pi / n)
    c4 = math.cos(4 * math.pi / n)
    a2, a4 = a * a, a ** 4
    inner = (
        2
        + 4 * a2
        + 2 * a4
        - 2 * (-1 + a4) * c1
        + (-1 + a2) ** 2 * c2
        + 2 * c3
        - 2 * a4 * c3
        + c4
        - 2 * a2 * c4
        + a4 * c4
    )
    return 1 - math.sqrt(inner) / (math.sqrt(2) * (2 - (-1 + a2) * c1 + (-1 + a2) * c2))


def _R_torus2_even(k_big: int, a: float) -> float:
    c, s = math.cos(2 * math.pi / k_big), math.sin(2 * math.pi / k_big)
    a2 = a * a
    return (a2 * s * s + c * c + 6 * c + 9) / (a2 * s * s + c * c - 2 * c - 15)


def _R_torus2_odd(k_small: int, k_big: int, a: float) -> float:
    c1, s1 = math.cos(math.pi / k_small), math.sin(math.pi / k_small)
    c2, s2 = math.cos(math.pi / k_big), math.sin(math.pi / k_big)
    cb, sb = math.cos(2 * math.pi / k_big), math.sin(2 * math.pi / k_big)
    a2 = a * a
    p1 = 4 * (2 * c1 + c2 + cb + 1)
    q1 = (
        -a2 * sb * sb
        + a2 * (s1 + s2) ** 2
        - cb * cb
        + (2 * c1 + c2) ** 2
        + 8 * c1
        + 4 * c2
        + 2 * cb
        + 3
    )
    return math.sqrt(a2 * p1 * p1 * sb * sb / (q1 * q1) + (1 - p1 * s2 * s2 / q1) ** 2)


def _R_torusN_even(k_slow: int, m: int, a: float) -> float:
    c, s = math.cos(2 * math.pi / k_slow), math.sin(2 * math.pi / k_slow)
    a2 = a * a
    num = a2 * s * s + (4 * m - 2) * c + c * c + (1 - 2 * m) ** 2
    den = a2 * s * s + c * c - 2 * c - 4 * m * m + 1
    return num / den


def _R_rnearest_even(n: int, r: int, a: float) -> float:
    S, _ = _rnearest_terms(n, r)
    sp = math.sin(math.pi / n)
    s2p = math.sin(2 * math.pi / n)
    c2p = math.cos(2 * math.pi / n)
    cr = math.cos(math.pi * r)
    crn = math.cos((2 * r + 1) * math.pi / n)
    srn = math.sin((2 * r + 1) * math.pi / n)
    p2 = (a * sp * crn - 0.5 * a * s2p) / (c2p - 1)
    q2 = S - cr
    r2 = sp * srn / (c2p - 1) + r + 0.5
    s_2 = np.float64(
        0.25 * a * a * (2 * sp * crn - s2p) ** 2 / (c2p - 1) ** 2
        + sp * sp * srn * srn / (c2p - 1) ** 2
        + (r + 0.5) * (cr - srn / sp)
        - 0.25 * cr * cr
    )
    # s_2 vanishes at isolated parameter points; IEEE semantics keep the
    # value reportable instead of raising
    with np.errstate(divide="ignore", invalid="ignore"):
        inner = (p2 * q2 / s_2) ** 2 + r2 * q2 / s_2 + 1
        return float(1 - np.sqrt(inner))


def _R_rnearest_odd(n: int, r: int, a: float) -> float:
    S, _ = _rnearest_terms(n, r)
    half = math.pi * (n - 1) / (2 * n)
    sp = math.sin(math.pi / n)
    s2p = math.sin(2 * math.pi / n)
    c2p = math.cos(2 * math.pi / n)
    cp = math.cos(math.pi / n)
    chn = math.cos(math.pi / (2 * n))
    srn = math.sin((2 * r + 1) * math.pi / n)
    crn = math.cos((2 * r + 1) * math.pi / n)
    shn = math.sin((2 * r + 1) * half)
    chn2 = math.cos((2 * r + 1) * half)
    p3 = (-a * sp * crn + 0.5 * a * s2p) / (c2p - 1)
    q3 = -S + shn / chn
    r3 = -sp * srn / (c2p - 1) - r - 0.5
    s_3 = np.float64(
        -0.25 * a * a * (2 * chn * chn2 - sp) ** 2 / (cp + 1) ** 2
        + 0.25 * a * a * (2 * sp * crn - s2p) ** 2 / (c2p - 1) ** 2
        - chn * chn * shn * shn / (cp + 1) ** 2
        + sp * sp * srn * srn / (c2p - 1) ** 2
        + (r + 0.5) * (shn / chn - S)
    )
    with np.errstate(divide="ignore", invalid="ignore"):
        inner = (p3 * q3 / s_3) ** 2 + r3 * q3 / s_3 + 1
        return float(1 - np.sqrt(inner))


_RECONCILE_TOL = 1e-9


def _reconcile(printed: float, pipeline_rate: float, case: str) -> ReconciledRate:
    if math.isnan(printed) or math.isinf(printed):
        tag = ReconciliationTag.MISMATCH
    elif abs(printed - pipeline_rate) <= _RECONCILE_TOL:
        tag = ReconciliationTag.IDENTICAL
    elif abs(printed - (pipeline_rate - 1.0)) <= _RECONCILE_TOL:
        tag = ReconciliationTag.OFFSET_BY_ONE
    else:
        tag = ReconciliationTag.MISMATCH
    return ReconciledRate(value=printed, tag=tag, pipeline_rate=pipeline_rate, case=case)


def closed_form_R(model: NetworkModel, cap: int = DEFAULT_DENSE_CAP) -> ReconciledRate:
    """Catalog rate value plus its reconciliation against the pipeline.

    The all-odd N-torus has no catalogued rate expression; its value is
    derived numerically from the all-odd consensus parameter and the
    slow eigenvalue, and reconciled like every other case.
    """
    case = formula_case(model)
    a = model.a
    if case == "ring-even":
        printed = _R_ring_even(model.n, a)
    elif case == "ring-odd":
        printed = _R_ring_odd(model.n, a)
    elif case == "rnearest-even":
        printed = _R_rnearest_even(model.n, model.r, a)
    elif case == "rnearest-odd":
        printed = _R_rnearest_odd(model.n, model.r, a)
    else:
        dims = _torus_dims_for_formulas(model)
        if case == "torus2-even":
            printed = _R_torus2_even(dims[0], a)
        elif case == "torus2-odd":
            printed = _R_torus2_odd(dims[1], dims[0], a)
        elif case == "torusN-even":
            printed = _R_torusN_even(dims[0], len(dims), a)
        else:
            h = _h_torusN_odd(dims, a)
            pair = extremal_pair(full_spectrum(model, cap=cap))
            printed = 1.0 - abs(1.0 - h * pair.lambda_s.value)
    pipeline_rate = design_pipeline(model, cap=cap).rate
    return _reconcile(printed, pipeline_rate, case)


def closed_design(model: NetworkModel, cap: int = DEFAULT_DENSE_CAP) -> ConsensusDesign:
    """Design built from the catalog h, measured on the slow mode.

    gamma is |1 - h*lambda_s| with the canonical extremal pair, so a
    deviating catalog entry shows up as a gamma unlike the pipeline's.
    """
    h = closed_form_h(model)
    pair = extremal_pair(full_spectrum(model, cap=cap))
    gamma = abs(1.0 - h * pair.lambda_s.value)
    return ConsensusDesign(
        h=h, gamma=gamma, rate=1.0 - gamma, method=DesignMethod.CLOSED_FORM, extremal=pair
    )


def minimax_h(
    spectrum: Spectrum, tol: float = 1e-12, max_iter: int = 200
) -> ConsensusDesign:
    """Minimize the worst contraction modulus over all nonzero eigenvalues.

    f(h) = max |1 - h*lambda| is convex (a pointwise maximum of moduli
    of affine functions of h), so ternary search on [0, 2 / max Re]
    finds its global minimum; beyond that bracket the largest-real-part
    eigenvalue alone already forces f >= 1.
    """
    values = spectrum.values
    if len(values) < 2:
        raise DegenerateError("spectrum has no nonzero eigenvalue")
    nz = values[1:]
    order = np.lexsort((nz.imag, nz.real))
    sorted_nz = nz[order]
    gaps = np.abs(np.diff(sorted_nz))
    if len(nz) > 1 and not np.any(gaps > 1e-12):
        raise DegenerateError("need at least two distinct nonzero eigenvalues")

    def f(h: float) -> float:
        return float(np.max(np.abs(1.0 - h * nz)))

    lo, hi = 0.0, 2.0 / float(np.max(nz.real))
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if f(m1) < f(m2):
            hi = m2
        else:
            lo = m1
    h_star = 0.5 * (lo + hi)
    gamma = f(h_star)
    try:
        pair = extremal_pair(spectrum)
    except DegenerateError:
        pair = None
    return ConsensusDesign(
        h=h_star, gamma=gamma, rate=1.0 - gamma, method=DesignMethod.MINIMAX, extremal=pair
    )


def design_export_dict(
    model: NetworkModel,
    design: ConsensusDesign,
    reconciliation: ReconciledRate | None = None,
) -> dict:
    """JSON-ready summary including the catalog caveats."""
    from .topology import format_model

    def ev_dict(ev: ComplexEigenvalue | None):
        if ev is None:
            return None
        return {"index": list(ev.index), "re": ev.re, "im": ev.im}

    rec = None
    if reconciliation is not None:
        rec = {
            "value": reconciliation.value,
            "tag": reconciliation.tag.value,
            "pipeline_rate": reconciliation.pipeline_rate,
            "case": reconciliation.case,
        }
    return {
        "model": format_model(model),
        "h": design.h,
        "gamma": design.gamma,
        "rate": design.rate,
        "method": design.method.value,
        "lambda_s": ev_dict(design.extremal.lambda_s if design.extremal else None),
        "lambda_l": ev_dict(design.extremal.lambda_l if design.extremal else None),
        "reconciliation": rec,
        "assumptions": list(ASSUMPTION_NOTES),
    }
