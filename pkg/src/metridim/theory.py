"""Closed-form predictions for the metric dimension of G(n, p).

All logarithms are natural.  The asymptotic statements this module encodes
need finite-n stand-ins, fixed here:

* "``d**i`` is small relative to ``n``" means ``d**i <= n / ln n``; the regime
  is dense (``i = 0``) when ``d > n / ln n``.
* The boundary between "``c`` bounded" and "``c`` growing" is ``c <= C0``
  (``DEFAULT_C0 = 10``).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from .errors import AmbiguousDiameter, DegenerateP, DomainError

DEFAULT_C0 = 10.0
DEFAULT_EPSILON = 0.5

# Inputs within this relative distance of 1/k are treated as exactly 1/k.
_RECIPROCAL_SNAP = 1e-9


@dataclass(frozen=True)
class Regime:
    n: int
    p: float
    d: float
    i: int
    c: float
    q: float
    eta: float
    dense: bool
    # 1 - q, kept separately because q rounds to 1.0 once exp(-c) is tiny
    separation: float = float("nan")

    def __post_init__(self):
        if math.isnan(self.separation):
            object.__setattr__(self, "separation", 1.0 - self.q)

    def to_dict(self) -> dict:
        return asdict(self)


def sparse_q(c: float) -> float:
    """Probability that one landmark fails to separate a random pair."""
    t = math.exp(-c)
    return t * t + (1.0 - t) ** 2


def sparse_separation(c: float) -> float:
    """``1 - sparse_q(c) = 2 e^-c (1 - e^-c)`` without cancellation."""
    t = math.exp(-c)
    return 2.0 * t * (1.0 - t)


def dense_q(p: float) -> float:
    return p * p + (1.0 - p) ** 2


def log_inv_q(separation: float) -> float:
    """``ln(1/q)`` from ``1 - q``."""
    return -math.log1p(-separation)


def compute_regime(n: int, p: float) -> Regime:
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    if not 0.0 < p < 1.0:
        raise DegenerateP(f"p must lie strictly between 0 and 1, got {p}")
    d = p * (n - 1)
    threshold = n / math.log(n)
    if d > threshold:
        return Regime(n, p, d, 0, d / n, dense_q(p), 0.0, True, 2.0 * p * (1.0 - p))
    if d <= 1.0:
        raise DegenerateP(f"expected degree {d} <= 1 leaves no usable layer index")
    i = 0
    while d ** (i + 1) <= threshold:
        i += 1
    c = d ** (i + 1) / n
    eta = i * math.log(d) / math.log(n)
    return Regime(n, p, d, i, c, sparse_q(c), eta, False, sparse_separation(c))


@dataclass(frozen=True)
class Prediction:
    case_label: str
    beta_lower: float
    beta_upper: float
    suen_threshold_size: int
    predicted_diameter: int | None
    # both case formulas when c sits near the (i)/(iii) boundary
    alternatives: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def collision_estimate(n: int, separation: float) -> float:
    """``2 ln n / ln(1/q)``: where the expected number of unresolved pairs
    for a random landmark set drops to about one."""
    return 2.0 * math.log(n) / log_inv_q(separation)


def layered_bounds(r: Regime) -> tuple[float, float]:
    """Lower and upper bounds ``eta * B`` and ``B`` with
    ``B = ln n / (d**i / n + exp(-c))``."""
    base = math.log(r.n) / (r.d ** r.i / r.n + math.exp(-r.c))
    return r.eta * base, base


def predict_beta(r: Regime, c0: float = DEFAULT_C0, epsilon: float = DEFAULT_EPSILON,
                 margin: float = 0.0) -> Prediction:
    ln_n = math.log(r.n)
    if r.c <= c0:
        label = "i"
    elif math.exp(r.c) <= ln_n / (3.0 * math.log(ln_n)):
        label = "ii"
    else:
        label = "iii"
    if label == "iii":
        lower, upper = layered_bounds(r)
    else:
        lower = upper = collision_estimate(r.n, r.separation)
    alternatives = {}
    if c0 / 2 <= r.c <= 2 * c0:
        lo3, hi3 = layered_bounds(r)
        alternatives = {"i": collision_estimate(r.n, r.separation), "iii": [lo3, hi3]}
    try:
        diam = predict_diameter(r.n, r.p, margin)
    except (AmbiguousDiameter, DomainError):
        diam = None
    return Prediction(label, lower, upper, suen_lower_size(r, epsilon), diam, alternatives)


def _reciprocal_floor(x: float) -> int:
    inv = 1.0 / x
    k = round(inv)
    if k >= 1 and abs(inv - k) <= _RECIPROCAL_SNAP * inv:
        return k
    return math.floor(inv)


def _check_unit(x: float) -> None:
    if not 0.0 < x <= 1.0:
        raise DomainError(f"x must lie in (0, 1], got {x}")


def zigzag_f(x: float) -> float:
    """``1 - x * floor(1/x)``: predicted exponent of beta for ``p = n**(x-1)``."""
    _check_unit(x)
    k = _reciprocal_floor(x)
    if abs(k * x - 1.0) <= _RECIPROCAL_SNAP:
        return 0.0
    return 1.0 - x * k


def ratio_bound(x: float) -> float:
    """``1 / (x * floor(1/x))``: limiting ratio of the upper to lower bound."""
    _check_unit(x)
    k = _reciprocal_floor(x)
    if abs(k * x - 1.0) <= _RECIPROCAL_SNAP:
        return 1.0
    return 1.0 / (x * k)


def predict_diameter(n: int, p: float, margin: float = 0.0) -> int:
    """Smallest ``D`` with ``d**D / n >= 2 ln n * (1 + margin)``.

    Raises ``AmbiguousDiameter`` when ``d**(D-1) / n`` still exceeds
    ``2 ln n * (1 - margin)``, i.e. the lower condition does not hold.
    """
    if not 0.0 < p < 1.0:
        raise DegenerateP(f"p must lie strictly between 0 and 1, got {p}")
    if margin < 0:
        raise DomainError("margin must be non-negative")
    d = p * (n - 1)
    if d < 2:
        raise DomainError(f"expected degree {d} < 2")
    # compare logarithms: d**D overflows for large d
    ln_d, ln_n = math.log(d), math.log(n)
    ln_target = math.log(2.0 * ln_n)
    D = 1
    while D * ln_d - ln_n < ln_target + math.log1p(margin):
        D += 1
    if margin >= 1.0 or (D - 1) * ln_d - ln_n > ln_target + math.log1p(-margin):
        raise AmbiguousDiameter(D - 1, D)
    return D


def suen_lower_size(r: Regime, epsilon: float) -> int:
    """``floor((2 - eps) ln n / ln(1/q))``: set size below which random
    landmark sets are expected to leave pairs unresolved."""
    if not 0.0 < epsilon < 2.0:
        raise DomainError(f"epsilon must lie in (0, 2), got {epsilon}")
    if not 0.0 < r.separation < 1.0:
        raise DomainError(f"q must lie in (0, 1), got {r.q}")
    return math.floor((2.0 - epsilon) * math.log(r.n) / log_inv_q(r.separation))


def upper_sample_size(n: int, q: float, epsilon: float = DEFAULT_EPSILON,
                      separation: float | None = None) -> int:
    """``ceil((2 + eps) ln n / ln(1/q))``: random sets this large resolve
    each given pair except with probability about ``n**-2``.

    Pass ``separation = 1 - q`` when it is known more precisely than ``q``.
    """
    if epsilon <= 0:
        raise DomainError("epsilon must be positive")
    if separation is None:
        separation = 1.0 - q
    if not 0.0 < separation < 1.0:
        raise DomainError(f"q must lie in (0, 1), got {q}")
    return math.ceil((2.0 + epsilon) * math.log(n) / log_inv_q(separation))


def babai_size(n: int) -> int:
    """``ceil(3 ln n / ln 2)`` highest-degree vertices."""
    return math.ceil(3.0 * math.log2(n))


@dataclass(frozen=True)
class ChernoffTolerance:
    epsilon: float
    in_range: bool  # the tail bound is only valid for 0 < epsilon < 3/2


def chernoff_tolerance(expectation: float, failure_prob: float) -> ChernoffTolerance:
    """Smallest ``eps`` with ``2 exp(-eps**2 E / 3) <= failure_prob``."""
    if expectation <= 0:
        raise DomainError("expectation must be positive")
    if not 0.0 < failure_prob < 1.0:
        raise DomainError("failure_prob must lie in (0, 1)")
    eps = math.sqrt(3.0 * math.log(2.0 / failure_prob) / expectation)
    return ChernoffTolerance(eps, eps < 1.5)
