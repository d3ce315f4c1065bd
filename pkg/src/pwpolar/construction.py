"""Reliability score construction.

Implements the beta-expansion family (PW and its higher-order / extended
generalisations) plus the two channel-dependent baselines: Gaussian
approximation of mean-LLR evolution and the exact BEC Bhattacharyya
recursion. All methods emit a :class:`~pwpolar.core.WeightTable` whose larger
entries mark more reliable sub-channels; GA stores mean LLRs directly and BEC
stores negated erasure parameters so the shared convention holds.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .core import WeightTable

__all__ = [
    "PwParams",
    "HpwParams",
    "EpwTerm",
    "GaParams",
    "BecParams",
    "DEFAULT_PW_BETA",
    "DEFAULT_HPW_PARAMS",
    "DEFAULT_EPW_TERMS",
    "pw_weight",
    "hpw_weight",
    "epw_weight",
    "pw_family_table",
    "ga_phi",
    "ga_phi_inv",
    "ga_table",
    "bec_table",
    "GaUnderflowWarning",
    "MethodSpec",
    "parse_method",
]

DEFAULT_PW_BETA = 2.0 ** 0.25


@dataclass(frozen=True)
class PwParams:
    beta: float = DEFAULT_PW_BETA

    def __post_init__(self):
        if not self.beta > 1.0:
            raise ValueError("beta must exceed 1")


@dataclass(frozen=True)
class HpwParams:
    """Higher-order weights: base beta^(1/4^xi) per order xi, scaled per order."""

    beta: float = DEFAULT_PW_BETA
    orders: tuple[int, ...] = (0, 1)
    order_weights: tuple[float, ...] = (1.0, 0.25)

    def __post_init__(self):
        if not self.beta > 1.0:
            raise ValueError("beta must exceed 1")
        if len(self.orders) == 0:
            raise ValueError("orders must be non-empty")
        if len(self.order_weights) != len(self.orders):
            raise ValueError("one weight per order required")


@dataclass(frozen=True)
class EpwTerm:
    """One (factor, base) summand, optionally gated by an index bit.

    A term with ``breaking_bit`` c contributes only for indices whose bit c is
    set, which destroys the half-sequence ordering symmetry within aligned
    blocks of 2^(c+1).
    """

    factor: float
    base: float
    breaking_bit: int | None = None

    def __post_init__(self):
        if not self.base > 0.0:
            raise ValueError("base must be positive")
        if self.breaking_bit is not None and self.breaking_bit < 0:
            raise ValueError("breaking bit must be non-negative")


DEFAULT_HPW_PARAMS = HpwParams()

DEFAULT_EPW_TERMS: tuple[EpwTerm, ...] = (
    EpwTerm(1.0, 1.1892),
    EpwTerm(0.2210, 0.9889),
    EpwTerm(-0.0371, 0.5759, breaking_bit=8),
    EpwTerm(-0.0470, 0.4433, breaking_bit=7),
)


@dataclass(frozen=True)
class GaParams:
    """Design Es/N0 (dB) seeding the mean-LLR recursion."""

    design_snr_db: float

    def __post_init__(self):
        if not np.isfinite(self.design_snr_db):
            raise ValueError("design SNR must be finite")


@dataclass(frozen=True)
class BecParams:
    epsilon: float

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError("erasure probability must lie in [0, 1]")


def _check_index(i: int, n: int) -> None:
    if n < 0:
        raise ValueError("width must be non-negative")
    if not (0 <= i < (1 << n)):
        raise ValueError(f"index {i} out of range for width {n}")


def pw_weight(i: int, n: int, params: PwParams = PwParams()) -> float:
    """Beta-expansion weight: sum of beta^j over the set bits j of i."""
    _check_index(i, n)
    total = 0.0
    for j in range(n):
        if (i >> j) & 1:
            total += params.beta ** j
    return total


def hpw_weight(i: int, n: int, params: HpwParams = DEFAULT_HPW_PARAMS) -> float:
    """Higher-order weight: each set bit contributes every order's base power."""
    _check_index(i, n)
    total = 0.0
    for j in range(n):
        if (i >> j) & 1:
            for w, xi in zip(params.order_weights, params.orders):
                total += w * params.beta ** (j / 4.0 ** xi)
    return total


def epw_weight(i: int, n: int, terms=DEFAULT_EPW_TERMS) -> float:
    """Extended weight: per-bit sum of all terms active for index i.

    A term gated by breaking bit c is evaluated on i itself: it contributes to
    every set bit's summand, but only when bit c of i is 1.
    """
    _check_index(i, n)
    if len(terms) == 0:
        raise ValueError("at least one term required")
    total = 0.0
    for j in range(n):
        if (i >> j) & 1:
            for term in terms:
                if term.breaking_bit is not None and not (i >> term.breaking_bit) & 1:
                    continue
                total += term.factor * term.base ** j
    return total


def _bit_matrix(n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    return ((idx[:, None] >> np.arange(n)[None, :]) & 1).astype(np.float64)


def pw_family_table(method: "MethodSpec", n: int) -> WeightTable:
    """Evaluate a PW-family descriptor over all 2^n indices."""
    if method.kind not in ("pw", "hpw", "epw"):
        raise ValueError(f"{method.kind} is not a PW-family method")
    if n < 0:
        raise ValueError("width must be non-negative")
    bits = _bit_matrix(n)
    j = np.arange(n, dtype=np.float64)
    if method.kind == "pw":
        weights = bits @ (method.params.beta ** j)
    elif method.kind == "hpw":
        p = method.params
        per_bit = np.zeros(n, dtype=np.float64)
        for w, xi in zip(p.order_weights, p.orders):
            per_bit += w * p.beta ** (j / 4.0 ** xi)
        weights = bits @ per_bit
    else:
        idx = np.arange(1 << n, dtype=np.int64)
        weights = np.zeros(1 << n, dtype=np.float64)
        for term in method.params:
            contrib = bits @ (term.factor * term.base ** j)
            if term.breaking_bit is not None:
                gate = ((idx >> term.breaking_bit) & 1).astype(np.float64)
                contrib = contrib * gate
            weights += contrib
    return WeightTable(n=n, weights=weights)


class GaUnderflowWarning(UserWarning):
    """Mean-LLR recursion clamped a non-finite or non-positive mean to zero."""


_GA_SEG_SPLIT = 10.0
# exp(-0.4527 x^0.86 + 0.0218) on (0, 10]; sqrt(pi/x) exp(-x/4) (1 - 10/(7x)) beyond.
# The low segment slightly exceeds 1 below x ~ 0.0294; the inverse accepts
# targets up to exp(0.0218) so the formula stays invertible there.
_GA_A, _GA_B, _GA_C = -0.4527, 0.86, 0.0218
_PHI_LOG_AT_SPLIT = _GA_A * _GA_SEG_SPLIT ** _GA_B + _GA_C
_PHI_MAX = float(np.exp(_GA_C))


def _phi_log(x: np.ndarray) -> np.ndarray:
    """log phi(x) for x > 0, evaluated without underflow for large x."""
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    low = x <= _GA_SEG_SPLIT
    out[low] = _GA_A * x[low] ** _GA_B + _GA_C
    xh = x[~low]
    out[~low] = 0.5 * (np.log(np.pi) - np.log(xh)) - xh / 4.0 + np.log1p(-10.0 / (7.0 * xh))
    return out


def ga_phi(x) -> np.ndarray | float:
    """Two-segment approximation of the check-node degradation function.

    phi(0) = 1 by definition; negative input is a domain error. The canonical
    low-segment constants overshoot 1 marginally for x below ~0.03, which is
    harmless for ordering purposes and kept for fidelity to the standard form.
    """
    arr = np.asarray(x, dtype=np.float64)
    if np.any(arr < 0):
        raise ValueError("phi is defined for non-negative input")
    out = np.ones_like(arr)
    pos = arr > 0
    out[pos] = np.exp(_phi_log(arr[pos]))
    if np.isscalar(x) or arr.ndim == 0:
        return float(out)
    return out


def _phi_log_inv(ylog: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Invert log phi by bisection to ``tol`` absolute in x.

    Targets inside the small overlap band created by the segment seam at
    x = 10 resolve to the x <= 10 root.
    """
    ylog = np.asarray(ylog, dtype=np.float64)
    out = np.empty_like(ylog)
    low_branch = ylog >= _PHI_LOG_AT_SPLIT

    if np.any(low_branch):
        target = ylog[low_branch]
        lo = np.zeros_like(target)
        hi = np.full_like(target, _GA_SEG_SPLIT)
        for _ in range(64):
            mid = 0.5 * (lo + hi)
            too_high = (_GA_A * mid ** _GA_B + _GA_C) > target
            lo = np.where(too_high, mid, lo)
            hi = np.where(too_high, hi, mid)
            if np.max(hi - lo) < tol:
                break
        out[low_branch] = 0.5 * (lo + hi)

    if np.any(~low_branch):
        target = ylog[~low_branch]
        lo = np.full_like(target, _GA_SEG_SPLIT)
        # -x/4 dominates, so x = -4*target is already past the root.
        hi = np.maximum(20.0, -4.0 * target)
        for _ in range(96):
            mid = 0.5 * (lo + hi)
            too_high = _phi_log(mid) > target
            lo = np.where(too_high, mid, lo)
            hi = np.where(too_high, hi, mid)
            if np.max(hi - lo) < tol:
                break
        out[~low_branch] = 0.5 * (lo + hi)
    return out


def ga_phi_inv(y, tol: float = 1e-10) -> np.ndarray | float:
    """Inverse of the two-segment formula by bisection to ``tol`` absolute."""
    arr = np.asarray(y, dtype=np.float64)
    if np.any(arr <= 0) or np.any(arr > _PHI_MAX):
        raise ValueError(f"phi inverse is defined on (0, {_PHI_MAX:.6f}]")
    out = _phi_log_inv(np.log(arr), tol=tol)
    if np.isscalar(y) or arr.ndim == 0:
        return float(out)
    return out


def ga_table(n: int, params: GaParams) -> WeightTable:
    """Mean-LLR evolution under the polar transform.

    The root mean is 2/sigma^2 with sigma the per-dimension noise deviation at
    the design Es/N0. At each split the bit-0 child degrades through
    phi^{-1}(1 - (1 - phi(m))^2) and the bit-1 child doubles; the split for an
    index's most significant bit is applied first. Weights are the final mean
    LLRs (a monotone reliability proxy).
    """
    if n < 0:
        raise ValueError("width must be non-negative")
    # root mean 2/sigma^2 = 4 * 10^(EsN0/10) under the unit-symbol-energy channel
    with np.errstate(over="ignore"):
        root = float(4.0 * np.power(10.0, params.design_snr_db / 10.0))
    clamped = False
    if root <= 0.0 or not np.isfinite(root):
        root = 0.0
        clamped = True
    means = np.array([root], dtype=np.float64)
    for _ in range(n):
        positive = means > 0
        minus = np.zeros_like(means)
        if np.any(positive):
            p_log = _phi_log(means[positive])
            y_log = p_log + np.log(2.0 - np.exp(np.minimum(p_log, 0.0)))
            minus[positive] = _phi_log_inv(y_log)
        nxt = np.empty(2 * means.size, dtype=np.float64)
        nxt[0::2] = minus
        nxt[1::2] = 2.0 * means
        bad = ~np.isfinite(nxt) | (nxt < 0)
        if np.any(bad):
            nxt[bad] = 0.0
            clamped = True
        means = nxt
    if clamped:
        warnings.warn(
            "mean-LLR recursion clamped non-finite means to zero",
            GaUnderflowWarning,
            stacklevel=2,
        )
    return WeightTable(n=n, weights=means)


def bec_table(n: int, params: BecParams) -> WeightTable:
    """Exact Bhattacharyya recursion Z- = 2Z - Z^2, Z+ = Z^2 from Z = epsilon.

    Weights are -Z so that larger means more reliable.
    """
    if n < 0:
        raise ValueError("width must be non-negative")
    z = np.array([params.epsilon], dtype=np.float64)
    for _ in range(n):
        nxt = np.empty(2 * z.size, dtype=np.float64)
        nxt[0::2] = 2.0 * z - z * z
        nxt[1::2] = z * z
        z = nxt
    return WeightTable(n=n, weights=-z)


@dataclass(frozen=True)
class MethodSpec:
    """Parsed construction descriptor; ``params`` type depends on ``kind``."""

    kind: str
    params: object

    def table(self, n: int) -> WeightTable:
        if self.kind in ("pw", "hpw", "epw"):
            return pw_family_table(self, n)
        if self.kind == "ga":
            return ga_table(n, self.params)
        if self.kind == "bec":
            return bec_table(n, self.params)
        raise ValueError(f"unknown method kind {self.kind!r}")

    @property
    def canonical(self) -> str:
        if self.kind == "pw":
            return f"pw:beta={self.params.beta:.6g}"
        if self.kind == "hpw":
            p = self.params
            orders = "+".join(str(o) for o in p.orders)
            weights = "+".join(f"{w:.6g}" for w in p.order_weights)
            return f"hpw:beta={p.beta:.6g},orders={orders},weights={weights}"
        if self.kind == "epw":
            terms = []
            for t in self.params:
                part = f"{t.factor:.6g},{t.base:.6g}"
                if t.breaking_bit is not None:
                    part += f",{t.breaking_bit}"
                terms.append(part)
            return "epw:terms=" + ";".join(terms)
        if self.kind == "ga":
            return f"ga:snr={self.params.design_snr_db:.6g}"
        return f"bec:eps={self.params.epsilon:.6g}"


def _parse_fields(body: str) -> dict[str, str]:
    fields: dict[str, str] = {}
    for part in body.split(","):
        if not part:
            continue
        if "=" not in part:
            raise ValueError(f"malformed descriptor field {part!r}")
        key, value = part.split("=", 1)
        fields[key.strip()] = value.strip()
    return fields


def parse_method(text: str) -> MethodSpec:
    """Parse a construction descriptor.

    Grammar: ``pw[:beta=<f>]``, ``hpw[:beta=<f>,orders=<i+i+..>,weights=<f+f+..>]``,
    ``epw[:terms=<factor,base[,bit]>;...]``, ``ga:snr=<f>``, ``bec:eps=<f>``.
    Bare ``pw``/``hpw``/``epw`` select the shipped defaults.
    """
    text = text.strip()
    kind, _, body = text.partition(":")
    kind = kind.strip().lower()
    if kind == "pw":
        fields = _parse_fields(body)
        beta = float(fields.pop("beta", DEFAULT_PW_BETA))
        if fields:
            raise ValueError(f"unknown pw fields: {sorted(fields)}")
        return MethodSpec("pw", PwParams(beta=beta))
    if kind == "hpw":
        fields = _parse_fields(body)
        beta = float(fields.pop("beta", DEFAULT_PW_BETA))
        orders = tuple(int(v) for v in fields.pop("orders", "0+1").split("+"))
        weights = tuple(float(v) for v in fields.pop("weights", "1+0.25").split("+"))
        if fields:
            raise ValueError(f"unknown hpw fields: {sorted(fields)}")
        return MethodSpec("hpw", HpwParams(beta=beta, orders=orders, order_weights=weights))
    if kind == "epw":
        if not body:
            return MethodSpec("epw", DEFAULT_EPW_TERMS)
        if not body.startswith("terms="):
            raise ValueError("epw descriptor requires terms=")
        terms = []
        for chunk in body[len("terms=") :].split(";"):
            parts = [p.strip() for p in chunk.split(",")]
            if len(parts) not in (2, 3) or not all(parts):
                raise ValueError(f"malformed epw term {chunk!r}")
            bit = int(parts[2]) if len(parts) == 3 else None
            terms.append(EpwTerm(float(parts[0]), float(parts[1]), breaking_bit=bit))
        return MethodSpec("epw", tuple(terms))
    if kind == "ga":
        fields = _parse_fields(body)
        if "snr" not in fields:
            raise ValueError("ga descriptor requires snr=")
        snr = float(fields.pop("snr"))
        if fields:
            raise ValueError(f"unknown ga fields: {sorted(fields)}")
        return MethodSpec("ga", GaParams(design_snr_db=snr))
    if kind == "bec":
        fields = _parse_fields(body)
        if "eps" not in fields:
            raise ValueError("bec descriptor requires eps=")
        eps = float(fields.pop("eps"))
        if fields:
            raise ValueError(f"unknown bec fields: {sorted(fields)}")
        return MethodSpec("bec", BecParams(epsilon=eps))
    raise ValueError(f"unknown construction method {kind!r}")
