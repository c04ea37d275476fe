"""
Generalized trigonometry for curvature kappa in {-1, 0, +1}
S, C, T, CT and their inverses, plus the addition-formula identity suite
"""

import logging
import math
from enum import IntEnum
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from config import EPS_DOM
from spaceform.errors import DomainError, UsageError

logger = logging.getLogger(__name__)

# inverse-trig clamping band used when a call does not pass eps_dom
_domain_tolerance = EPS_DOM


def set_domain_tolerance(eps_dom: float) -> None:
    """Override the default clamping band for AS_kappa and AC_kappa"""
    global _domain_tolerance
    if not math.isfinite(eps_dom) or eps_dom < 0.0:
        raise DomainError(f"domain tolerance must be a finite non-negative number, got {eps_dom!r}")
    _domain_tolerance = float(eps_dom)


def domain_tolerance() -> float:
    return _domain_tolerance


class Kappa(IntEnum):
    """Sectional curvature of the model surface"""
    HYPERBOLIC = -1
    EUCLIDEAN = 0
    SPHERICAL = 1


def to_kappa(value) -> Kappa:
    """Parse a curvature given as Kappa, int or numeric string"""
    if isinstance(value, Kappa):
        return value
    if isinstance(value, bool):
        raise DomainError(f"curvature must be -1, 0 or 1, got {value!r}")
    try:
        as_float = float(value)
    except (TypeError, ValueError):
        raise DomainError(f"curvature must be -1, 0 or 1, got {value!r}")
    if as_float not in (-1.0, 0.0, 1.0):
        raise DomainError(f"curvature must be -1, 0 or 1, got {value!r}")
    return Kappa(int(as_float))


def _prepare(name: str, t) -> np.ndarray:
    arr = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name}: non-finite argument {t!r}")
    return arr


def _finish(result):
    if np.ndim(result) == 0:
        return float(result)
    return result


def _clamp(name: str, arr: np.ndarray, low: float, high: float, eps_dom: float) -> np.ndarray:
    outside = (arr < low - eps_dom) | (arr > high + eps_dom)
    if np.any(outside):
        offending = np.atleast_1d(arr)[np.atleast_1d(outside)][0]
        raise DomainError(f"{name}: argument {offending!r} outside [{low}, {high}] by more than {eps_dom}")
    return np.clip(arr, low, high)


def s_kappa(k, t):
    """S_kappa: t, sin t or sinh t"""
    k = to_kappa(k)
    arr = _prepare("s_kappa", t)
    if k == Kappa.SPHERICAL:
        return _finish(np.sin(arr))
    if k == Kappa.HYPERBOLIC:
        return _finish(np.sinh(arr))
    return _finish(arr.copy())


def c_kappa(k, t):
    """C_kappa: cos t or cosh t; the flat branch is the constant 1"""
    k = to_kappa(k)
    arr = _prepare("c_kappa", t)
    if k == Kappa.SPHERICAL:
        return _finish(np.cos(arr))
    if k == Kappa.HYPERBOLIC:
        return _finish(np.cosh(arr))
    return _finish(np.ones_like(arr))


def t_kappa(k, t):
    """T_kappa: t, tan t or tanh t"""
    k = to_kappa(k)
    arr = _prepare("t_kappa", t)
    if k == Kappa.SPHERICAL:
        if np.any(np.cos(arr) == 0.0):
            raise DomainError(f"t_kappa: tan undefined at {t!r}")
        return _finish(np.tan(arr))
    if k == Kappa.HYPERBOLIC:
        return _finish(np.tanh(arr))
    return _finish(arr.copy())


def ct_kappa(k, t):
    """CT_kappa: t, cot t or coth t"""
    k = to_kappa(k)
    arr = _prepare("ct_kappa", t)
    if k == Kappa.EUCLIDEAN:
        return _finish(arr.copy())
    if k == Kappa.SPHERICAL:
        sin_t = np.sin(arr)
        if np.any(sin_t == 0.0):
            raise DomainError(f"ct_kappa: cot undefined at {t!r}")
        return _finish(np.cos(arr) / sin_t)
    if np.any(arr == 0.0):
        raise DomainError(f"ct_kappa: coth undefined at {t!r}")
    return _finish(1.0 / np.tanh(arr))


def as_kappa(k, t, eps_dom: Optional[float] = None):
    """AS_kappa: t, arcsin t or arcsinh t"""
    k = to_kappa(k)
    eps_dom = _domain_tolerance if eps_dom is None else eps_dom
    arr = _prepare("as_kappa", t)
    if k == Kappa.SPHERICAL:
        return _finish(np.arcsin(_clamp("as_kappa", arr, -1.0, 1.0, eps_dom)))
    if k == Kappa.HYPERBOLIC:
        return _finish(np.arcsinh(arr))
    return _finish(arr.copy())


def ac_kappa(k, t, eps_dom: Optional[float] = None):
    """AC_kappa: t, arccos t or arccosh t"""
    k = to_kappa(k)
    eps_dom = _domain_tolerance if eps_dom is None else eps_dom
    arr = _prepare("ac_kappa", t)
    if k == Kappa.SPHERICAL:
        return _finish(np.arccos(_clamp("ac_kappa", arr, -1.0, 1.0, eps_dom)))
    if k == Kappa.HYPERBOLIC:
        return _finish(np.arccosh(_clamp("ac_kappa", arr, 1.0, np.inf, eps_dom)))
    return _finish(arr.copy())


def at_kappa(k, t):
    """Inverse of T_kappa: t, arctan t or arctanh t"""
    k = to_kappa(k)
    arr = _prepare("at_kappa", t)
    if k == Kappa.SPHERICAL:
        return _finish(np.arctan(arr))
    if k == Kappa.HYPERBOLIC:
        if np.any(np.abs(arr) >= 1.0):
            raise DomainError(f"at_kappa: arctanh needs |t| < 1, got {t!r}")
        return _finish(np.arctanh(arr))
    return _finish(arr.copy())


# Addition-formula identities, each a list of (lhs, rhs) equalities

Sides = List[Tuple[object, object]]


def _a1(k, a, b) -> Sides:
    return [(c_kappa(k, -a), c_kappa(k, a)), (s_kappa(k, -a), -s_kappa(k, a))]


def _a2(k, a, b) -> Sides:
    return [(s_kappa(k, a + b), s_kappa(k, a) * c_kappa(k, b) + c_kappa(k, a) * s_kappa(k, b))]


def _a3(k, a, b) -> Sides:
    return [(s_kappa(k, a - b), s_kappa(k, a) * c_kappa(k, b) - c_kappa(k, a) * s_kappa(k, b))]


def _a4(k, a, b) -> Sides:
    return [(s_kappa(k, 2 * a), 2 * s_kappa(k, a) * c_kappa(k, a))]


def _a5(k, a, b) -> Sides:
    return [(c_kappa(k, a) ** 2, 1 - k * s_kappa(k, a) ** 2)]


def _a6(k, a, b) -> Sides:
    return [(c_kappa(k, a + b), c_kappa(k, a) * c_kappa(k, b) - k * s_kappa(k, a) * s_kappa(k, b))]


def _a7(k, a, b) -> Sides:
    return [(c_kappa(k, a - b), c_kappa(k, a) * c_kappa(k, b) + k * s_kappa(k, a) * s_kappa(k, b))]


def _a8(k, a, b) -> Sides:
    lhs = c_kappa(k, 2 * a)
    c, s = c_kappa(k, a), s_kappa(k, a)
    return [(lhs, c ** 2 - k * s ** 2), (lhs, 1 - 2 * k * s ** 2), (lhs, 2 * c ** 2 - 1)]


def _a9(k, a, b) -> Sides:
    return [(1 - c_kappa(k, a), 2 * k * s_kappa(k, a / 2) ** 2)]


def _a10(k, a, b) -> Sides:
    return [(1 + c_kappa(k, a), 2 * c_kappa(k, a / 2) ** 2)]


def _a11(k, a, b) -> Sides:
    return [(c_kappa(k, a + b) + c_kappa(k, a - b), 2 * c_kappa(k, a) * c_kappa(k, b))]


def _a12(k, a, b) -> Sides:
    return [(c_kappa(k, a + b) - c_kappa(k, a - b), -2 * k * s_kappa(k, a) * s_kappa(k, b))]


def _a13(k, a, b) -> Sides:
    return [(2 * s_kappa(k, (a + b) / 2) * c_kappa(k, (a - b) / 2), s_kappa(k, a) + s_kappa(k, b))]


def _a14(k, a, b) -> Sides:
    return [(2 * c_kappa(k, (a + b) / 2) * s_kappa(k, (a - b) / 2), s_kappa(k, a) - s_kappa(k, b))]


def _a15(k, a, b) -> Sides:
    return [(2 * c_kappa(k, (a + b) / 2) * c_kappa(k, (a - b) / 2), c_kappa(k, a) + c_kappa(k, b))]


def _a16(k, a, b) -> Sides:
    return [(-2 * k * s_kappa(k, (a + b) / 2) * s_kappa(k, (a - b) / 2), c_kappa(k, a) - c_kappa(k, b))]


IDENTITIES: Dict[str, Callable] = {
    "A-1": _a1, "A-2": _a2, "A-3": _a3, "A-4": _a4,
    "A-5": _a5, "A-6": _a6, "A-7": _a7, "A-8": _a8,
    "A-9": _a9, "A-10": _a10, "A-11": _a11, "A-12": _a12,
    "A-13": _a13, "A-14": _a14, "A-15": _a15, "A-16": _a16,
}

IDENTITY_TAGS = tuple(IDENTITIES)


def identity_sides(tag: str, k, a, b=0.0) -> Sides:
    """Evaluate both sides of every equality stated by an identity"""
    if tag not in IDENTITIES:
        raise UsageError(f"unknown identity tag {tag!r}; expected one of {', '.join(IDENTITY_TAGS)}")
    k = to_kappa(k)
    if k == Kappa.EUCLIDEAN:
        raise UsageError(f"identity {tag} is stated for kappa = +1 or -1 only")
    a = _prepare("identity_sides", a)
    b = _prepare("identity_sides", b)
    return IDENTITIES[tag](int(k), a, b)


def identity_residual(tag: str, k, a, b=0.0):
    """LHS - RHS of the named identity; the largest in magnitude when it states several equalities"""
    diffs = np.array([np.asarray(lhs, dtype=float) - np.asarray(rhs, dtype=float)
                      for lhs, rhs in identity_sides(tag, k, a, b)])
    pick = np.asarray(np.argmax(np.abs(diffs), axis=0))
    return _finish(np.take_along_axis(diffs, pick[np.newaxis, ...], axis=0)[0])


def identity_scale(tag: str, k, a, b=0.0):
    """max(1, |lhs|, |rhs|) over the identity's equalities, used to make residuals relative"""
    sides = identity_sides(tag, k, a, b)
    magnitudes = [np.maximum(np.abs(np.asarray(lhs, dtype=float)), np.abs(np.asarray(rhs, dtype=float)))
                  for lhs, rhs in sides]
    return _finish(np.maximum(1.0, np.max(np.array(magnitudes), axis=0)))
