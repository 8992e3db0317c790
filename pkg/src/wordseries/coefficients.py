"""Scalar coefficients in the two supported arithmetic modes.

``"exact"`` coefficients are Gaussian rationals (elements of sympy's ``QQ_I``
domain); ``"float"`` coefficients are Python ``complex`` numbers.  Containers
keep one mode throughout and refuse to mix them silently.

Note that ``QQ_I`` elements do not compare equal to Python ints
(``QQ_I(0) == 0`` is False), so zero tests go through :func:`is_zero`.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import sympy
from sympy.parsing.sympy_parser import (implicit_multiplication, parse_expr,
                                        rationalize, standard_transformations)
from sympy.polys.domains import QQ, QQ_I

from .errors import ModeMismatchError

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

_TRANSFORMS = standard_transformations + (implicit_multiplication, rationalize)

GaussianRational = type(QQ_I(0, 0))


def is_exact(c) -> bool:
    return isinstance(c, GaussianRational)


def mode_of(c) -> str:
    return EXACT if is_exact(c) else FLOAT


def gauss(re=0, im=0):
    """Build an exact Gaussian rational from rational parts.

    Accepts ints, :class:`fractions.Fraction`, strings such as ``"3/4"`` and
    gmpy2 ``mpq`` values.
    """
    return QQ_I(_rational(re), _rational(im))


def _rational(x):
    if isinstance(x, str):
        x = Fraction(x)
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, int):
        return QQ(x)
    if isinstance(x, (Fraction, Rational)):
        return QQ(int(x.numerator), int(x.denominator))
    if isinstance(x, float):
        raise ModeMismatchError(f"float {x!r} cannot enter exact arithmetic")
    return QQ.convert(x)


def parse_gauss(text) -> GaussianRational:
    """Parse a Gaussian rational literal like ``"1/2 - 3/4*I"`` or ``"2i"``."""
    if is_exact(text):
        return text
    if isinstance(text, (int, Fraction)):
        return gauss(text)
    if isinstance(text, complex) or isinstance(text, float):
        raise ModeMismatchError(f"{text!r} is a float; exact literal required")
    s = str(text).strip().replace("j", "I").replace("i", "I")
    try:
        expr = parse_expr(s, transformations=_TRANSFORMS, evaluate=True)
    except (SyntaxError, TypeError, sympy.SympifyError) as exc:
        raise ValueError(f"{text!r} is not a Gaussian rational") from exc
    expr = sympy.nsimplify(expr, rational=True)
    re, im = expr.as_real_imag()
    if not (re.is_Rational and im.is_Rational):
        raise ValueError(f"{text!r} is not a Gaussian rational")
    return QQ_I(QQ(int(re.p), int(re.q)), QQ(int(im.p), int(im.q)))


def to_complex(c) -> complex:
    if is_exact(c):
        return complex(float(c.x), float(c.y))
    return complex(c)


def coerce(x, mode: str):
    """Convert a scalar (int, Fraction, Gaussian rational, complex) into ``mode``."""
    if mode == EXACT:
        if is_exact(x):
            return x
        if isinstance(x, (int, Fraction)):
            return gauss(x)
        raise ModeMismatchError(f"cannot convert {x!r} to exact mode")
    if mode == FLOAT:
        return to_complex(x)
    raise ValueError(f"unknown mode {mode!r}")


def zero(mode: str):
    return QQ_I(0, 0) if mode == EXACT else 0j


def one(mode: str):
    return QQ_I(1, 0) if mode == EXACT else 1 + 0j


def is_zero(c) -> bool:
    return not c


def rational_parts(c) -> tuple[int, int, int, int]:
    """``(num_re, den_re, num_im, den_im)`` of an exact coefficient."""
    return (int(c.x.numerator), int(c.x.denominator),
            int(c.y.numerator), int(c.y.denominator))


def from_rational_parts(num_re, den_re, num_im, den_im):
    return QQ_I(QQ(int(num_re), int(den_re)), QQ(int(num_im), int(den_im)))


def format_coeff(c) -> str:
    if is_exact(c):
        return str(c)
    return f"{c.real:.16g}{c.imag:+.16g}j"
