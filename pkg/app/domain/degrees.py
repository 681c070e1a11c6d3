from __future__ import annotations

import math

from app.core.errors import DegreeOutOfRange

# Acceptance tolerance for human-entered degrees.
INPUT_TOLERANCE = 1e-6
# Tolerance for states and profiles built inside the kernel.
STATE_TOLERANCE = 1e-9

ONE = complex(1.0, 0.0)


def as_degree(value: complex | float) -> complex:
    degree = complex(value)
    if not (math.isfinite(degree.real) and math.isfinite(degree.imag)):
        msg = f"Degree must be finite, got {value!r}"
        raise DegreeOutOfRange(msg)
    return degree


def modulus_squared(degree: complex) -> float:
    return degree.real * degree.real + degree.imag * degree.imag


def ensure_in_range(degree: complex, tolerance: float = INPUT_TOLERANCE) -> complex:
    degree = as_degree(degree)
    if modulus_squared(degree) > 1.0 + tolerance:
        msg = f"|{render_degree(degree)}|^2 = {modulus_squared(degree):.12g} exceeds 1"
        raise DegreeOutOfRange(msg)
    return degree


def render_real(value: float) -> str:
    # repr is the shortest text that reads back to the same double.
    text = repr(float(value))
    if text.endswith(".0"):
        return text[:-2]
    return text


def render_degree(degree: complex) -> str:
    re, im = degree.real, degree.imag
    if im == 0:
        return render_real(re)
    if re == 0:
        return f"{render_real(im)}i"
    sign = "-" if im < 0 else "+"
    return f"{render_real(re)}{sign}{render_real(abs(im))}i"


def render_value(value: float) -> str:
    return f"{value:.12g}"
