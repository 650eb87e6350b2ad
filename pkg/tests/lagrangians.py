"""Example Lagrangians shared by the test modules."""

from fundform.parser import parse_expr
from fundform.variational import Lagrangian

J = "(u[1;1,0]*u[2;0,1] - u[1;0,1]*u[2;1,0])"
J_PRIME = "(u[3;1,0]*u[4;0,1] - u[3;0,1]*u[4;1,0])"

TEXTS = {
    "finsler": (1, 2, 1, "u[1;1]^2 / u[2;1]"),
    "curvature": (1, 2, 2, "(u[1;1]*u[2;2] - u[2;1]*u[1;2])^2 / u[1;1]^5"),
    "angle_rate": (1, 2, 2, "(u[1;1]*u[2;2] - u[2;1]*u[1;2]) / u[1;1]^2"),
    "jacobian": (2, 2, 1, J),
    "jacobian_ratio": (2, 4, 1, f"{J}^2 / {J_PRIME}"),
}

NULL = {"angle_rate", "jacobian"}


def lagrangian(name, k=None):
    m, n, k0, text = TEXTS[name]
    return Lagrangian(m, n, k0 if k is None else k, parse_expr(text))


def by_dim(m, k=None):
    return [name for name, (mm, _, kk, _) in TEXTS.items() if mm == m and (k is None or kk == k)]
