"""Change of independent variable between the rod span and the stretched
coordinate in which the twist equations have uniform coefficients.

The rod spans xi in [0, L] with stiffness profile F(xi).  The map

    x(xi) = integral_0^xi dt / F(t)

sends it to x in [0, l], l = x(L); a rod of uniform reference stiffness
and length l buckles at the same torque.  F > 0 makes the map strictly
increasing, so the inverse is well defined.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .shape import ShapeFunction, integrate


def physical_length(shape: ShapeFunction) -> float:
    """Equivalent uniform-rod length l = integral_0^L dxi / F(xi)."""
    return integrate(
        lambda t: 1.0 / shape.evaluate(t),
        0.0,
        shape.L,
        breakpoints=shape.panel_edges(),
    )


@dataclass(frozen=True)
class CoordinateMap:
    """Cached, exact-per-panel form of the map x(xi) and its inverse.

    The cumulative integral of 1/F has a closed form on every smooth
    panel of the three supported profile kinds (constant, constant
    segment, linear segment), so node values are exact up to roundoff.
    """

    shape: ShapeFunction
    nodes_xi: np.ndarray
    nodes_x: np.ndarray

    @classmethod
    def build(cls, shape: ShapeFunction) -> "CoordinateMap":
        edges = shape.panel_edges()
        increments = [_panel_increment(shape, a, b) for a, b in zip(edges[:-1], edges[1:])]
        xs = np.concatenate([[0.0], np.cumsum(increments)])
        return cls(shape=shape, nodes_xi=edges, nodes_x=xs)

    @property
    def l(self) -> float:
        """Image of the full span: x(L)."""
        return float(self.nodes_x[-1])

    @property
    def L(self) -> float:
        return self.shape.L

    def xi_to_x(self, xi: float) -> float:
        """Forward map; exact at panel nodes, closed form within panels."""
        if not 0.0 <= xi <= self.L:
            raise ValueError(f"coordinate {xi} outside [0, {self.L}]")
        i = int(np.searchsorted(self.nodes_xi, xi, side="right")) - 1
        i = min(max(i, 0), self.nodes_xi.size - 2)
        return float(self.nodes_x[i]) + _panel_increment(self.shape, self.nodes_xi[i], xi)

    def x_to_xi(self, x: float) -> float:
        """Inverse map via bracketed root search within the located panel."""
        if not 0.0 <= x <= self.l * (1.0 + 1e-12):
            raise ValueError(f"coordinate {x} outside [0, {self.l}]")
        x = min(x, self.l)
        i = int(np.searchsorted(self.nodes_x, x, side="right")) - 1
        i = min(max(i, 0), self.nodes_x.size - 2)
        a, b = self.nodes_xi[i], self.nodes_xi[i + 1]
        fa = self.nodes_x[i] - x
        if fa == 0.0:
            return float(a)
        if self.nodes_x[i + 1] - x == 0.0:
            return float(b)
        return float(
            brentq(
                lambda t: self.xi_to_x(t) - x,
                a,
                b,
                xtol=1e-15 * max(self.L, 1.0),
                rtol=8.9e-16,
            )
        )

    def pull_back_mode(
        self, xi_grid: np.ndarray, Y: np.ndarray, Z: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Re-index a rod-span mode sample onto the stretched coordinate.

        Displacements are invariant under the change of variable (the map
        only relabels the abscissa), so the values pass through unchanged
        and the grid becomes the image of the input grid.
        """
        xi_grid = np.asarray(xi_grid, dtype=float)
        xs = np.array([self.xi_to_x(t) for t in xi_grid])
        return xs, np.array(Y, dtype=float, copy=True), np.array(Z, dtype=float, copy=True)


def _panel_increment(shape: ShapeFunction, a: float, xi: float) -> float:
    """integral_a^xi dt / F(t) within one smooth panel, in closed form."""
    if xi <= a:
        return 0.0
    if shape.kind in ("constant", "piecewise"):
        # F is constant on the panel; sample strictly inside it.
        value = shape.evaluate(0.5 * (a + min(xi, shape.L)))
        return (xi - a) / value
    # sampled profile: F linear between grid nodes
    grid = np.linspace(0.0, shape.L, shape.values.size)
    h = grid[1] - grid[0]
    i = min(int(a / h + 0.5), shape.values.size - 2)
    f0, f1 = shape.values[i], shape.values[i + 1]
    slope = (f1 - f0) / h
    fa = f0 + slope * (a - grid[i])
    fx = f0 + slope * (xi - grid[i])
    if abs(f1 - f0) <= 1e-14 * max(abs(f0), abs(f1)):
        return (xi - a) / fa
    return float(np.log(fx / fa) / slope)
