"""Compactification charts: closing a plane pair into two spheres.

The shear x = Re z - cot(phi) Im z, y = Im z is a Darboux chart taking the
plane pair to {y = 0} and {x = 0}; each plane closes to a topological sphere
through the slow chart x -> x F(r)/r, F(r) = 1/log(1 + r^2), under which any
negatively-decaying graph function extends smoothly by 0 over the added point.
A bump-modified Liouville form matches the cotangent forms of both spheres
outside a compact set while keeping d(lambda-tilde) = omega everywhere.
"""

import math

import numpy as np

from slaglab import (
    AngleVector,
    DarbouxCoords,
    LawlorNeck,
    PlumbingChart,
    compactified_graph_value,
    compactified_potential,
    sphere_chart,
    sphere_chart_inverse,
    to_darboux,
)
from slaglab.plumbing import bump_h, exterior_derivative_residual

np.set_printoptions(precision=8, suppress=True)

neck = LawlorNeck([1.0, 2.0, 3.0])
chart = PlumbingChart(AngleVector(neck.phis), T=100.0)

print("Darboux images of the two asymptotic planes:")
flat = np.array([1.0, -2.0, 0.5], dtype=complex)
rotated = np.exp(1j * neck.phis) * np.array([0.7, 1.1, -0.4])
print(f"  flat plane point    -> y = {to_darboux(flat, chart).y}")
print(f"  rotated plane point -> x = {to_darboux(rotated, chart).x}")

print("\nsphere chart round trip across 12 decades of radius:")
for r in (0.5, 1.0, 1e3, 1e6):
    x = np.array([r, 0.0, 0.0])
    back = sphere_chart_inverse(sphere_chart(x))
    print(f"  r = {r:8.1e}: relative error = {abs(back[0] - r) / r:.2e}")

print("\nthe compactified inverse-radius graph function (m = 3):")
func = lambda p: float(np.linalg.norm(p)) ** -1
for rt in (0.2, 0.1, 0.05):
    value = compactified_graph_value(func, -1, np.array([rt, 0.0, 0.0]))
    print(f"  r-tilde = {rt:.2f}: f-tilde = {value:.6e}")
print("  (decays to 0 faster than any power of r-tilde)")

print("\nd(lambda-tilde) = omega in all bump regions (finite differences):")
rng = np.random.default_rng(0)
scale = math.sqrt(2 * chart.T)
for label, gap in (("middle", 0.0), ("band", 1.5 * chart.T), ("outer", 3.0 * chart.T)):
    x = rng.standard_normal(3)
    y = rng.standard_normal(3)
    x /= np.linalg.norm(x)
    y /= np.linalg.norm(y)
    base = 0.3 * scale
    coords = DarbouxCoords(x * math.sqrt(abs(gap) + base**2), y * base)
    res = exterior_derivative_residual(coords, chart, step=1e-5)
    print(f"  {label:6s} region: residual = {res:.2e}")

print("\ncompactified potential of the neck:")
sample = neck.point(0.0, np.array([1.0, 0.0, 0.0]))
coords = to_darboux(sample.point, chart)
h = bump_h(coords, chart)
print(f"  interior: f + h = {compactified_potential(sample.potential, h, 'interior', neck.A):.6f}")
print(f"  added point of the flat end:    {compactified_potential(0, 0, 'infty0', neck.A)}")
print(f"  added point of the rotated end: {compactified_potential(0, 0, 'inftyPhi', neck.A):.6f}  (= A)")
