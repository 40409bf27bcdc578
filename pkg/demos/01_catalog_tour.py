"""Tour of the equation catalog.

Lists every cataloged second-order ODE with its default parameters,
singular points and working grid, and evaluates the coefficient ratios
q/p and r/p that drive the whole construction.
"""

from wsurf import DEFAULT_PARAMS, EQUATION_IDS, coefficient_ratios, get_equation

print("cataloged equations")
print("-" * 72)
for eq_id in EQUATION_IDS:
    ode = get_equation(eq_id)
    grid = ode.default_domain
    sing = ", ".join(str(s) for s in ode.singularities) or "none"
    print(f"{eq_id:16s} params={DEFAULT_PARAMS[eq_id]}")
    print(f"{'':16s} singularities: {sing}")
    print(f"{'':16s} grid: {grid.kind} {grid.ranges} @ {grid.resolution}, "
          f"anchored at {grid.base_point}")

print()
print("coefficient ratios at z = 2i")
print("-" * 72)
for eq_id in EQUATION_IDS:
    ode = get_equation(eq_id)
    qp, rp = coefficient_ratios(ode, 2j)
    print(f"{eq_id:16s} q/p = {qp:+.6f}   r/p = {rp:+.6f}")
