#!/usr/bin/env python3
"""Walk the whole solution catalogue and print each entry's spectral data.

For every key: the inertia eigenvalue alpha, the advection frequency zeta,
the drift eigenvalue lambda (exact rational where available), the rotation
frequency omega = lambda - zeta, and the stationarity classification.
"""

from __future__ import annotations

from eulerwaves import catalogue as cat


def main() -> None:
    header = (f"{'key':18s} {'dim':>3s} {'alpha':>12s} {'zeta':>6s} "
              f"{'lambda':>10s} {'omega':>10s}  classification")
    print(header)
    print("-" * len(header))
    for key in cat.catalogue_keys():
        sol = cat.build(key)
        sp = sol.spectral
        lam = str(sp.lam_exact) if sp.lam_exact is not None else f"{sp.lam:.6f}"
        omega = (str(sp.omega_exact) if sp.omega_exact is not None
                 else f"{sp.omega:.6f}")
        print(f"{key:18s} {sol.dim:3d} {sp.alpha:12.8f} {sp.zeta:6.1f} "
              f"{lam:>10s} {omega:>10s}  {sp.classification}")
        period = sol.period
        if period is not None:
            print(f"{'':18s}     rotation period 2*pi/|omega| = {period:.6f}")
    print()
    print("Try `euler-waves describe KEY` for parameter schemas, or")
    print("`euler-waves verify KEY` for the full certification battery.")


if __name__ == "__main__":
    main()
