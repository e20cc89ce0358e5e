"""Right-angled hexagons and the Delambre-Gauss formulas.

This package contains:
    - generators: seeded random hexagons of H^3, augmented hexagons of H^4
      and convex hexagons of a plane
    - lengths: half side-lengths, side isometries and closure
    - formulas: the H^4 and H^3 formulas with sign detection
    - triangles: classical spherical, hyperbolic and planar-hexagon formulas

Example:
    from hexagauss.hexagon.generators import random_augmented_hexagon_h4
    from hexagauss.hexagon.lengths import side_half_lengths
    from hexagauss.hexagon.formulas import verify_dg_h4

    hexagon = random_augmented_hexagon_h4(7)
    report = verify_dg_h4(side_half_lengths(hexagon))
    print(report.epsilon, report.passed)
"""
