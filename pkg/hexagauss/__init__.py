"""hexagauss: Clifford-algebra hyperbolic geometry and Delambre-Gauss formulas.

hexagauss models hyperbolic 3- and 4-space in the upper half-space model
with Vahlen matrices over the quaternions, measures quaternion- and
complex-valued half side-lengths of right-angled hexagons, and checks the
generalized Delambre-Gauss formulas numerically on seeded random instances.

Typical usage:
    from hexagauss import generate_scenes, run_verification

    # Verify 100 random augmented hexagons of H^4
    batch = run_verification(generate_scenes("h4", count=100, seed=7))
    print(batch.passed, batch.epsilon_counts())

    # Euler angles of a unit quaternion
    from hexagauss import euler_decompose, parse_multivector
    print(euler_decompose(parse_multivector("0.5 + 0.5*e1 + 0.5*e2 + 0.5*e12")))

Modules:
    clifford: Clifford algebras A_n, involutions, textual form.
    transcend: exp, logarithms, star-twisted cosh/sinh, the (+) composition.
    vahlen: Vahlen matrices and their Moebius action.
    rotations: Euler decomposition and rotations of R^3.
    hypgeo: Points, lines, flags, crosses and half distances in H^4.
    hexagon: Hexagon generators, half side-lengths and the formulas.
    scene: JSON scene files.
    core: Batch generation and verification pipeline.
    renderers: JSON, text and CSV reports.
    cli: Command-line interface.
"""

__version__ = "0.1.0"
__author__ = "hexagauss contributors"
__license__ = "MIT"

from hexagauss.clifford import Multivector, format_multivector, parse_multivector
from hexagauss.core import generate_scenes, run_verification, verify_scene
from hexagauss.hexagon.formulas import verify_dg_h3, verify_dg_h4, verify_dg_h4_oplus
from hexagauss.hexagon.lengths import closure_check, side_half_lengths
from hexagauss.rotations import euler_decompose
from hexagauss.vahlen import VahlenMatrix

__all__ = [
    "Multivector",
    "VahlenMatrix",
    "closure_check",
    "euler_decompose",
    "format_multivector",
    "generate_scenes",
    "parse_multivector",
    "run_verification",
    "side_half_lengths",
    "verify_dg_h3",
    "verify_dg_h4",
    "verify_dg_h4_oplus",
    "verify_scene",
    "__version__",
]
