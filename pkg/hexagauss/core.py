"""Batch generation and verification pipeline for hexagauss.

This module ties the pieces together in two stages:
    1. Generate: draw seeded instances of a space into a scene file
    2. Verify: recompute every half side-length from the geometry and check
       the formulas, the side orthogonality and the closure of each instance

Example:
    >>> from hexagauss.core import generate_scenes, run_verification
    >>> batch = run_verification(generate_scenes("h4", count=3, seed=7))
    >>> batch.passed
    True
"""

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Literal

from hexagauss.config import resolve_tolerance
from hexagauss.hexagon.formulas import (
    VerificationReport,
    verify_dg_h3,
    verify_dg_h4,
    verify_dg_h4_oplus,
)
from hexagauss.hexagon.generators import (
    Hexagon,
    HexagonH3,
    instance_rng,
    random_augmented_hexagon_h4,
    random_hexagon_h3,
    random_planar_hexagon,
    side_residuals,
)
from hexagauss.hexagon.lengths import BranchChoice, closure_check, side_half_lengths
from hexagauss.hexagon.triangles import (
    planar_hexagon_report,
    random_hyperbolic_vertices,
    random_spherical_vertices,
    triangle_report,
)
from hexagauss.scene import SPACES, Scene, SceneFile

logger = logging.getLogger(__name__)


def generate_scene(space: str, seed: int, index: int = 0) -> Scene:
    """Draw instance ``index`` of a batch.

    Args:
        space: One of ``h3``, ``h4``, ``triangle-spherical``,
            ``triangle-hyperbolic`` or ``planar-hexagon``.
        seed: Batch seed.
        index: Instance number; each index gets its own random stream.

    Raises:
        ValueError: If the space is unknown.
        GeneratorError: If no valid instance was found.
    """
    rng = instance_rng(seed, index)
    if space == "h3":
        return Scene(space, seed, index, hexagon=random_hexagon_h3(rng))
    if space == "h4":
        return Scene(space, seed, index, hexagon=random_augmented_hexagon_h4(rng))
    if space == "planar-hexagon":
        planar = random_planar_hexagon(rng)
        return Scene(space, seed, index, hexagon=planar.hexagon, lengths=planar.lengths)
    if space == "triangle-spherical":
        points = random_spherical_vertices(rng)
        vertices = tuple(tuple(map(float, p)) for p in points)
        return Scene(space, seed, index, vertices=vertices)
    if space == "triangle-hyperbolic":
        zs = random_hyperbolic_vertices(rng)
        return Scene(space, seed, index, vertices=tuple((z.real, z.imag) for z in zs))
    raise ValueError(f"Unknown space {space!r}; expected one of {', '.join(SPACES)}")


def generate_scenes(space: str, count: int, seed: int) -> SceneFile:
    """Generate ``count`` instances of ``space`` from one batch seed.

    Raises:
        ValueError: If ``count`` is not positive or the space is unknown.
    """
    if count < 1:
        raise ValueError(f"Count must be at least 1, got {count}")
    scenes = tuple(generate_scene(space, seed, i) for i in range(count))
    logger.info(f"Generated {count} {space} instance(s) from seed {seed}")
    return SceneFile(seed, space, scenes)


@dataclass(frozen=True)
class InstanceResult:
    """Verification outcome of one scene.

    Attributes:
        index: Scene index.
        space: Scene space.
        reports: One report per checked family of identities.
        invariants: Residuals of the geometric invariants (side
            orthogonality, closure).
        tolerance: Threshold used.
        error: Message when the scene could not be verified at all.
    """

    index: int
    space: str
    reports: tuple[VerificationReport, ...]
    invariants: dict[str, float]
    tolerance: float
    error: str | None = None

    def failing(self) -> list[str]:
        """Names of the failed invariants and identities."""
        names = [k for k, v in self.invariants.items() if not v <= self.tolerance]
        for report in self.reports:
            names.extend(f"{report.space}:{name}" for name in report.failing())
        if self.error is not None:
            names.append("error")
        return names

    @property
    def passed(self) -> bool:
        """True if every invariant and identity holds."""
        return self.error is None and not self.failing()

    @property
    def epsilon(self) -> int | None:
        """Sign found by the first report, if any."""
        return self.reports[0].epsilon if self.reports else None

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready result."""
        return {
            "index": self.index,
            "space": self.space,
            "pass": self.passed,
            "epsilon": self.epsilon,
            "invariants": dict(self.invariants),
            "reports": [r.to_dict() for r in self.reports],
            "failing": self.failing(),
            "error": self.error,
        }


def _orthogonality(hexagon: Hexagon) -> dict[str, float]:
    return {
        f"orthogonality:S{n + 1}-S{(n + 1) % 6 + 1}": r
        for n, r in enumerate(side_residuals(hexagon))
    }


def _hexagon_reports(
    hexagon: Hexagon, tol: float, branch_choice: BranchChoice
) -> tuple[tuple[VerificationReport, ...], dict[str, float]]:
    closure = closure_check(hexagon, strict=False)
    lengths = side_half_lengths(hexagon, branch_choice, strict=False)
    invariants = {"closure": closure.residual}
    if isinstance(hexagon, HexagonH3):
        return (verify_dg_h3(lengths, tol),), invariants
    return (verify_dg_h4(lengths, tol), verify_dg_h4_oplus(lengths, tol)), invariants


def verify_scene(
    scene: Scene,
    tolerance: float | None = None,
    branch_choice: BranchChoice = "principal",
) -> InstanceResult:
    """Verify one scene.

    Hexagon scenes are checked for side orthogonality and closure before
    their half side-lengths are measured (non-strictly, so a broken input
    yields residuals rather than an exception) and the formulas evaluated.

    Args:
        scene: Scene to check.
        tolerance: Residual threshold; defaults to :func:`resolve_tolerance`.
        branch_choice: Branch assignment for the half side-lengths.

    Returns:
        The instance result; geometry failures are recorded, not raised, and
        keep the invariants measured before the failure.
    """
    tol = resolve_tolerance(tolerance)
    invariants: dict[str, float] = {}
    try:
        if scene.space in ("triangle-spherical", "triangle-hyperbolic"):
            kind: Literal["spherical", "hyperbolic"] = (
                "spherical" if scene.space == "triangle-spherical" else "hyperbolic"
            )
            report = triangle_report(kind, scene.triangle(), tol)
            return InstanceResult(scene.index, scene.space, (report,), {}, tol)

        assert scene.hexagon is not None
        invariants.update(_orthogonality(scene.hexagon))
        reports, extra = _hexagon_reports(scene.hexagon, tol, branch_choice)
        invariants.update(extra)
        if scene.space == "planar-hexagon":
            reports = (*reports, planar_hexagon_report(scene.planar(), tol))
        return InstanceResult(scene.index, scene.space, reports, invariants, tol)
    except ValueError as e:
        logger.warning(f"Scene {scene.index} could not be verified: {e}")
        return InstanceResult(
            scene.index, scene.space, (), invariants, tol, error=str(e)
        )


@dataclass(frozen=True)
class BatchReport:
    """Results of a verification batch, sorted by instance index."""

    space: str
    seed: int
    tolerance: float
    instances: tuple[InstanceResult, ...]
    rng: str = field(default="")

    @property
    def passed(self) -> bool:
        """True if every instance passed."""
        return all(r.passed for r in self.instances)

    @property
    def failures(self) -> list[InstanceResult]:
        """Instances that failed."""
        return [r for r in self.instances if not r.passed]

    def max_residuals(self) -> dict[str, float]:
        """Largest residual of every formula over the batch."""
        worst: dict[str, float] = {}
        for result in self.instances:
            for report in result.reports:
                for name, value in {**report.formulas, **report.entries}.items():
                    key = f"{report.space}:{name}"
                    worst[key] = max(worst.get(key, 0.0), value)
            for name, value in result.invariants.items():
                key = name.split(":")[0]
                worst[key] = max(worst.get(key, 0.0), value)
        return worst

    def epsilon_counts(self) -> dict[int, int]:
        """How often each sign was found."""
        counts = Counter(r.epsilon for r in self.instances if r.epsilon is not None)
        return dict(sorted(counts.items()))

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready report."""
        return {
            "rng": self.rng,
            "space": self.space,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "count": len(self.instances),
            "pass": self.passed,
            "failures": [r.index for r in self.failures],
            "epsilon_counts": {str(k): v for k, v in self.epsilon_counts().items()},
            "max_residuals": self.max_residuals(),
            "instances": [r.to_dict() for r in self.instances],
        }


def _verify_one(args: tuple[Scene, float, BranchChoice]) -> InstanceResult:
    return verify_scene(*args)


def run_verification(
    scene_file: SceneFile,
    tolerance: float | None = None,
    branch_choice: BranchChoice = "principal",
    workers: int = 1,
) -> BatchReport:
    """Verify every scene of a file.

    Args:
        scene_file: Scenes to check.
        tolerance: Residual threshold; defaults to :func:`resolve_tolerance`.
        branch_choice: Branch assignment for the half side-lengths.
        workers: Number of worker processes; 1 verifies in this process.

    Returns:
        The batch report, instances sorted by index.
    """
    tol = resolve_tolerance(tolerance)
    jobs = [(scene, tol, branch_choice) for scene in scene_file.scenes]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_verify_one, jobs))
    else:
        results = [_verify_one(job) for job in jobs]
    results.sort(key=lambda r: r.index)

    batch = BatchReport(
        scene_file.space, scene_file.seed, tol, tuple(results), scene_file.rng
    )
    logger.info(
        f"Verified {len(results)} {scene_file.space} instance(s): "
        f"{len(results) - len(batch.failures)} passed, {len(batch.failures)} failed"
    )
    for failure in batch.failures:
        names = ", ".join(failure.failing())
        logger.warning(f"Instance {failure.index} failed: {names}")
    return batch
