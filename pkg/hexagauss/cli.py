"""Command-line interface for hexagauss.

Generates seeded instances, verifies the Delambre-Gauss formulas on them and
decomposes unit quaternions into Euler angles.

Usage:
    hexagauss gen --space h4 --seed 7 --count 10 -o scenes.json
    hexagauss verify scenes.json --format text
    hexagauss gen --space h3 --seed 1 | hexagauss verify
    hexagauss verify --space triangle-spherical --count 1000 --seed 3
    hexagauss euler 0.5 0.5 0.5 0.5
"""

import argparse
import logging
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

from hexagauss import __version__
from hexagauss.clifford import Multivector, norm
from hexagauss.config import (
    DEFAULT_TOLERANCE,
    MAX_TOLERANCE,
    TOLERANCE_ENV_VAR,
    resolve_tolerance,
)
from hexagauss.core import generate_scenes, run_verification
from hexagauss.hexagon.generators import GeneratorError
from hexagauss.renderers.report import (
    ReportFormat,
    render_batch,
    render_csv,
    render_euler,
)
from hexagauss.rotations import euler_decompose
from hexagauss.scene import (
    SPACES,
    SceneError,
    SceneFile,
    dumps_scene_file,
    loads_scene_file,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERRUPTED = 130

MAX_SEED = 2**64


@dataclass(frozen=True)
class BatchOptions:
    """Validated space, count and seed of a generated batch.

    Attributes:
        space: Instance space, one of :data:`hexagauss.scene.SPACES`.
        count: Number of instances (at least 1).
        seed: Batch seed in [0, 2**64).
    """

    space: str
    count: int = 1
    seed: int = 0

    def __post_init__(self) -> None:
        """Check the option ranges."""
        if self.space not in SPACES:
            choices = ", ".join(SPACES)
            raise ValueError(f"Unknown space {self.space!r}, expected {choices}")
        if self.count < 1:
            raise ValueError(f"--count must be at least 1, got {self.count}")
        if not 0 <= self.seed < MAX_SEED:
            raise ValueError(f"--seed must be in [0, 2**64), got {self.seed}")


@dataclass(frozen=True)
class RunConfig:
    """Validated options of a verify run.

    Attributes:
        batch: Batch to generate, or None to verify a scene file.
        tolerance: Residual threshold in (0, 1e-2).
        output: Report path, or None for stdout.
        fmt: Report format.
        csv_path: Optional path of the residual CSV.
        branches: Branch mask in [0, 64), or None for the principal values.
        workers: Number of worker processes (at least 1).
    """

    batch: BatchOptions | None = None
    tolerance: float = DEFAULT_TOLERANCE
    output: Path | None = None
    fmt: ReportFormat = "json"
    csv_path: Path | None = None
    branches: int | None = None
    workers: int = 1

    def __post_init__(self) -> None:
        """Check the option ranges."""
        if not 0 < self.tolerance < MAX_TOLERANCE:
            raise ValueError(
                f"--tolerance must be in (0, {MAX_TOLERANCE:g}), got {self.tolerance}"
            )
        if self.branches is not None and not 0 <= self.branches < 64:
            raise ValueError(f"--branches must be in [0, 64), got {self.branches}")
        if self.workers < 1:
            raise ValueError(f"--workers must be at least 1, got {self.workers}")


def setup_logging(verbose: bool = False) -> None:
    """Configure logging for CLI.

    Logs go to stderr so reports and scene files can be piped.

    Args:
        verbose: If True, sets logging to DEBUG level. Otherwise INFO.
    """
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )


def write_output(text: str, output: Path | None) -> None:
    """Write to ``output`` through a temporary file and rename, or to stdout.

    A failed write leaves any existing file untouched.
    """
    if output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = output.parent if str(output.parent) else Path(".")
    fd, tmp = tempfile.mkstemp(prefix=f".{output.name}.", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.replace(tmp, output)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    logger.debug(f"Wrote {output}")


def cmd_gen(batch: BatchOptions, output: Path | None) -> int:
    """Generate a scene file."""
    scene_file = generate_scenes(batch.space, batch.count, batch.seed)
    write_output(dumps_scene_file(scene_file), output)
    return EXIT_OK


def _load_scenes(source: str) -> SceneFile:
    if source == "-":
        return loads_scene_file(sys.stdin.read())
    return loads_scene_file(Path(source).read_text(encoding="utf-8"))


def cmd_verify(config: RunConfig, scene_file: SceneFile | None = None) -> int:
    """Verify a scene file, or the batch named by ``config.batch``.

    Returns:
        0 if every instance passes, 1 otherwise.
    """
    if scene_file is None:
        if config.batch is None:
            raise ValueError("Nothing to verify: give a scene file or --space")
        options = config.batch
        scene_file = generate_scenes(options.space, options.count, options.seed)
    batch = run_verification(
        scene_file,
        config.tolerance,
        "principal" if config.branches is None else config.branches,
        config.workers,
    )
    write_output(render_batch(batch, config.fmt), config.output)
    if config.csv_path is not None:
        write_output(render_csv(batch), config.csv_path)
    return EXIT_OK if batch.passed else EXIT_FAILED


def cmd_euler(coefficients: list[float], fmt: ReportFormat, output: Path | None) -> int:
    """Print every Euler triple of the normalized quaternion.

    Raises:
        ValueError: If the input is zero.
    """
    a = Multivector(2, coefficients)
    size = norm(a)
    if size == 0.0:
        raise ValueError("Quaternion must be non-zero")
    a = a / size
    write_output(render_euler(a, euler_decompose(a), fmt), output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with the gen, verify and euler subcommands."""
    parser = argparse.ArgumentParser(
        prog="hexagauss",
        description=(
            "Numerical verification of Delambre-Gauss formulas "
            "for right-angled hexagons"
        ),
        epilog=f"The default tolerance can be set through {TOLERANCE_ENV_VAR}.",
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="Enable verbose output"
    )
    parser.add_argument(
        "--version", action="version", version=f"hexagauss {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_batch_options(p: argparse.ArgumentParser, space_required: bool) -> None:
        p.add_argument(
            "--space", choices=SPACES, required=space_required, help="Instance space"
        )
        p.add_argument(
            "--count", type=int, default=1, help="Number of instances (default: 1)"
        )
        p.add_argument("--seed", type=int, default=0, help="Batch seed (default: 0)")

    gen = sub.add_parser("gen", help="Generate a scene file")
    add_batch_options(gen, space_required=True)
    gen.add_argument("-o", "--out", type=Path, help="Output file (default: stdout)")

    verify = sub.add_parser("verify", help="Verify a scene file or a generated batch")
    verify.add_argument(
        "scene",
        nargs="?",
        help="Scene file, or '-' for stdin (default: stdin unless --space is given)",
    )
    add_batch_options(verify, space_required=False)
    verify.add_argument(
        "--tolerance",
        type=float,
        help=f"Residual threshold (default: {DEFAULT_TOLERANCE:g})",
    )
    verify.add_argument(
        "--format", choices=("json", "text"), default="json", help="Report format"
    )
    verify.add_argument("-o", "--out", type=Path, help="Report file (default: stdout)")
    verify.add_argument(
        "--emit-csv", type=Path, metavar="PATH", help="Also write a residual CSV"
    )
    verify.add_argument(
        "--branches", type=int, help="Branch mask 0..63 for the half side-lengths"
    )
    verify.add_argument(
        "--workers", type=int, default=1, help="Worker processes (default: 1)"
    )

    euler = sub.add_parser(
        "euler", help="Euler angles of a quaternion a0 + a1 e1 + a2 e2 + a12 e12"
    )
    euler.add_argument(
        "coefficients", type=float, nargs=4, metavar="A", help="a0 a1 a2 a12"
    )
    euler.add_argument(
        "--format", choices=("json", "text"), default="text", help="Output format"
    )
    euler.add_argument("-o", "--out", type=Path, help="Output file (default: stdout)")
    return parser


def main(argv: list[str] | None = None) -> int:
    """Main CLI entry point.

    Returns:
        Exit code: 0 on success, 1 if verification failed, 2 on usage or
        parse errors, 130 when interrupted.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose)

    try:
        if args.command == "euler":
            return cmd_euler(args.coefficients, args.format, args.out)

        if args.command == "gen":
            return cmd_gen(BatchOptions(args.space, args.count, args.seed), args.out)

        batch: BatchOptions | None = None
        if args.scene is None and args.space is not None:
            batch = BatchOptions(args.space, args.count, args.seed)
        config = RunConfig(
            batch,
            resolve_tolerance(args.tolerance),
            args.out,
            args.format,
            args.emit_csv,
            args.branches,
            args.workers,
        )
        if batch is not None:
            return cmd_verify(config)
        return cmd_verify(config, _load_scenes(args.scene or "-"))

    except SceneError as e:
        logger.error(f"Invalid scene file: {e}")
        return EXIT_USAGE
    except GeneratorError as e:
        logger.error(str(e))
        return EXIT_FAILED
    except ValueError as e:
        logger.error(str(e))
        return EXIT_USAGE
    except FileNotFoundError as e:
        logger.error(str(e))
        return EXIT_USAGE
    except PermissionError as e:
        logger.error(f"Permission denied: {e}")
        return EXIT_FAILED
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return EXIT_INTERRUPTED


if __name__ == "__main__":
    sys.exit(main())
