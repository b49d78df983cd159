"""
Command Line
============
python -m z2band <command> [options]

Commands:
    validate    check Hermiticity, time reversal, the gap and Kramers pairs
    invariant   Kane-Mele invariant with weak indices, SW classes, cobordism
                and partition-function tables
    berry       Berry phases, curvature and the Chern number on a grid
    tqft        partition-function table from a model or from raw signs

Exit codes:
    0   success
    1   validation failure or numerical failure (gap closed, zero Pfaffian)
    2   parse or usage error
    3   square-root branch ambiguous; raise --path-samples

Example:
    python -m z2band invariant --builtin phase:k=1 --space t1
    python -m z2band tqft --signs=-,+,+,+,-,+,+,+ --space t3 --pairing axis-z
"""

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from z2band.src.berry import berry_sweep, round_float
from z2band.src.cobordism import bundle_surfaces
from z2band.src.config import DEFAULT_BERRY_GRID, DEFAULT_PATH_SAMPLES, DEFAULT_VALIDATION_DENSITY
from z2band.src.errors import (
    BranchAmbiguous,
    HermiticityViolation,
    OddOccupation,
    PairingMismatch,
    ParseError,
    ThetaInvalid,
    UnsupportedSpace,
    Z2BandError,
)
from z2band.src.files import csv_text, dumps_json, emit, save_json, write_csv
from z2band.src.invariants import InvariantReport, bundle_from_signs, kane_mele, report_from_bundle
from z2band.src.modelfile import load_model_spec
from z2band.src.models import BlochModel, builtin_model, validate_model
from z2band.src.momentum import AXIS_NAMES, MomentumSpace, TrimPairing, default_pairing, make_pairing
from z2band.src.tqft import check_monoidal, decompose, partition

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_BRANCH = 3

COMMANDS = ("validate", "invariant", "berry", "tqft")
FORMATS = ("json", "csv", "human")
TRIM_COLUMNS = ["label", "coords", "sign", "pf_re", "pf_im", "sqrt_det_re", "sqrt_det_im"]


# =============================================================================
# RUN CONFIGURATION
# =============================================================================

@dataclass
class RunConfig:
    """
    One parsed command line.

    Attributes:
        command (str): one of COMMANDS
        model_path (Path | None): model file
        builtin (str | None): builtin spec such as "dvec:m=1"
        space (str | None): "t1".."t3" or "s1".."s3"; defaults to the model's torus
        grid (tuple | None): samples per axis
        path_samples (int): samples per path for the square-root branch
        output (str | None): output file, stdout when None
        format (str): json, csv or human
    """

    command: str
    model_path: Path | None = None
    builtin: str | None = None
    space: str | None = None
    grid: tuple | None = None
    path_samples: int = DEFAULT_PATH_SAMPLES
    output: str | None = None
    format: str = "json"
    band: str = "all"
    csv_path: str | None = None
    signs: str | None = None
    pairing: str | None = None
    grouping: int | None = None
    density: int = DEFAULT_VALIDATION_DENSITY
    verbose: int = 0

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(
            command=args.command,
            model_path=Path(args.model) if args.model else None,
            builtin=args.builtin,
            space=args.space,
            grid=parse_grid(args.grid) if args.grid else None,
            path_samples=args.path_samples,
            output=args.output,
            format=args.format,
            band=getattr(args, "band", "all"),
            csv_path=getattr(args, "csv", None),
            signs=getattr(args, "signs", None),
            pairing=args.pairing,
            grouping=args.grouping,
            density=getattr(args, "density", DEFAULT_VALIDATION_DENSITY),
            verbose=args.verbose,
        )


def parse_grid(text: str) -> tuple:
    """'24,24' -> (24, 24)."""
    try:
        sizes = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ParseError(f"--grid expects comma-separated integers, got {text!r}") from exc
    if not sizes or any(n < 3 for n in sizes):
        raise ParseError(f"--grid needs at least 3 samples per axis, got {text!r}")
    return sizes


def parse_signs(text: str) -> list:
    """'-,+,+1,-1' -> [-1, 1, 1, -1]."""
    values = []
    for token in text.split(","):
        token = token.strip()
        if token in ("+", "+1", "1"):
            values.append(1)
        elif token in ("-", "-1"):
            values.append(-1)
        else:
            raise ParseError(f"--signs entries must be + or -, got {token!r}")
    return values


def requested_dim(config: RunConfig) -> int | None:
    """Momentum dimension asked for by --space or --grid, if any."""
    if config.space is not None:
        return MomentumSpace.parse(config.space).dim
    if config.grid is not None:
        return len(config.grid)
    return None


def resolve_model(config: RunConfig) -> BlochModel:
    if (config.model_path is None) == (config.builtin is None):
        raise ParseError("give exactly one of --model or --builtin")
    if config.builtin is not None:
        return builtin_model(config.builtin, requested_dim(config))
    return load_model_spec(config.model_path)


def resolve_space(config: RunConfig, model: BlochModel | None = None) -> MomentumSpace:
    if config.space is not None:
        space = MomentumSpace.parse(config.space)
    elif model is not None:
        space = MomentumSpace.torus(model.dim_k)
    else:
        raise ParseError("--space is required with --signs")
    if model is not None and space.dim != model.dim_k:
        raise ParseError(f"{model.name} is {model.dim_k}D but --space is {space.label}")
    return space


def resolve_pairing(config: RunConfig, space: MomentumSpace) -> TrimPairing | None:
    if not space.is_torus:
        if config.pairing is not None:
            raise ParseError(f"no pairings on {space}")
        return None
    if config.pairing is None:
        if config.grouping is None:
            return default_pairing(space)
        return make_pairing(space, 0, config.grouping)
    name = config.pairing.strip().lower()
    prefix, _, axis = name.partition("-")
    if prefix != "axis" or len(axis) != 1 or axis not in AXIS_NAMES:
        raise ParseError(f"--pairing must be axis-x, axis-y or axis-z, got {config.pairing!r}")
    return make_pairing(space, AXIS_NAMES.index(axis), config.grouping)


def _write(config: RunConfig, data: dict, lines: list, csv_table: tuple | None = None):
    if config.format == "human":
        emit("\n".join(lines) + "\n", config.output)
    elif config.format == "csv":
        if csv_table is None:
            raise ParseError(f"{config.command} has no CSV output")
        emit(csv_text(*csv_table), config.output)
    elif config.output is not None:
        save_json(config.output, data)
    else:
        emit(dumps_json(data))


# =============================================================================
# COMMANDS
# =============================================================================

def cmd_validate(config: RunConfig) -> int:
    """Validate a model; exit 0 iff every check passes."""
    try:
        model = resolve_model(config)
    except (HermiticityViolation, ThetaInvalid, OddOccupation) as exc:
        name = config.model_path.stem if config.model_path else config.builtin
        data = {"model": name, "passed": False, "failures": [str(exc)]}
        if isinstance(exc, HermiticityViolation):
            data["displacement"] = list(exc.displacement)
        _write(config, data, [f"model: {name}", "status: FAIL", f"  - {exc}"])
        return EXIT_FAILURE
    report = validate_model(model, config.density)
    _write(config, report.to_dict(), report.lines())
    return EXIT_OK if report.passed else EXIT_FAILURE


def with_topology(report: InvariantReport, pairing: TrimPairing | None) -> InvariantReport:
    """Fill the cobordism and partition-function tables of a torus report."""
    space = report.bundle.space
    if pairing is None or not space.is_torus:
        return report
    report.cobordism = bundle_surfaces(report.bundle, pairing)
    report.tqft = [v.to_dict() for v in partition(report.bundle, decompose(space, pairing))]
    return report


def _report_lines(report: InvariantReport) -> list:
    lines = [f"model: {report.model}", f"space: {report.space}", f"nu = {report.nu:+d}",
             f"strong index: {report.strong}"]
    if report.weak:
        lines.append("weak indices: " + ", ".join(f"{w['axis']}={w['value']}" for w in report.weak))
    for trim in report.trims:
        lines.append(f"  {trim.label:>3}  sign {trim.sign:+d}  pf {trim.pf:.6g}  sqrt det {trim.sqrt_det:.6g}")
    for sw in report.sw:
        lines.append(f"  w{sw.degree}({sw.carrier}) = {sw.value}")
    return lines


def cmd_invariant(config: RunConfig) -> int:
    """Kane-Mele invariant of a model on a momentum space."""
    model = resolve_model(config)
    space = resolve_space(config, model)
    pairing = resolve_pairing(config, space)
    report = kane_mele(model, space, config.path_samples, pairing, chern_grid=config.grid)
    with_topology(report, pairing)
    rows = [
        [t.label, " ".join("pi" if c else "0" for c in t.coords), t.sign,
         t.pf.real, t.pf.imag, t.sqrt_det.real, t.sqrt_det.imag]
        for t in report.trims
    ]
    _write(config, report.to_dict(), _report_lines(report), (TRIM_COLUMNS, rows))
    return EXIT_OK


def cmd_berry(config: RunConfig) -> int:
    """Berry sweep of the occupied bands, or of the lower half with --band lower-half."""
    model = resolve_model(config)
    if config.band == "lower-half":
        if model.half_model is None:
            raise ParseError(f"{model.name} has no lower-half block")
        model = model.half_model()
    grid = config.grid or DEFAULT_BERRY_GRID[: model.dim_k]
    data = berry_sweep(model, grid)
    rows = [[round_float(v) for v in row] for row in data.curvature_rows()]
    header = ["kx", "ky", "curvature"]
    if config.csv_path:
        write_csv(config.csv_path, header, rows)
        logger.info("wrote %d curvature rows to %s", len(rows), config.csv_path)
    lines = [f"model: {data.model_name}", f"grid: {'x'.join(str(n) for n in data.grid)}"]
    if data.chern is not None:
        lines.append(f"chern = {data.chern}")
    lines.extend(f"berry phase {name}: {phase:.9f}" for name, phase in sorted(data.berry_phases.items()))
    _write(config, data.to_dict(), lines, (header, rows))
    return EXIT_OK


def cmd_tqft(config: RunConfig) -> int:
    """Partition-function table; exit 1 if a monoidal law fails."""
    if config.signs is not None:
        if config.model_path is not None or config.builtin is not None:
            raise ParseError("--signs replaces --model/--builtin")
        model, space = None, resolve_space(config)
    else:
        model = resolve_model(config)
        space = resolve_space(config, model)
    if not space.is_torus:
        raise ParseError(f"partition tables are built on tori, not {space}")
    pairing = resolve_pairing(config, space)
    if model is None:
        bundle = bundle_from_signs(space, parse_signs(config.signs))
        name = "signs"
    else:
        bundle = kane_mele(model, space, config.path_samples, pairing).bundle
        name = model.name
    decomp = decompose(space, pairing)
    values = partition(bundle, decomp)
    monoidal = check_monoidal(bundle, decomp)
    report = report_from_bundle(bundle, pairing, model=name)

    data = {
        "model": name,
        "space": space.label,
        "nu": report.nu,
        "pairing": pairing.to_dict(),
        "sw": [s.to_dict() for s in report.sw],
        "tqft": [v.to_dict() for v in values],
        "monoidal": monoidal.to_dict(),
    }
    lines = [f"model: {name}", f"space: {space.label}", f"pairing: {pairing.name}", f"nu = {report.nu:+d}"]
    lines.extend(f"  dim {v.object.dimension}  {v.object.carrier:<20}  Z={v.z_value}  nu={v.nu_value:+d}"
                 for v in values)
    lines.append("monoidal: " + ("PASS" if monoidal.passed else f"FAIL ({monoidal.counterexample})"))
    rows = [[row["dim"], row["carrier"], row["z"], row["nu"]] for row in data["tqft"]]
    _write(config, data, lines, (["dim", "carrier", "z", "nu"], rows))
    return EXIT_OK if monoidal.passed else EXIT_FAILURE


HANDLERS = {
    "validate": cmd_validate,
    "invariant": cmd_invariant,
    "berry": cmd_berry,
    "tqft": cmd_tqft,
}


# =============================================================================
# ENTRY POINT
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", help="model file (see z2band.src.modelfile)")
    common.add_argument("--builtin", help="builtin model: phase:k=<int>, dvec:m=<float>, dvec-half:m=<float>, flat[:dim=<d>]")
    common.add_argument("--space", help="t1, t2, t3, s1, s2 or s3 (default: torus of the model)")
    common.add_argument("--path-samples", type=int, default=DEFAULT_PATH_SAMPLES,
                        help=f"samples per path for the sqrt(det) branch (default: {DEFAULT_PATH_SAMPLES})")
    common.add_argument("--grid", help="samples per axis, e.g. 24,24")
    common.add_argument("--pairing", help="axis-x, axis-y or axis-z")
    common.add_argument("--grouping", type=int, choices=(0, 1, 2), help="north/south grouping on T^3")
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--output", help="write to this file instead of stdout")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")

    parser = argparse.ArgumentParser(prog="z2band", description="Z2 invariants of time-reversal invariant band structures.")
    sub = parser.add_subparsers(dest="command", required=True)

    validate = sub.add_parser("validate", parents=[common], help="validate a model")
    validate.add_argument("--density", type=int, default=DEFAULT_VALIDATION_DENSITY,
                          help=f"grid points per axis (default: {DEFAULT_VALIDATION_DENSITY})")
    sub.add_parser("invariant", parents=[common], help="Kane-Mele invariant and its refinements")
    berry = sub.add_parser("berry", parents=[common], help="Berry phases and Chern number")
    berry.add_argument("--band", choices=("all", "lower-half"), default="all")
    berry.add_argument("--csv", help="also write kx, ky, curvature rows to this file")
    tqft = sub.add_parser("tqft", parents=[common], help="partition-function table")
    tqft.add_argument("--signs", help="one sign per fixed point, e.g. --signs=-,+,+,+")
    return parser


def configure_logging(verbose: int):
    level = logging.WARNING if verbose <= 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        config = RunConfig.from_args(args)
        return HANDLERS[config.command](config)
    except (ParseError, UnsupportedSpace, PairingMismatch) as exc:
        print(f"z2band {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BranchAmbiguous as exc:
        print(f"z2band {args.command}: {exc}; raise --path-samples", file=sys.stderr)
        return EXIT_BRANCH
    except Z2BandError as exc:
        print(f"z2band {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except ValueError as exc:
        print(f"z2band {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
