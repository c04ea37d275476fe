"""
Space-form geometry command line
Triangle and regular polygon solvers, isoperimetric reports, polygon queries
and the verification suites. Data goes to stdout, diagnostics to stderr.
"""

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from datetime import datetime
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import pytz

# Add project root to path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from config import DEFAULT_SEED, EPS_DOM, FLOAT_FORMAT, LOG_FORMAT, REPORT_DIR, SEED_ENV_VAR
from spaceform.errors import SpaceFormError, UsageError
from spaceform.isoperimetric import (
    best_result,
    convergence_table,
    max_area_for_perimeter,
    optimal_circle,
    run_restarts,
)
from spaceform.kappa_kernel import Kappa, set_domain_tolerance, to_kappa
from spaceform.models.geometry_models import SurfacePoint
from spaceform.models.report_models import RunConfig
from spaceform.polygon import area, arm_closing_length, is_convex, make_polygon, perimeter, vertex_angles
from spaceform.regular import solve
from spaceform.triangle import triangle_from_asa, triangle_from_sas, triangle_from_sss
from verification import SUITES, run_suites

UTC = pytz.UTC

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

logger = logging.getLogger("spaceform.cli")


class RunSession:
    """Identifies one command-line run"""
    def __init__(self, argv: Sequence[str], seed: int):
        self.start_time = datetime.now(UTC)
        self.session_id = self.generate_session_id(argv, seed)

    def generate_session_id(self, argv: Sequence[str], seed: int) -> str:
        """Session ID from the UTC start time and a hash of argv and seed"""
        timestamp = self.start_time.strftime("%Y%m%d_%H%M%S")
        run_hash = hashlib.md5(f"{' '.join(argv)}_{seed}".encode()).hexdigest()[:6]
        return f"SID_{timestamp}_{run_hash}"

    def get_log_suffix(self) -> str:
        date_str = self.start_time.strftime("%Y%m%d")
        return f"{date_str}_{self.session_id}"


class LogManager:
    """Installs the stderr handler and, with a log directory, a per-session file handler"""
    def __init__(self, session: RunSession, level: int, log_dir: Optional[str] = None,
                 report_dir: str = REPORT_DIR, run_config: Optional[RunConfig] = None):
        self.session = session
        self.level = level
        self.log_dir = log_dir
        self.report_dir = report_dir
        self.handlers: List[logging.Handler] = []
        self.previous_level = logging.getLogger().level
        self.setup_loggers()
        if log_dir:
            self.log_session_start(run_config)

    def setup_loggers(self):
        """Attach handlers to the root logger with UTC timestamps"""
        formatter = logging.Formatter(LOG_FORMAT)
        formatter.converter = time.gmtime  # Use UTC time

        console = logging.StreamHandler(sys.stderr)
        console.setFormatter(formatter)
        self.handlers.append(console)

        if self.log_dir:
            os.makedirs(self.log_dir, exist_ok=True)
            log_file = os.path.join(self.log_dir, f"spaceform_{self.session.get_log_suffix()}.log")
            file_handler = logging.FileHandler(log_file, encoding="utf-8")
            file_handler.setFormatter(formatter)
            self.handlers.append(file_handler)

        root = logging.getLogger()
        for handler in self.handlers:
            root.addHandler(handler)
        root.setLevel(self.level)

    def log_session_start(self, run_config: Optional[RunConfig]):
        """Log the run parameters and save them next to the reports"""
        session_info = {
            "session_id": self.session.session_id,
            "start_time_utc": self.session.start_time.strftime("%Y-%m-%d %H:%M:%S UTC"),
            "run_config": run_config.to_dict() if run_config else None,
        }
        logger.info(f"SESSION_START - {json.dumps(session_info)}")

        os.makedirs(self.report_dir, exist_ok=True)
        session_file = os.path.join(self.report_dir, f"session_{self.session.session_id}.json")
        with open(session_file, "w", encoding="utf-8") as f:
            json.dump(session_info, f, indent=2, default=str)

    def close(self):
        root = logging.getLogger()
        for handler in self.handlers:
            root.removeHandler(handler)
            handler.close()
        root.setLevel(self.previous_level)
        self.handlers = []


def _kappa_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--kappa", type=int, choices=(-1, 0, 1), required=True, help="curvature of the model surface")
    return parent


def _seed_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--seed", type=int, default=None,
                        help=f"random seed (default: ${SEED_ENV_VAR} or {DEFAULT_SEED})")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spaceform", description="Geometry of the sphere, plane and hyperbolic plane")
    parser.add_argument("--log-dir", default=None, help="also write a per-session log file here")
    parser.add_argument("--report-dir", default=REPORT_DIR, help="where the session JSON goes when --log-dir is set")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true", help="debug diagnostics on stderr")
    verbosity.add_argument("--quiet", action="store_true", help="warnings and errors only")
    parser.add_argument("--eps-dom", type=float, default=None, help=f"inverse-trig clamping band (default {EPS_DOM})")
    parser.add_argument("--workers", type=int, default=None, help="worker processes for iso minimize")
    commands = parser.add_subparsers(dest="command", required=True)
    kappa, seeded = _kappa_parent(), _seed_parent()

    triangle = commands.add_parser("triangle", help="triangle solvers")
    triangle_actions = triangle.add_subparsers(dest="action", required=True)
    triangle_solve = triangle_actions.add_parser("solve", parents=[kappa], help="solve from SSS, SAS or ASA data")
    data = triangle_solve.add_mutually_exclusive_group(required=True)
    data.add_argument("--sss", type=float, nargs=3, metavar=("A", "B", "C"))
    data.add_argument("--sas", type=float, nargs=3, metavar=("A", "B", "GAMMA"))
    data.add_argument("--asa", type=float, nargs=3, metavar=("ALPHA", "C", "BETA"))

    regular = commands.add_parser("regular", parents=[kappa], help="regular n-gon from one datum")
    regular.add_argument("--n", type=int, required=True)
    datum = regular.add_mutually_exclusive_group(required=True)
    datum.add_argument("--r", type=float)
    datum.add_argument("--side", type=float)
    datum.add_argument("--angle", type=float)
    datum.add_argument("--area", type=float)

    iso = commands.add_parser("iso", help="isoperimetric reports")
    iso_actions = iso.add_subparsers(dest="action", required=True)
    circle = iso_actions.add_parser("circle", parents=[kappa], help="optimal circle of a given area")
    circle.add_argument("--area", type=float, required=True)
    minimize = iso_actions.add_parser("minimize", parents=[kappa, seeded], help="perimeter-minimizing n-gon search")
    minimize.add_argument("--n", type=int, required=True)
    minimize.add_argument("--area", type=float, required=True)
    minimize.add_argument("--seeds", type=int, default=8, help="number of restarts")
    limit = iso_actions.add_parser("limit", parents=[kappa], help="regular n-gons approaching the circle")
    limit.add_argument("--area", type=float, required=True)
    limit.add_argument("--n-max", type=int, default=2048)
    limit.add_argument("--format", choices=("csv", "json"), default="csv")
    dual = iso_actions.add_parser("dual", parents=[kappa], help="largest area for a given perimeter")
    dual.add_argument("--perimeter", type=float, required=True)

    polygon = commands.add_parser("polygon", help="geodesic polygon queries")
    polygon_actions = polygon.add_subparsers(dest="action", required=True)
    for action in ("area", "perimeter", "convex", "angles"):
        query = polygon_actions.add_parser(action, parents=[kappa])
        query.add_argument("--vertices", required=True, help="JSON list of [x, y, z] vertices")
    arm = polygon_actions.add_parser("arm", parents=[kappa], help="closing length of a convex chain")
    arm.add_argument("--sides", type=float, nargs="+", required=True)
    arm.add_argument("--angles", type=float, nargs="*", default=[])

    verify = commands.add_parser("verify", parents=[seeded], help="run verification suites")
    verify.add_argument("suites", nargs="+", choices=[*SUITES, "all"])
    verify.add_argument("--samples", type=int, default=None, help="samples per suite (default: per-suite size)")
    verify.add_argument("--format", choices=("json", "csv"), default="json")
    return parser


def resolve_seed(explicit: Optional[int]) -> int:
    if explicit is not None:
        return explicit
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None or raw.strip() == "":
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}")


def _dumps(payload) -> str:
    return json.dumps(payload, indent=2)


def _frame_csv(table) -> str:
    return table.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def cmd_triangle(args, seed: int) -> Tuple[str, int]:
    k = to_kappa(args.kappa)
    if args.sss:
        tri = triangle_from_sss(k, *args.sss)
    elif args.sas:
        tri = triangle_from_sas(k, *args.sas)
    else:
        alpha, c, beta = args.asa
        tri = triangle_from_asa(k, alpha, c, beta)
    return tri.to_json(), EXIT_OK


def cmd_regular(args, seed: int) -> Tuple[str, int]:
    ngon = solve(args.kappa, args.n, r=args.r, side=args.side, angle=args.angle, area=args.area)
    return ngon.to_json(), EXIT_OK


def cmd_iso(args, seed: int) -> Tuple[str, int]:
    k = to_kappa(args.kappa)
    if args.action == "circle":
        return optimal_circle(k, args.area).to_json(), EXIT_OK

    if args.action == "minimize":
        if args.seeds < 1:
            raise UsageError(f"--seeds must be at least 1, got {args.seeds}")
        seeds = [seed + i for i in range(args.seeds)]
        results = run_restarts(k, args.n, args.area, seeds, workers=args.workers)
        best = best_result(results)
        converged = sum(r.converged for r in results)
        logger.info(f"🎯 {converged}/{len(results)} restarts converged; best perimeter {best.perimeter:.15g}")
        return best.to_json(), EXIT_OK

    if args.action == "limit":
        table = convergence_table(k, args.area, args.n_max)
        if args.format == "csv":
            return _frame_csv(table), EXIT_OK
        rows = [{"n": int(row.n), "r_n": float(row.r_n), "perimeter_n": float(row.perimeter_n),
                 "deficit_n": float(row.deficit_n)} for row in table.itertuples(index=False)]
        return _dumps({"kappa": int(k), "area": args.area, "rows": rows}), EXIT_OK

    A, r = max_area_for_perimeter(k, args.perimeter)
    return _dumps({"kappa": int(k), "perimeter": args.perimeter, "area": A, "optimal_radius": r}), EXIT_OK


def parse_vertices(k: Kappa, raw: str) -> List[SurfacePoint]:
    """Vertices from a JSON list of [x, y, z] (or [x, y] in the plane)"""
    try:
        entries = json.loads(raw)
    except json.JSONDecodeError as e:
        raise UsageError(f"--vertices is not valid JSON: {e}")
    if not isinstance(entries, list):
        raise UsageError("--vertices must be a JSON list of coordinate lists")
    points = []
    for entry in entries:
        if not isinstance(entry, list) or not all(isinstance(c, (int, float)) for c in entry):
            raise UsageError(f"vertex {entry!r} is not a list of numbers")
        if len(entry) == 2 and k == Kappa.EUCLIDEAN:
            entry = [*entry, 1.0]
        if len(entry) != 3:
            raise UsageError(f"vertex {entry!r} needs three coordinates")
        points.append(SurfacePoint(*entry, k))
    return points


def cmd_polygon(args, seed: int) -> Tuple[str, int]:
    k = to_kappa(args.kappa)
    if args.action == "arm":
        closing = arm_closing_length(k, args.sides, args.angles)
        return _dumps({"kappa": int(k), "sides": args.sides, "angles": args.angles, "closing_length": closing}), EXIT_OK

    poly = make_polygon(parse_vertices(k, args.vertices))
    payload = {"kappa": int(k), "n": poly.n}
    if args.action == "area":
        payload["area"] = area(poly)
    elif args.action == "perimeter":
        payload["perimeter"] = perimeter(poly)
    elif args.action == "convex":
        payload["convex"] = is_convex(poly)
    else:
        payload["vertices"] = [p.to_list() for p in poly.vertices]
        payload["angles"] = vertex_angles(poly)
    return _dumps(payload), EXIT_OK


def cmd_verify(args, seed: int) -> Tuple[str, int]:
    if args.samples is not None and args.samples < 1:
        raise UsageError(f"--samples must be at least 1, got {args.samples}")
    names = list(SUITES) if "all" in args.suites else list(dict.fromkeys(args.suites))
    report, table = run_suites(names, seed, args.samples)
    for suite in report.suites:
        mark = "✅" if suite.passed else "❌"
        logger.info(f"{mark} {suite.name}: max residual {suite.max_residual:.3g} "
                    f"(tolerance {suite.tolerance:.3g}), {suite.failures} failures")
    output = _frame_csv(table) if args.format == "csv" else report.to_json()
    return output, EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED


COMMANDS: Dict[str, Callable] = {
    "triangle": cmd_triangle,
    "regular": cmd_regular,
    "iso": cmd_iso,
    "polygon": cmd_polygon,
    "verify": cmd_verify,
}


def _run_config(args, seed: int) -> RunConfig:
    command = " ".join(part for part in (args.command, getattr(args, "action", None)) if part)
    ambient = {"command", "action", "kappa", "seed", "format", "eps_dom", "log_dir", "report_dir", "verbose", "quiet"}
    return RunConfig(
        command=command,
        kappa=to_kappa(args.kappa) if getattr(args, "kappa", None) is not None else None,
        seed=seed,
        output_format=getattr(args, "format", "json"),
        eps_dom=args.eps_dom,
        params={key: value for key, value in vars(args).items() if key not in ambient},
    )


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, run one command and write its output; returns the exit code"""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    try:
        seed = resolve_seed(args.seed) if hasattr(args, "seed") else DEFAULT_SEED
    except UsageError as e:
        sys.stderr.write(f"spaceform: {e}\n")
        return EXIT_USAGE

    session = RunSession(argv, seed)
    logs = LogManager(session, level, args.log_dir, args.report_dir, _run_config(args, seed))
    try:
        if args.eps_dom is not None:
            set_domain_tolerance(args.eps_dom)
        output, code = COMMANDS[args.command](args, seed)
        sys.stdout.write(output if output.endswith("\n") else output + "\n")
        sys.stdout.flush()
        return code
    except UsageError as e:
        logger.error(f"usage error: {e}")
        return EXIT_USAGE
    except SpaceFormError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_DOMAIN
    finally:
        if args.eps_dom is not None:
            set_domain_tolerance(EPS_DOM)
        logs.close()


if __name__ == "__main__":
    sys.exit(run())
