"""
Command-line interface.

=== USAGE ===

    python -m src.cli solve-volumes --t 1 1 1 --w 0.5 0.5
    python -m src.cli solve-line --t 5 6 4 --kappa 1 --w 0.75 0.25 --verify
    python -m src.cli solve-pressures --t 1 1 1 --P 1 1
    python -m src.cli scan --t3 1 --kappa 0.1 --w 0.5 0.5 --n 64 -o scan.csv
    python -m src.cli infer --phi 120 120 120 --law all
    python -m src.cli oracle-check --cases 20 --seed 7

Options may also come from a JSON file (--config run.json); flags override
the file. Documents go to standard output (or --output), logs to standard
error.

=== EXIT CODES ===

    0  success
    2  invalid input
    3  convergence failure
    4  internal invariant violation (failed --verify, oracle disagreement)
"""
import argparse
import json
import math
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from config.logging_config import configure_logging, get_logger
from config.settings import get_settings
from src.cli.output import (
    critical_point_document,
    csv_text,
    dumps,
    line_document,
    state_document,
    surface_document,
)
from src.cli.svg import render_svg
from src.errors import DoubletError, InvalidInputError, InvariantViolationError
from src.geometry import ReducedVolumes, Tensions, energy, state_from_xh
from src.geometry import volumes as state_volumes
from src.inference import (
    ANGLE_LAWS,
    ambiguity_family,
    infer_from_angles,
    infer_from_radii,
    infer_from_state,
)
from src.oracle import oracle_minimize
from src.scan import CSV_COLUMNS, bulge_boundary_solve, max_bulge_probe, scan_angle_grid
from src.solvers import (
    PressureProblem,
    global_minimum,
    pressure_residuals,
    residual,
    solve_pressure,
    solve_surface,
)
from src.solvers.regime import triangle_regime

logger = get_logger(__name__)

# relative energy agreement demanded of solver and oracle
ORACLE_AGREEMENT = 1e-6


class RunConfig(BaseModel):
    """Merged file + flag configuration of one invocation."""

    command: str
    t1: Optional[float] = None
    t2: Optional[float] = None
    t3: Optional[float] = None
    kappa: float = 0.0
    w1: Optional[float] = None
    w2: Optional[float] = None
    P1: Optional[float] = None
    P2: Optional[float] = None
    n: Optional[int] = None
    newton_grid: Optional[int] = None
    oracle_grid: Optional[int] = None
    output: Optional[Path] = None
    seed: int = 0
    cases: Optional[int] = None
    phi: Optional[tuple[float, float, float]] = None
    law: str = "sine"
    radii: Optional[tuple[Optional[float], Optional[float], Optional[float]]] = None
    centers: Optional[tuple[Optional[float], Optional[float], Optional[float]]] = None
    h: Optional[float] = None
    lam: Optional[float] = None
    mu: Optional[float] = None
    verify: bool = False

    model_config = ConfigDict(extra="forbid")

    @model_validator(mode="after")
    def _check(self) -> "RunConfig":
        for name in ("t1", "t2", "t3", "kappa", "w1", "w2", "P1", "P2", "h", "lam", "mu"):
            value = getattr(self, name)
            if value is not None and not math.isfinite(value):
                raise ValueError(f"{name} must be finite")
        if self.has_volumes and self.has_pressures and self.command.startswith("solve"):
            raise ValueError("give either volumes or pressures, not both")
        return self

    @property
    def has_volumes(self) -> bool:
        return self.w1 is not None and self.w2 is not None

    @property
    def has_pressures(self) -> bool:
        return self.P1 is not None and self.P2 is not None

    def tensions(self) -> Tensions:
        if None in (self.t1, self.t2, self.t3):
            raise InvalidInputError(f"{self.command} needs t1, t2 and t3")
        return Tensions(t1=self.t1, t2=self.t2, t3=self.t3, kappa=self.kappa)

    def volumes(self) -> ReducedVolumes:
        if not self.has_volumes:
            raise InvalidInputError(f"{self.command} needs volumes w1 and w2")
        return ReducedVolumes(w1=self.w1, w2=self.w2)

    def search(self) -> dict:
        return {"grid": self.newton_grid} if self.newton_grid else {}


# ============================================
# VERIFY
# ============================================


def _verify_volumes(text: str, tensions: Tensions, volumes: ReducedVolumes) -> float:
    """Recompute residuals from the emitted numbers only."""
    doc = json.loads(text)
    if "geometry" in doc:
        geometry = doc["geometry"]
        state = state_from_xh(*geometry["x"], geometry["h"])
        return float(np.max(np.abs(residual(*state.z, state.y, tensions, volumes))))
    x1, x2, x3 = doc["boundary"]["x"]
    return max(
        abs(x3**3 - x1**3 - volumes.w1) / volumes.w1,
        abs(x2**3 - x3**3 - volumes.w2) / volumes.w2,
    )


def _check_verify(value: float, text: str) -> None:
    tol = get_settings().verify_tolerance
    if not value <= tol:
        raise InvariantViolationError(
            "emitted geometry fails the residual check",
            {"residual": value, "tolerance": tol},
            document=text,
        )
    logger.info("verify_passed", residual=value, tolerance=tol)


# ============================================
# COMMANDS
# ============================================


def _solve_volumes_document(cfg: RunConfig) -> dict:
    tensions, volumes = cfg.tensions(), cfg.volumes()
    if tensions.kappa == 0:
        return surface_document(tensions, solve_surface(tensions, volumes))
    result = global_minimum(tensions, volumes, **cfg.search())
    regime = triangle_regime(*tensions.surface).label.value
    return line_document(tensions, result, regime)


def cmd_solve_volumes(cfg: RunConfig) -> str:
    if cfg.has_pressures:
        return cmd_solve_pressures(cfg)
    doc = _solve_volumes_document(cfg)
    doc["volumes"] = cfg.volumes().model_dump()
    text = dumps(doc)
    if cfg.verify:
        _check_verify(_verify_volumes(text, cfg.tensions(), cfg.volumes()), text)
    return text


def cmd_solve_line(cfg: RunConfig) -> str:
    if not cfg.kappa > 0:
        raise InvalidInputError("solve-line needs kappa > 0; use solve-volumes")
    return cmd_solve_volumes(cfg)


def cmd_solve_pressures(cfg: RunConfig) -> str:
    if not cfg.has_pressures:
        raise InvalidInputError("solve-pressures needs pressures P1 and P2")
    problem = PressureProblem(tensions=cfg.tensions(), P1=cfg.P1, P2=cfg.P2)
    state = solve_pressure(problem)
    w1, w2 = state_volumes(state)
    doc = {
        "tensions": problem.tensions.model_dump(),
        "pressures": {"P1": problem.P1, "P2": problem.P2, "P3": problem.P3},
        "geometry": state_document(state),
        "volumes": {"w1": w1, "w2": w2},
        "energy": energy(state, problem.tensions),
        "residual": pressure_residuals(state, problem).max_abs,
    }
    text = dumps(doc)
    if cfg.verify:
        geometry = json.loads(text)["geometry"]
        emitted = state_from_xh(*geometry["x"], geometry["h"])
        _check_verify(pressure_residuals(emitted, problem).max_abs, text)
    return text


def cmd_scan(cfg: RunConfig) -> str:
    if cfg.t3 is None:
        raise InvalidInputError("scan needs t3")
    if cfg.n is not None and cfg.n < 2:
        raise InvalidInputError(f"scan grid must be at least 2, got {cfg.n}")
    cells = scan_angle_grid(cfg.t3, cfg.kappa, cfg.volumes(), cfg.n)
    return csv_text(CSV_COLUMNS, (cell.row() for cell in cells))


def cmd_bulge_boundary(cfg: RunConfig) -> str:
    if cfg.t2 is None or cfg.t3 is None:
        raise InvalidInputError("bulge-boundary needs t2 and t3")
    points = bulge_boundary_solve(cfg.t2, cfg.t3, cfg.kappa, cfg.volumes())
    doc = [
        {
            "t1": p.t1,
            "branch": p.branch,
            "geometry": state_document(p.state),
            "y": p.state.y,
            "residual": p.residual,
            "hessian": {"trace": p.hessian_trace, "det": p.hessian_det},
            "classification": p.classification.value,
        }
        for p in points
    ]
    return dumps({"points": doc})


def cmd_max_bulge_probe(cfg: RunConfig) -> str:
    kwargs = {}
    if None not in (cfg.t1, cfg.t2, cfg.t3):
        kwargs["tensions"] = cfg.tensions()
    if cfg.has_volumes:
        kwargs["volumes"] = cfg.volumes()
    widest = max_bulge_probe(**kwargs, **cfg.search())
    doc = {
        "phi_deg": list(widest.phi_deg),
        "fallback": widest.fallback,
        "point": critical_point_document(widest.point),
    }
    return dumps(doc)


def _inference_document(result) -> dict:
    return {
        "law": result.law,
        "tensions": list(result.tensions),
        "normalization": result.normalization,
        "conditioning": result.conditioning,
        "note": result.note,
    }


def cmd_infer(cfg: RunConfig) -> str:
    laws = ANGLE_LAWS if cfg.law == "all" else (cfg.law,)
    if cfg.phi is not None:
        phi = [math.radians(p) for p in cfg.phi]
        doc = {"results": [_inference_document(infer_from_angles(*phi, law=law)) for law in laws]}
    elif cfg.radii is not None:
        if cfg.centers is None or cfg.h is None:
            raise InvalidInputError("radius inference needs centers and h")
        doc = {"results": [_inference_document(infer_from_radii(*cfg.radii, *cfg.centers, cfg.h))]}
    elif cfg.lam is not None or cfg.mu is not None:
        tensions, volumes = cfg.tensions(), cfg.volumes()
        result = global_minimum(tensions, volumes, **cfg.search())
        if not result.local_minima:
            raise InvalidInputError("no local minimum to build the ambiguity family from")
        family = ambiguity_family(result.local_minima[0], tensions)
        lam = 1.0 if cfg.lam is None else cfg.lam
        mu = 0.0 if cfg.mu is None else cfg.mu
        doc = {
            "direction": list(family.direction),
            "lami_member": list(family.lami_member()),
            "mu_interval": list(family.mu_interval(lam)),
            "member": family.check(lam, mu).model_dump(),
        }
    else:
        tensions, volumes = cfg.tensions(), cfg.volumes()
        solution = solve_surface(tensions, volumes)
        if not solution.interior:
            raise InvalidInputError("degenerate regime: no junction angles to infer from")
        doc = {
            "geometry": state_document(solution.state),
            "results": [_inference_document(infer_from_state(solution.state, law)) for law in laws],
        }
    return dumps(doc)


def _oracle_case(tensions: Tensions, volumes: ReducedVolumes, cfg: RunConfig) -> dict:
    solver = global_minimum(tensions, volumes, **cfg.search())
    oracle = oracle_minimize(tensions, volumes, grid=cfg.oracle_grid)
    scale = max(abs(solver.global_energy), 1e-300)
    rel = abs(solver.global_energy - oracle.global_energy) / scale
    return {
        "tensions": tensions.model_dump(),
        "volumes": volumes.model_dump(),
        "solver": {"global": solver.global_tag, "energy": solver.global_energy},
        "oracle": {
            "global": oracle.global_tag,
            "energy": oracle.global_energy,
            "grid_energy": oracle.grid_energy,
        },
        "relative_difference": rel,
        "agree": rel <= ORACLE_AGREEMENT,
    }


def cmd_oracle_check(cfg: RunConfig) -> str:
    if cfg.cases:
        rng = np.random.default_rng(cfg.seed)
        cases = []
        for _ in range(cfg.cases):
            t = rng.uniform(0.5, 5.0, size=3)
            w1 = float(rng.uniform(0.1, 0.9))
            cases.append(
                (Tensions.of(*map(float, t), kappa=cfg.kappa), ReducedVolumes.of(w1, 1.0 - w1))
            )
    else:
        cases = [(cfg.tensions(), cfg.volumes())]
    results = [_oracle_case(t, w, cfg) for t, w in cases]
    failures = [r for r in results if not r["agree"]]
    doc = {
        "seed": cfg.seed,
        "cases": results,
        "max_relative_difference": max(r["relative_difference"] for r in results),
        "failures": len(failures),
    }
    text = dumps(doc)
    if failures:
        raise InvariantViolationError(
            f"solver and oracle disagree on {len(failures)} case(s)",
            {"failures": failures, "agreement": ORACLE_AGREEMENT},
            document=text,
        )
    return text


def cmd_svg(cfg: RunConfig) -> str:
    tensions = cfg.tensions()
    if cfg.has_pressures:
        geometry = solve_pressure(PressureProblem(tensions=tensions, P1=cfg.P1, P2=cfg.P2))
    elif cfg.has_volumes:
        volumes = cfg.volumes()
        if tensions.kappa == 0:
            solution = solve_surface(tensions, volumes)
            geometry = solution.state if solution.interior else solution.boundary
        else:
            minimizer = global_minimum(tensions, volumes, **cfg.search()).minimizer
            geometry = getattr(minimizer, "state", minimizer)
    else:
        geometry = None
    return render_svg(geometry)


COMMANDS: dict[str, Callable[[RunConfig], str]] = {
    "solve-volumes": cmd_solve_volumes,
    "solve-pressures": cmd_solve_pressures,
    "solve-line": cmd_solve_line,
    "scan": cmd_scan,
    "bulge-boundary": cmd_bulge_boundary,
    "max-bulge-probe": cmd_max_bulge_probe,
    "infer": cmd_infer,
    "oracle-check": cmd_oracle_check,
    "svg": cmd_svg,
}


# ============================================
# ARGUMENTS
# ============================================


def _optional_float(text: str) -> Optional[float]:
    return None if text.lower() in ("none", "null", "flat") else float(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON file with any of the options below")
    common.add_argument("--t", nargs=3, type=float, metavar=("T1", "T2", "T3"))
    common.add_argument("--t1", type=float)
    common.add_argument("--t2", type=float)
    common.add_argument("--t3", type=float)
    common.add_argument("--kappa", type=float, help="Line tension")
    common.add_argument("--w", nargs=2, type=float, metavar=("W1", "W2"), help="Reduced volumes")
    common.add_argument("--P", nargs=2, type=float, metavar=("P1", "P2"), help="Pressures")
    common.add_argument("--newton-grid", type=int, help="Multistart grid per axis")
    common.add_argument("-o", "--output", type=Path, help="Write the document here")
    common.add_argument("--verify", action="store_true", default=None)
    common.add_argument("--log-level")
    common.add_argument("--log-json", action="store_true", default=None)

    parser = argparse.ArgumentParser(
        prog="doublet", description="Equilibrium shapes of cell doublets"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("solve-volumes", "solve-pressures", "solve-line", "bulge-boundary",
                 "max-bulge-probe", "svg"):
        sub.add_parser(name, parents=[common])

    scan = sub.add_parser("scan", parents=[common])
    scan.add_argument("--n", type=int, help="Angle grid per axis")

    infer = sub.add_parser("infer", parents=[common])
    infer.add_argument("--phi", nargs=3, type=float, metavar=("PHI1", "PHI2", "PHI3"),
                       help="Interior junction angles in degrees")
    infer.add_argument("--law", choices=[*ANGLE_LAWS, "all"])
    infer.add_argument("--radii", nargs=3, type=_optional_float)
    infer.add_argument("--centers", nargs=3, type=_optional_float)
    infer.add_argument("--h", type=float, help="Junction radius")
    infer.add_argument("--lam", type=float)
    infer.add_argument("--mu", type=float)

    oracle = sub.add_parser("oracle-check", parents=[common])
    oracle.add_argument("--oracle-grid", type=int)
    oracle.add_argument("--cases", type=int, help="Random cases instead of one")
    oracle.add_argument("--seed", type=int)
    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    """File values first, then every flag that was given."""
    values: dict = {}
    if args.config is not None:
        try:
            values.update(json.loads(args.config.read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidInputError(f"cannot read config {args.config}: {exc}") from exc
    flags = {
        k: v
        for k, v in vars(args).items()
        if v is not None and k not in ("config", "t", "w", "P", "log_level", "log_json")
    }
    if args.t is not None:
        flags.update(zip(("t1", "t2", "t3"), args.t))
    if args.w is not None:
        flags.update(zip(("w1", "w2"), args.w))
    if args.P is not None:
        flags.update(zip(("P1", "P2"), args.P))
    values.update(flags)
    return RunConfig(**values)


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        output.write_text(text if text.endswith("\n") else text + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.log_level or args.log_json:
        configure_logging(level=args.log_level, json_logs=args.log_json)
    try:
        cfg = load_config(args)
        text = COMMANDS[cfg.command](cfg)
    except ValidationError as exc:
        logger.error("invalid_input", command=args.command, errors=exc.errors(include_url=False))
        return 2
    except DoubletError as exc:
        if isinstance(exc, InvariantViolationError) and exc.document is not None:
            _emit(exc.document, cfg.output)
        logger.error(
            "command_failed",
            command=args.command,
            error=type(exc).__name__,
            message=exc.message,
            diagnostics=exc.diagnostics,
        )
        return exc.exit_code
    _emit(text, cfg.output)
    return 0
