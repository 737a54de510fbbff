"""Command-line driver.

Every subcommand accepts the same flags; values from ``--config`` (a JSON
file whose keys mirror :class:`RunConfig`) are overridden by explicit flags.

Exit status: 0 on success, 1 when ``verify`` (or ``q1``) finds a failing
check, 2 on an invalid configuration.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, fields
from pathlib import Path

from .bethe import MorseProblem, gradient_flow, solve_bethe, DEFAULT_TOL
from .hall_littlewood import MAX_M
from .hamiltonian import build_toda, matrix_csv
from .lattice import LatticeConfig, Partition, enumerate_partitions
from .measures import ModelParams
from .q1_limit import verify_q1_eigensystem
from .report import csv_text, dumps, spectrum_report, verify_report
from .spectrum import build_eigensystem, ResidualError

log = logging.getLogger(__name__)

COMMANDS = ("solve", "spectrum", "verify", "flow", "q1", "dump-matrix")

# flag name -> RunConfig field
_FLAG_FIELDS = {
    "n": "n",
    "m": "m",
    "q": "q",
    "pp": "p_plus",
    "qp": "q_plus",
    "pm": "p_minus",
    "qm": "q_minus",
    "kappa": "kappa",
    "tol": "tol",
    "out": "output_path",
    "format": "format",
}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str = "solve"
    n: int = 1
    m: int = 1
    q: float = 0.0
    p_plus: float = 0.0
    q_plus: float = 0.0
    p_minus: float = 0.0
    q_minus: float = 0.0
    kappa: list[int] | None = None
    tol: float = DEFAULT_TOL
    output_path: str | None = None
    format: str | None = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if int(self.n) != self.n or self.n < 1:
            raise ConfigError(f"n must be a positive integer, got {self.n}")
        if int(self.m) != self.m or not 1 <= self.m <= MAX_M:
            raise ConfigError(f"m must be an integer in 1..{MAX_M}, got {self.m}")
        for name in ("q", "p_plus", "q_plus", "p_minus", "q_minus"):
            value = float(getattr(self, name))
            if not abs(value) < 1:
                raise ConfigError(f"{name} outside (-1,1)")
        if not self.tol > 0:
            raise ConfigError("tol must be positive")
        if self.format not in (None, "json", "csv"):
            raise ConfigError(f"format must be json or csv, got {self.format!r}")
        if self.kappa is not None:
            self.kappa_partition()

    @property
    def cfg(self) -> LatticeConfig:
        return LatticeConfig(int(self.n), int(self.m))

    @property
    def params(self) -> ModelParams:
        return ModelParams(self.q, self.p_plus, self.q_plus, self.p_minus, self.q_minus)

    def kappa_partition(self) -> Partition:
        """``--kappa`` as a point of the ``(m, n)`` box; defaults to ``(0^m)``."""
        parts = self.kappa if self.kappa is not None else [0] * int(self.m)
        if len(parts) != self.m:
            raise ConfigError(f"kappa needs {self.m} entries, got {len(parts)}")
        try:
            return Partition(tuple(parts), int(self.n))
        except ValueError as exc:
            raise ConfigError(f"invalid kappa: {exc}") from None


def _parse_kappa(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"kappa must be a comma list of integers: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=None, help="number of particles")
    common.add_argument("--m", type=int, default=None, help="lattice sites 0..m")
    common.add_argument("--q", type=float, default=None)
    common.add_argument("--pp", type=float, default=None, help="p_plus")
    common.add_argument("--qp", type=float, default=None, help="q_plus")
    common.add_argument("--pm", type=float, default=None, help="p_minus")
    common.add_argument("--qm", type=float, default=None, help="q_minus")
    common.add_argument("--kappa", type=_parse_kappa, default=None, help="comma list, e.g. 2,1,0")
    common.add_argument("--tol", type=float, default=None, help="Newton tolerance on |grad|_inf")
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--config", default=None, help="JSON file with RunConfig fields")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="qtoda",
        description="Bethe Ansatz spectrum of the open q-difference Toda chain.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "solve": "Bethe roots for every kappa",
        "spectrum": "eigensystem report",
        "verify": "run all numerical certificates; exit 1 on failure",
        "flow": "gradient-flow trajectory for one kappa (CSV)",
        "q1": "q -> 1 limit: factorized eigenbasis checks",
        "dump-matrix": "hamiltonian matrix as CSV",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    values: dict = {}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        known = {f.name for f in fields(RunConfig)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        values.update(data)
    for flag, name in _FLAG_FIELDS.items():
        value = getattr(args, flag)
        if value is not None:
            values[name] = value
    values["command"] = args.command
    config = RunConfig(**values)
    config.validate()
    return config


def _emit(text: str, config: RunConfig) -> None:
    if config.output_path:
        Path(config.output_path).write_text(text)
    else:
        sys.stdout.write(text)


def _solve(config: RunConfig) -> int:
    cfg, params = config.cfg, config.params
    kappas = (
        [config.kappa_partition()]
        if config.kappa is not None
        else enumerate_partitions(cfg.transpose())
    )
    sols = [solve_bethe(MorseProblem(cfg, params, k), config.tol) for k in kappas]
    if config.format == "csv":
        header = ["kappa"] + [f"xi{j}" for j in range(1, cfg.m + 1)] + ["E", "grad_inf", "bae_residual"]
        rows = [
            [" ".join(map(str, s.kappa.parts)), *map(float, s.xi), s.energy, s.grad_norm, s.bae_residual]
            for s in sols
        ]
        _emit(csv_text(header, rows), config)
    else:
        _emit(
            dumps(
                {
                    "params": params.as_dict(),
                    "n": cfg.n,
                    "m": cfg.m,
                    "solutions": [
                        {
                            "kappa": s.kappa,
                            "xi": s.xi,
                            "E": s.energy,
                            "grad_inf": s.grad_norm,
                            "hessian_min_eig": s.hessian_min_eig,
                            "bae_residual": s.bae_residual,
                        }
                        for s in sols
                    ],
                }
            ),
            config,
        )
    return 0


def _flow(config: RunConfig) -> int:
    prob = MorseProblem(config.cfg, config.params, config.kappa_partition())
    res = gradient_flow(prob)
    header = ["t"] + [f"xi{j}" for j in range(1, config.m + 1)] + ["grad_inf"]
    rows = [[float(t), *map(float, x), float(g)] for t, x, g in zip(res.t, res.xi, res.grad_norm)]
    _emit(csv_text(header, rows), config)
    return 0


def _dump_matrix(config: RunConfig) -> int:
    _emit(matrix_csv(build_toda(config.cfg, config.params)), config)
    return 0


def run(config: RunConfig) -> int:
    """Execute one validated configuration and return the exit status."""
    cmd = config.command
    if cmd == "solve":
        return _solve(config)
    if cmd == "flow":
        return _flow(config)
    if cmd == "dump-matrix":
        return _dump_matrix(config)
    if cmd == "q1":
        rep = verify_q1_eigensystem(config.cfg, config.params)
        _emit(dumps(rep), config)
        return 0 if rep["passed"] else 1
    try:
        es = build_eigensystem(config.cfg, config.params, config.tol)
    except ResidualError as exc:
        log.error("%s", exc)
        return 1
    if cmd == "spectrum":
        _emit(dumps(spectrum_report(es)), config)
        return 0
    flow_kappa = config.kappa_partition()
    rep = verify_report(es, config.tol, flow_kappa)
    _emit(dumps(rep), config)
    for name, ok in rep["checks"].items():
        log.info("%-20s %s", name, "PASS" if ok else "FAIL")
    return 0 if rep["passed"] else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
    )
    try:
        config = resolve_config(args)
    except (ConfigError, TypeError) as exc:
        print(f"qtoda: error: {exc}", file=sys.stderr)
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
