"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 solver failure.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from . import fileio
from .errors import ConvergenceError, QCAError
from .hamiltonian import build, classical_levels_n2
from .oracle import classical_enumerate
from .scenarios import SCENARIOS, SweepSpec, run_sweep, scenario
from .solver import ground_state

PARAM_NAMES = {"Ey": "E_y", "Ex": "E_x", "vin": "v_in", "Pdrv": "P_drv"}

EXIT_OK, EXIT_INPUT, EXIT_SOLVER = 0, 1, 2


class InputError(Exception):
    pass


def _load(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return fileio.parse_circuit(text)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_sim(args) -> None:
    circuit, field = _load(args.circuit)
    res = ground_state(build(circuit, field), method=args.method)
    lines = [f"P_{k} = {fileio.fmt(p)}" for k, p in enumerate(res.polarizations, start=1)]
    lines += [f"energy_eV = {fileio.fmt(res.energy)}", f"gap_eV = {fileio.fmt(res.gap)}",
              f"degenerate = {int(res.degenerate)}"]
    sys.stdout.write("\n".join(lines) + "\n")


def cmd_sweep(args) -> None:
    circuit, field = _load(args.circuit)
    spec = SweepSpec(PARAM_NAMES[args.param], args.start, args.stop, args.steps, circuit, field, args.d)
    _emit(fileio.sweep_to_csv(run_sweep(spec, workers=args.workers)), args.out)


def cmd_scenario(args) -> None:
    result = scenario(args.name)
    blocks = [(label, fileio.sweep_to_csv(s)) for label, s in result.sweeps.items()]
    if result.levels is not None:
        blocks.append(("levels", fileio.levels_to_csv(result.levels)))
    for key, value in result.metadata.items():
        print(f"{args.name}: {key} = {fileio.fmt(value)}", file=sys.stderr)
    if args.out:
        out = Path(args.out)
        if len(blocks) == 1:
            out.write_text(blocks[0][1])
        else:
            for label, text in blocks:
                safe = label.replace("=", "_").replace(" ", "")
                out.with_name(f"{out.stem}_{safe}{out.suffix or '.csv'}").write_text(text)
    elif len(blocks) == 1:
        sys.stdout.write(blocks[0][1])
    else:
        sys.stdout.write("\n".join(f"# {label}\n{text}" for label, text in blocks))


def cmd_oracle(args) -> None:
    circuit, field = _load(args.circuit)
    spec = classical_enumerate(circuit, field)
    n = circuit.n_cells
    print(f"minimum_eV = {fileio.fmt(spec.minimum)}")
    print(f"degenerate = {int(spec.min_degenerate)}")
    for p in spec.argmin:
        # ket printed as |m_N ... m_1>
        print(f"argmin p={p} |{format(p, f'0{n}b')}>")
    if args.all:
        for p, e in enumerate(spec.energies):
            print(f"{p},{format(p, f'0{n}b')},{fileio.fmt(e)}")


def cmd_levels(args) -> None:
    names = ("E_00", "E_01", "E_10", "E_11")
    for name, value in zip(names, classical_levels_n2(args.a, args.spacing, args.Ey)):
        print(f"{name}_eV = {fileio.fmt(value)}")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcafield", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sim", help="one ground-state solve")
    p.add_argument("-c", "--circuit", required=True)
    p.add_argument("--method", choices=("auto", "dense", "lanczos"), default="auto")
    p.set_defaults(func=cmd_sim)

    p = sub.add_parser("sweep", help="sweep one parameter, CSV out")
    p.add_argument("-c", "--circuit", required=True)
    p.add_argument("--param", choices=tuple(PARAM_NAMES), required=True)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--d", type=float, default=10.0, help="electrode gap in nm for --param vin")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("scenario", help="run a named experiment")
    p.add_argument("name", choices=SCENARIOS)
    p.add_argument("--out")
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("oracle", help="classical (no tunneling) spectrum")
    p.add_argument("-c", "--circuit", required=True)
    p.add_argument("--all", action="store_true", help="also list every configuration")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("levels", help="classical levels of a side-by-side pair")
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--spacing", type=float, default=1.0)
    p.add_argument("--Ey", type=float, required=True)
    p.set_defaults(func=cmd_levels)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            args.func(args)
    except (InputError, QCAError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if isinstance(exc, ConvergenceError) or isinstance(exc.__cause__, ConvergenceError):
            return EXIT_SOLVER
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
