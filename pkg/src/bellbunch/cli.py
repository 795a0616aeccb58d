"""Command-line front end.

The CLI is a thin client over the HTTP service: by default requests are
dispatched to the in-process app, or to a remote server with ``--url``.
Exit codes: 0 success, 1 usage error, 2 physics/convention failure.
"""
from __future__ import annotations

import argparse
import asyncio
import json
import sys
from typing import Optional

import httpx

USAGE_EXIT = 1
PHYSICS_EXIT = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage failures exit with code 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _parse_weights(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"invalid weights list {text!r}")


def _load_config(path: str) -> list[str]:
    """Turn a flat key=value file into argv tokens (flags still override)."""
    tokens: list[str] = []
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected key=value")
                key, value = line.split("=", 1)
                tokens += [f"--{key.strip().replace('_', '-')}", value.strip()]
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}")
    return tokens


def request(path: str, payload: dict, url: Optional[str] = None) -> dict:
    """POST to the service; in-process unless a remote URL is given."""
    if url:
        with httpx.Client(base_url=url, timeout=300.0) as client:
            response = client.post(path, json=payload)
        return _handle(response)

    async def call() -> httpx.Response:
        from .service import app

        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://bellbunch"
        ) as client:
            return await client.post(path, json=payload)

    return _handle(asyncio.run(call()))


class PhysicsError(Exception):
    pass


def _handle(response: httpx.Response) -> dict:
    if response.status_code == 200:
        return response.json()
    try:
        detail = response.json().get("detail", response.text)
    except ValueError:
        detail = response.text
    if response.status_code == 409:
        raise PhysicsError(str(detail))
    raise UsageError(str(detail))


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _scan_csv(body: dict) -> str:
    lines = [f"{body['control_name']},probability"]
    lines += [f"{_fmt(c)},{_fmt(p)}"
              for c, p in zip(body["control"], body["probability"])]
    return "\n".join(lines) + "\n"


def _table_csv(body: dict) -> str:
    order = body["order"]
    lines = ["first," + ",".join(order)]
    for kind, row in zip(order, body["cells"]):
        lines.append(kind + "," + ",".join(cell["kind"] for cell in row))
    return "\n".join(lines) + "\n"


def _rows_csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) if isinstance(v, float) else str(v)
                              for v in row))
    return "\n".join(lines) + "\n"


def _emit(args, csv_text: str, body: dict, sidecar: Optional[dict] = None) -> None:
    """Write the result in the chosen format; no partial files on failure."""
    json_text = json.dumps(body, sort_keys=True, indent=2) + "\n"
    text = csv_text if args.format == "csv" else json_text
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        if args.format == "csv" and sidecar is not None:
            with open(args.output + ".json", "w", encoding="utf-8") as fh:
                fh.write(json.dumps(sidecar, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(text)


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="flat key=value config file; flags override")
    sub.add_argument("--url", help="remote service URL (default: in-process)")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--output", help="write results to this path instead of stdout")


def build_parser() -> _Parser:
    parser = _Parser(prog="bellbunch",
                     description="Bell-state bunching/anti-bunching simulator")
    subs = parser.add_subparsers(dest="command", required=True)

    scan = subs.add_parser("scan-delay", parents=[], help="four-fold rate vs delay")
    scan.add_argument("--first", default="psi-minus")
    scan.add_argument("--second", default="psi-minus")
    scan.add_argument("--basis-a", default="hv")
    scan.add_argument("--basis-b", default="pm")
    scan.add_argument("--dt-min", type=float, default=0.0,
                      help="start of the delay grid, in units of t_c")
    scan.add_argument("--dt-max", type=float, default=3.0,
                      help="end of the delay grid, in units of t_c")
    scan.add_argument("--steps", type=int, default=41)
    scan.add_argument("--t-c", type=float, default=1.0)
    scan.add_argument("--omega", type=float, default=0.0,
                      help="pass-phase frequency, cycles per t_c")
    scan.add_argument("--phase-mode", choices=("averaged", "coherent"),
                      default="averaged")
    scan.add_argument("--n-d", type=int, default=1)
    scan.add_argument("--weights", type=_parse_weights, default=None)
    scan.add_argument("--pass-ratio", type=float, default=1.0)
    _add_common(scan)

    table = subs.add_parser("table", help="4x4 bunching classification grid")
    table.add_argument("--basis-a", default="hv")
    table.add_argument("--basis-b", default="pm")
    _add_common(table)

    modes = subs.add_parser("modes-sweep", help="four-fold scaling vs mode count")
    modes.add_argument("--max", dest="max_n", type=int, default=6)
    modes.add_argument("--basis-a", default="hv")
    modes.add_argument("--basis-b", default="pm")
    _add_common(modes)

    alpha = subs.add_parser("alpha-sweep",
                            help="dip/peak ratio vs singlet content")
    alpha.add_argument("--basis-a", default="hv")
    alpha.add_argument("--basis-b", default="pm")
    alpha.add_argument("--steps", type=int, default=21)
    alpha.add_argument("--alpha-lo", type=float, default=None)
    alpha.add_argument("--alpha-hi", type=float, default=1.0)
    _add_common(alpha)

    vis = subs.add_parser("visibility", help="four-fold rate vs analyzer angle")
    vis.add_argument("--alpha", type=float, default=None)
    vis.add_argument("--n-d", type=int, default=1)
    vis.add_argument("--weights", type=_parse_weights, default=None)
    vis.add_argument("--steps", type=int, default=21)
    _add_common(vis)

    dump = subs.add_parser("state-dump", help="four-photon state as JSON records")
    dump.add_argument("--source", choices=("double-pass", "multimode"),
                      default="double-pass")
    dump.add_argument("--first", default="psi-minus")
    dump.add_argument("--second", default="psi-minus")
    dump.add_argument("--dt", type=float, default=0.0)
    dump.add_argument("--t-c", type=float, default=1.0)
    dump.add_argument("--omega", type=float, default=0.0)
    dump.add_argument("--n-d", type=int, default=1)
    dump.add_argument("--weights", type=_parse_weights, default=None)
    dump.add_argument("--pass-ratio", type=float, default=1.0)
    _add_common(dump)

    return parser


def _inject_config(argv: list[str]) -> list[str]:
    """Splice key=value config tokens right after the subcommand name."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    if idx + 1 >= len(argv):
        raise UsageError("--config requires a path")
    tokens = _load_config(argv[idx + 1])
    # keep --config in place (it is a declared flag); prepend the loaded
    # tokens after the subcommand so explicit flags still win
    return argv[:1] + tokens + argv[1:]


def cmd_scan_delay(args) -> int:
    if args.steps < 1:
        raise UsageError("--steps must be at least 1")
    payload = {
        "first": args.first, "second": args.second,
        "basis_a": args.basis_a, "basis_b": args.basis_b,
        "dt_min": args.dt_min, "dt_max": args.dt_max, "steps": args.steps,
        "t_c": args.t_c, "omega": args.omega, "phase_mode": args.phase_mode,
        "n_d": args.n_d, "weights": args.weights, "pass_ratio": args.pass_ratio,
    }
    body = request("/scan-delay", payload, args.url)
    probs = body["probability"]
    at_zero = next(
        (p for c, p in zip(body["control"], probs) if abs(c) < 1e-12), None)
    summary = f"min={_fmt(min(probs))} max={_fmt(max(probs))}"
    if at_zero is not None:
        summary += f" ratio_at_zero={_fmt(at_zero)}"
    print(summary, file=sys.stderr)
    _emit(args, _scan_csv(body), body, sidecar=body["metadata"])
    return 0


def cmd_table(args) -> int:
    if args.basis_a.strip().lower() == args.basis_b.strip().lower():
        raise UsageError("bases must be mutually unbiased for the bunching protocol")
    body = request("/table", {"basis_a": args.basis_a, "basis_b": args.basis_b},
                   args.url)
    csv_text = _table_csv(body)
    print(csv_text, end="", file=sys.stderr)
    _emit(args, csv_text, body)
    return 0


def cmd_modes_sweep(args) -> int:
    if args.max_n < 1:
        raise UsageError("--max must be at least 1")
    body = request("/modes-sweep",
                   {"max_n": args.max_n,
                    "basis_a": args.basis_a, "basis_b": args.basis_b},
                   args.url)
    rows = [[r["n_d"], r["probability"], r["alpha_min"]] for r in body["rows"]]
    _emit(args, _rows_csv(["n_d", "probability", "alpha_min"], rows), body)
    return 0


def cmd_alpha_sweep(args) -> int:
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    payload = {"basis_a": args.basis_a, "basis_b": args.basis_b,
               "steps": args.steps, "alpha_lo": args.alpha_lo,
               "alpha_hi": args.alpha_hi}
    body = request("/alpha-sweep", payload, args.url)
    if body["crossover"] is None:
        print(f"crossover: none ({body['note']})", file=sys.stderr)
    else:
        print(f"crossover={_fmt(body['crossover'])}", file=sys.stderr)
    rows = list(zip(body["alpha"], body["ratio"]))
    _emit(args, _rows_csv(["alpha", "ratio"], [list(r) for r in rows]), body)
    return 0


def cmd_visibility(args) -> int:
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    payload = {"alpha": args.alpha, "n_d": args.n_d,
               "weights": args.weights, "steps": args.steps}
    body = request("/visibility", payload, args.url)
    print(f"visibility={_fmt(body['visibility'])}", file=sys.stderr)
    _emit(args, _scan_csv(body), body, sidecar=body["metadata"])
    return 0


def cmd_state_dump(args) -> int:
    payload = {"source": args.source, "first": args.first,
               "second": args.second, "dt": args.dt, "t_c": args.t_c,
               "omega": args.omega, "n_d": args.n_d,
               "weights": args.weights, "pass_ratio": args.pass_ratio}
    body = request("/state-dump", payload, args.url)
    args.format = "json"  # records have no tabular form
    _emit(args, "", body)
    return 0


_COMMANDS = {
    "scan-delay": cmd_scan_delay,
    "table": cmd_table,
    "modes-sweep": cmd_modes_sweep,
    "alpha-sweep": cmd_alpha_sweep,
    "visibility": cmd_visibility,
    "state-dump": cmd_state_dump,
}


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _inject_config(argv)
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except PhysicsError as exc:
        print(f"physics failure: {exc}", file=sys.stderr)
        return PHYSICS_EXIT
    except httpx.HTTPError as exc:
        print(f"error: service request failed: {exc}", file=sys.stderr)
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
