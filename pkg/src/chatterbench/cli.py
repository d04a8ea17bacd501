"""Command-line front end: a thin client of the HTTP service.

Every command (except ``serve`` and ``default-config``) turns its arguments
into one or two service requests and renders the JSON responses to files or
stdout. By default the service app runs in-process behind an ASGI test
transport, so no server needs to be up; ``--server URL`` switches the same
commands to a remote instance.

Exit codes: 0 success, 2 configuration/validation error, 3 partial scenario
failure, 1 transport or server fault.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

import httpx

from .scenarios import default_config_text

EXIT_OK = 0
EXIT_FAULT = 1
EXIT_CONFIG = 2
EXIT_PARTIAL = 3

_TIMEOUT = 600.0


def _make_client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=_TIMEOUT)
    # in-process: drive the FastAPI app directly through the ASGI interface
    from fastapi.testclient import TestClient

    from .service import create_app

    return TestClient(create_app())


def _fail_from_response(resp: httpx.Response) -> int:
    try:
        body = resp.json()
    except ValueError:
        body = {"error": "http", "detail": resp.text}
    print(f"error ({resp.status_code}): {json.dumps(body)}", file=sys.stderr)
    return EXIT_CONFIG if resp.status_code == 422 else EXIT_FAULT


def _write_atomic(path: Path, data: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _f(value) -> str:
    # shortest exact round-trip form; keeps regenerated files byte-identical
    return repr(float(value))


def _render_timeseries_csv(ts: dict) -> str:
    cols = ["t", "x", "sigma", "u_a"] + (["z"] if ts.get("z") is not None else [])
    lines = [",".join(cols)]
    for row in zip(*(ts[c] for c in cols)):
        lines.append(",".join(_f(v) for v in row))
    return "\n".join(lines) + "\n"


def _render_nyquist_csv(samples: list[dict]) -> str:
    lines = ["omega,re,im"]
    lines += [f"{_f(s['omega'])},{_f(s['re'])},{_f(s['im'])}" for s in samples]
    return "\n".join(lines) + "\n"


def _render_df_csv(samples: list[dict]) -> str:
    lines = ["sigma_hat,re,im"]
    lines += [f"{_f(s['sigma_hat'])},{_f(s['re'])},{_f(s['im'])}" for s in samples]
    return "\n".join(lines) + "\n"


_TABLE_COLS = (
    "label",
    "sigma_hb",
    "sigma_sim",
    "x_hb",
    "x_sim",
    "omega_hb",
    "omega_sim",
    "err_sigma",
    "err_x",
    "err_omega",
)


def _render_table_csv(table: list[dict]) -> str:
    lines = [",".join(_TABLE_COLS)]
    for row in table:
        lines.append(
            ",".join(row["label"] if c == "label" else _f(row[c]) for c in _TABLE_COLS)
        )
    return "\n".join(lines) + "\n"


def _read_config(arg: str) -> str | None:
    """Config file text; the literal name ``default`` means the bundled set."""
    path = Path(arg)
    if path.exists():
        return path.read_text()
    if arg == "default":
        return default_config_text()
    print(f"error: config file not found: {arg}", file=sys.stderr)
    return None


def _cmd_run(args) -> int:
    config_text = _read_config(args.config)
    if config_text is None:
        return EXIT_CONFIG
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    with _make_client(args.server) as client:
        resp = client.post(
            "/scenarios/run",
            json={
                "config_text": config_text,
                "discard_fraction": args.discard_fraction,
                "nyquist_points": args.nyquist_points,
            },
        )
    if resp.status_code != 200:
        return _fail_from_response(resp)
    body = resp.json()

    for result in body["results"]:
        label = result["label"]
        _write_atomic(out_dir / f"{label}_timeseries.csv", _render_timeseries_csv(result["timeseries"]))
        _write_atomic(out_dir / f"{label}_nyquist.csv", _render_nyquist_csv(result["nyquist"]))
        summary = {key: value for key, value in result.items() if key not in ("timeseries", "nyquist")}
        _write_atomic(
            out_dir / f"{label}_summary.json",
            json.dumps(summary, indent=2, sort_keys=True) + "\n",
        )
    _write_atomic(out_dir / "table1.csv", _render_table_csv(body["table"]))

    print(f"{len(body['results'])} scenario(s) completed, {len(body['failures'])} failed; "
          f"outputs in {out_dir}")
    header = f"{'label':<16} {'sigma_hb':>10} {'sigma_sim':>10} {'x_hb':>10} {'x_sim':>10} {'omega_hb':>9} {'omega_sim':>9}"
    print(header)
    for row in body["table"]:
        print(
            f"{row['label']:<16} {row['sigma_hb']:>10.5g} {row['sigma_sim']:>10.5g} "
            f"{row['x_hb']:>10.5g} {row['x_sim']:>10.5g} {row['omega_hb']:>9.5g} {row['omega_sim']:>9.5g}"
        )
    for failure in body["failures"]:
        print(
            f"failed: {failure['label']}: {failure['error_type']}: {failure['message']}",
            file=sys.stderr,
        )
    return EXIT_PARTIAL if body["failures"] else EXIT_OK


def _cmd_nyquist(args) -> int:
    config_text = _read_config(args.config)
    if config_text is None:
        return EXIT_CONFIG
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    with _make_client(args.server) as client:
        parsed = client.post("/scenarios/parse", json={"config_text": config_text})
        if parsed.status_code != 200:
            return _fail_from_response(parsed)
        match = [sc for sc in parsed.json()["scenarios"] if sc["label"] == args.scenario]
        if not match:
            labels = [sc["label"] for sc in parsed.json()["scenarios"]]
            print(f"error: no scenario {args.scenario!r} in config (have: {labels})", file=sys.stderr)
            return EXIT_CONFIG
        scenario = match[0]

        payload: dict = {
            "plant": scenario["plant"],
            "manifold": scenario["manifold"],
            "points": args.points,
        }
        if args.omega_min is not None:
            payload["omega_min"] = args.omega_min
        if args.omega_max is not None:
            payload["omega_max"] = args.omega_max
        resp = client.post("/nyquist", json=payload)
    if resp.status_code != 200:
        return _fail_from_response(resp)
    body = resp.json()

    curve_path = out_dir / f"{args.scenario}_nyquist.csv"
    df_path = out_dir / f"{args.scenario}_nyquist_df.csv"
    _write_atomic(curve_path, _render_nyquist_csv(body["samples"]))
    _write_atomic(df_path, _render_df_csv(body["df_samples"]))
    print(f"wrote {curve_path} and {df_path}")
    return EXIT_OK


def _cmd_tune(args) -> int:
    with _make_client(args.server) as client:
        resp = client.post(
            "/tune",
            json={
                "tau_min": args.tau_min,
                "tau_max": args.tau_max,
                "omega_max": args.omega_max,
                "k": args.k,
                "alpha": args.alpha,
            },
        )
    if resp.status_code != 200:
        return _fail_from_response(resp)
    print(json.dumps(resp.json(), indent=2, sort_keys=True))
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("chatterbench.service.app:app", host=args.host, port=args.port)
    return EXIT_OK


def _cmd_default_config(args) -> int:
    sys.stdout.write(default_config_text())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chatterbench",
        description="Chattering prediction and measurement for relay loops "
        "with static or dynamic sliding manifolds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario file and export CSV/JSON reports")
    run.add_argument("config", help="scenario file path, or 'default' for the bundled benchmark")
    run.add_argument("--out-dir", default=".", help="output directory (default: current)")
    run.add_argument("--discard-fraction", type=float, default=0.5,
                     help="fraction of the horizon discarded before measuring (default 0.5)")
    run.add_argument("--nyquist-points", type=int, default=600)
    run.add_argument("--server", default=None, help="remote service URL (default: in-process)")
    run.set_defaults(func=_cmd_run)

    nyq = sub.add_parser("nyquist", help="export Nyquist samples for one scenario")
    nyq.add_argument("config", help="scenario file path, or 'default'")
    nyq.add_argument("--scenario", required=True, help="scenario label inside the config")
    nyq.add_argument("--omega-min", type=float, default=None, help="rad/s (default: 1e-3/tau)")
    nyq.add_argument("--omega-max", type=float, default=None, help="rad/s (default: 1e3/tau)")
    nyq.add_argument("--points", type=int, default=600)
    nyq.add_argument("--out-dir", default=".")
    nyq.add_argument("--server", default=None)
    nyq.set_defaults(func=_cmd_nyquist)

    tune = sub.add_parser("tune", help="choose dynamic-manifold parameters for a frequency budget")
    tune.add_argument("--tau-min", type=float, required=True)
    tune.add_argument("--tau-max", type=float, required=True)
    tune.add_argument("--omega-max", type=float, required=True, help="frequency budget [rad/s]")
    tune.add_argument("--k", type=float, required=True, help="relay gain")
    tune.add_argument("--alpha", type=float, default=0.98, help="g = -alpha*f spacing (default 0.98)")
    tune.add_argument("--server", default=None)
    tune.set_defaults(func=_cmd_tune)

    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=_cmd_serve)

    dump = sub.add_parser("default-config", help="print the bundled benchmark scenario file")
    dump.set_defaults(func=_cmd_default_config)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except httpx.HTTPError as exc:
        print(f"transport error: {exc}", file=sys.stderr)
        return EXIT_FAULT


if __name__ == "__main__":
    sys.exit(main())
