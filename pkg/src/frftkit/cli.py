"""Command-line front end.

The CLI is a thin client of the HTTP service: every subcommand issues a
request against the FastAPI app, by default through an in-process transport
(no socket, single process), or against a running server when ``--server``
is given.  Exit codes: 0 success, 1 usage error, 2 data/format error,
3 self-test failure.
"""

from __future__ import annotations

import argparse
import base64
import json
import os
import sys
import tempfile

import httpx

__all__ = ["main", "ServiceClient"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_SELFTEST = 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; the contract wants 1
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let values like "-0.2:0.2" pass as arguments rather than flags
        import re as _re

        self._negative_number_matcher = _re.compile(r"^-\d+$|^-\d*\.\d+.*$")

    def error(self, message):
        raise CliError(f"{self.prog}: {message}", EXIT_USAGE)


class ServiceClient:
    """HTTP client bound either to a live server or to the in-process app."""

    def __init__(self, server: str | None = None):
        self._server = server.rstrip("/") if server else None
        self._client = None
        self._app = None
        if self._server:
            self._client = httpx.Client(base_url=self._server, timeout=600.0)
        else:
            from .service import create_app

            self._app = create_app()

    def close(self):
        if self._client is not None:
            self._client.close()

    def _request(self, route: str, payload: dict) -> httpx.Response:
        if self._client is not None:
            return self._client.post(route, json=payload)

        # in-process: drive the ASGI app directly, no socket involved
        import asyncio

        async def go():
            transport = httpx.ASGITransport(app=self._app)
            async with httpx.AsyncClient(
                transport=transport, base_url="http://frftkit.local", timeout=600.0
            ) as client:
                return await client.post(route, json=payload)

        return asyncio.run(go())

    def post(self, route: str, payload: dict) -> dict:
        try:
            resp = self._request(route, payload)
        except httpx.HTTPError as exc:
            raise CliError(f"service request failed: {exc}", EXIT_DATA) from exc
        if resp.status_code == 200:
            return resp.json()
        detail = None
        try:
            detail = resp.json().get("detail")
        except (ValueError, AttributeError):
            pass
        if isinstance(detail, dict) and "message" in detail:
            code = EXIT_DATA if detail.get("category") == "data" else EXIT_USAGE
            raise CliError(detail["message"], code)
        if resp.status_code == 422:
            raise CliError(f"invalid request: {json.dumps(detail)}", EXIT_USAGE)
        raise CliError(f"service error {resp.status_code}: {resp.text[:500]}", EXIT_DATA)


def _read_b64(path: str) -> str:
    try:
        with open(path, "rb") as fh:
            return base64.b64encode(fh.read()).decode("ascii")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_DATA) from exc


def _write_atomic(path: str, data: bytes) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".frftkit-")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(data)
            umask = os.umask(0)
            os.umask(umask)
            os.chmod(tmp, 0o666 & ~umask)  # mkstemp creates 0600
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_DATA) from exc


def _write_b64(path: str, b64: str) -> None:
    _write_atomic(path, base64.b64decode(b64))


def _order_pair(text: str) -> tuple[str, str]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2 or not all(parts):
        raise CliError(f"--order expects two comma-separated angles, got {text!r}", EXIT_USAGE)
    return parts[0], parts[1]


def _key_payload(path: str) -> dict:
    from .crypto import format_angle, load_key
    from .errors import KeyFormatError

    try:
        key = load_key(path)
    except KeyFormatError as exc:
        raise CliError(f"key file {path}: {exc}", EXIT_DATA) from exc
    except OSError as exc:
        raise CliError(f"cannot read key file {path}: {exc}", EXIT_DATA) from exc
    return {
        "alpha1": format_angle(key.alpha[0]),
        "alpha2": format_angle(key.alpha[1]),
        "gamma1": format_angle(key.gamma[0]),
        "gamma2": format_angle(key.gamma[1]),
        "beta": key.beta,
        "seed1": key.seed1,
        "seed2": key.seed2,
    }


def _input_format(path: str) -> str:
    return "frc1" if path.lower().endswith((".frc", ".frc1", ".cfield")) else "pgm"


def build_parser() -> _Parser:
    parser = _Parser(prog="frftkit", description=__doc__)
    parser.add_argument("--server", metavar="URL", default=None,
                        help="base URL of a running service; default is in-process")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("frft", help="fractional Fourier transform of an image or field")
    p.add_argument("--input", required=True, help="input PGM image or FRC1 field")
    p.add_argument("--output", required=True, help="output FRC1 field")
    p.add_argument("--order", required=True, type=str,
                   help="per-axis angles 'a1,a2' as radians or 'kpi/m' literals")
    p.add_argument("--path", choices=("fast", "direct"), default="fast")
    p.add_argument("--inverse", action="store_true", help="apply the inverse transform")
    p.add_argument("--amplitude", metavar="OUT.pgm", help="write an amplitude rendering")
    p.add_argument("--amplitude-scale", choices=("linear", "log"), default="linear")
    p.add_argument("--surface", metavar="OUT.csv", help="write an x,y,re,im,abs surface export")

    p = sub.add_parser("riesz", help="fractional Riesz potential / transform / Laplacian")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True, help="output FRC1 field")
    p.add_argument("--order", required=True, type=str)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--beta", type=float, help="Riesz potential exponent in (0,2)")
    group.add_argument("--transform-axis", type=int, choices=(1, 2), help="Riesz transform component")
    group.add_argument("--laplacian", type=float, metavar="Z", help="fractional Laplacian exponent")
    p.add_argument("--oracle", action="store_true",
                   help="use the dense spatial reference route (small grids)")
    p.add_argument("--path", choices=("fast", "direct"), default="fast")
    p.add_argument("--oversample", type=int, default=4)
    p.add_argument("--amplitude", metavar="OUT.pgm")
    p.add_argument("--amplitude-scale", choices=("linear", "log"), default="linear")
    p.add_argument("--image", metavar="OUT.pgm", help="write |result| as an 8-bit raster")

    p = sub.add_parser("encrypt", help="double-phase encrypt an image")
    p.add_argument("--image", required=True, help="input PGM image")
    p.add_argument("--cipher", required=True, help="output FRC1 cipher field")
    p.add_argument("--key", required=True, help="key file")
    p.add_argument("--baseline-frft", action="store_true",
                   help="disable the amplitude-symbol channel")

    p = sub.add_parser("decrypt", help="decrypt a cipher field")
    p.add_argument("--cipher", required=True, help="input FRC1 cipher field")
    p.add_argument("--image", required=True, help="output PGM image")
    p.add_argument("--key", required=True)
    p.add_argument("--reference", help="original PGM; prints the recovery MSE")
    p.add_argument("--baseline-frft", action="store_true")

    p = sub.add_parser("sweep", help="key-sensitivity MSE curve")
    p.add_argument("--image", required=True)
    p.add_argument("--key", required=True)
    p.add_argument("--param", required=True,
                   choices=("beta", "alpha1", "alpha2", "gamma1", "gamma2"))
    p.add_argument("--range", required=True, metavar="LO:HI")
    p.add_argument("--steps", required=True, type=int)
    p.add_argument("--out", required=True, help="output CSV of deviation,mse")
    p.add_argument("--baseline-frft", action="store_true")

    sub.add_parser("selftest", help="run the symbol-identity suite")

    p = sub.add_parser("synth", help="write the four-quadrant synthetic test image")
    p.add_argument("--size", type=int, default=256, help="even side length")
    p.add_argument("--out", required=True, help="output PGM path")

    p = sub.add_parser("serve", help="run the HTTP service with uvicorn")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _cmd_frft(client: ServiceClient, args) -> int:
    payload = {
        "input_b64": _read_b64(args.input),
        "input_format": _input_format(args.input),
        "order": list(_order_pair(args.order)),
        "path": args.path,
        "inverse": args.inverse,
        "amplitude": args.amplitude_scale if args.amplitude else None,
        "surface": bool(args.surface),
    }
    resp = client.post("/v1/frft", payload)
    _write_b64(args.output, resp["field_b64"])
    if args.amplitude:
        _write_b64(args.amplitude, resp["amplitude_b64"])
    if args.surface:
        _write_b64(args.surface, resp["surface_b64"])
    print(f"wrote {args.output}")
    return EXIT_OK


def _cmd_riesz(client: ServiceClient, args) -> int:
    payload = {
        "input_b64": _read_b64(args.input),
        "input_format": _input_format(args.input),
        "order": list(_order_pair(args.order)),
        "beta": args.beta,
        "transform_axis": args.transform_axis,
        "laplacian_z": args.laplacian,
        "oracle": args.oracle,
        "path": args.path,
        "oversample": args.oversample,
        "amplitude": args.amplitude_scale if args.amplitude else None,
        "output_image": bool(args.image),
    }
    resp = client.post("/v1/riesz", payload)
    _write_b64(args.output, resp["field_b64"])
    if args.amplitude:
        _write_b64(args.amplitude, resp["amplitude_b64"])
    if args.image:
        _write_b64(args.image, resp["image_b64"])
    print(f"wrote {args.output}")
    return EXIT_OK


def _cmd_encrypt(client: ServiceClient, args) -> int:
    payload = {
        "image_b64": _read_b64(args.image),
        "key": _key_payload(args.key),
        "beta_channel": not args.baseline_frft,
    }
    resp = client.post("/v1/encrypt", payload)
    _write_b64(args.cipher, resp["cipher_b64"])
    print(f"wrote {args.cipher}")
    return EXIT_OK


def _cmd_decrypt(client: ServiceClient, args) -> int:
    payload = {
        "cipher_b64": _read_b64(args.cipher),
        "key": _key_payload(args.key),
        "beta_channel": not args.baseline_frft,
        "reference_b64": _read_b64(args.reference) if args.reference else None,
    }
    resp = client.post("/v1/decrypt", payload)
    _write_b64(args.image, resp["image_b64"])
    print(f"wrote {args.image}")
    if resp.get("mse_vs_reference") is not None:
        print(f"mse = {resp['mse_vs_reference']:.6e}")
    return EXIT_OK


def _cmd_sweep(client: ServiceClient, args) -> int:
    lo, sep, hi = args.range.partition(":")
    if not sep:
        raise CliError(f"--range expects LO:HI, got {args.range!r}", EXIT_USAGE)
    try:
        lo_f, hi_f = float(lo), float(hi)
    except ValueError as exc:
        raise CliError(f"--range expects numeric LO:HI, got {args.range!r}", EXIT_USAGE) from exc
    if args.steps < 1:
        raise CliError("--steps must be at least 1", EXIT_USAGE)
    if hi_f < lo_f:
        raise CliError("sweep range is empty (hi < lo)", EXIT_USAGE)
    payload = {
        "image_b64": _read_b64(args.image),
        "key": _key_payload(args.key),
        "parameter": args.param,
        "lo": lo_f,
        "hi": hi_f,
        "steps": args.steps,
        "baseline_frft": args.baseline_frft,
    }
    resp = client.post("/v1/sweep", payload)
    lines = ["deviation,mse"]
    for d, m in zip(resp["deviations"], resp["mse"]):
        lines.append(f"{d:.17g},{m:.17g}")
    _write_atomic(args.out, ("\n".join(lines) + "\n").encode("ascii"))
    print(f"wrote {args.out} ({len(resp['deviations'])} points"
          + (f", {len(resp['skipped'])} skipped" if resp["skipped"] else "") + ")")
    return EXIT_OK


def _cmd_selftest(client: ServiceClient, args) -> int:
    resp = client.post("/v1/selftest", {})
    for check in resp["checks"]:
        state = "pass" if check["passed"] else "FAIL"
        print(f"[{state}] {check['name']}: max err {check['max_error']:.3e}"
              f" (tol {check['tolerance']:.0e})")
    return EXIT_OK if resp["passed"] else EXIT_SELFTEST


def _cmd_synth(args) -> int:
    # purely local file synthesis; no service round trip needed
    from .gridio import pgm_bytes, synth_test_image

    try:
        img = synth_test_image(args.size)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    _write_atomic(args.out, pgm_bytes(img))
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise CliError("a subcommand is required (see --help)", EXIT_USAGE)
        if args.command == "serve":
            return _cmd_serve(args)
        if args.command == "synth":
            return _cmd_synth(args)
        client = ServiceClient(args.server)
        try:
            handler = {
                "frft": _cmd_frft,
                "riesz": _cmd_riesz,
                "encrypt": _cmd_encrypt,
                "decrypt": _cmd_decrypt,
                "sweep": _cmd_sweep,
                "selftest": _cmd_selftest,
            }[args.command]
            return handler(client, args)
        finally:
            client.close()
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
