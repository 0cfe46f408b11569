"""Command-line client for the verification service.

The CLI is a thin HTTP client: it posts the run configuration to the
service and formats the response.  By default it talks to the in-process
app through an ASGI transport, so no server needs to be running; pass
--server to target a remote instance.

Exit codes: 0 all asserted checks pass, 1 any failure or numerical error,
2 invalid configuration.
"""

from __future__ import annotations

import asyncio
import json
import sys

import click
import httpx

DEFAULT_SUITES = ["clifford-axioms", "fierz", "geometry", "integrability",
                  "ky-cky", "brackets", "symmetry-ops"]


def _post(path: str, payload: dict, server: str | None) -> httpx.Response:
    async def go():
        if server:
            async with httpx.AsyncClient(base_url=server, timeout=3600.0) as client:
                return await client.post(path, json=payload)
        from .service import app
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport,
                                     base_url="http://spingeo.internal",
                                     timeout=3600.0) as client:
            return await client.post(path, json=payload)

    return asyncio.run(go())


def _config_payload(space, dim, curvature, suite, samples, tol, seed):
    payload = {
        "space": space,
        "dim": dim,
        "suites": list(suite),
        "samples": samples,
        "tolerance": tol,
        "seed": seed,
    }
    if curvature is not None:
        payload["curvature"] = curvature
    return payload


def _emit(report: dict, out):
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _summarize(report: dict):
    for check in report.get("checks", []):
        if check["asserted"]:
            status = "PASS" if check["passed"] else "FAIL"
        else:
            status = "REPORT"
        line = (f"{status} {check['name']}: residual {check['max_residual']}"
                f" (tolerance {check['tolerance']}, {check['mode']})")
        if check.get("note"):
            line += f"  [{check['note']}]"
        click.echo(line, err=True)
    verdict = "PASS" if report.get("overall_pass") else "FAIL"
    click.echo(f"overall: {verdict}", err=True)


def _handle(resp: httpx.Response, out, want_summary=True) -> int:
    if resp.status_code == 422:
        detail = resp.json().get("detail", resp.text)
        raise click.UsageError(f"invalid configuration: {detail}")
    resp.raise_for_status()
    report = resp.json()
    _emit(report, out)
    if want_summary:
        _summarize(report)
    return 0 if report.get("overall_pass") else 1


space_opts = [
    click.option("--space", type=click.Choice(["flat", "sphere", "hyperbolic"]),
                 default="flat", show_default=True),
    click.option("--dim", type=click.IntRange(2, 6), default=3, show_default=True),
    click.option("--curvature", type=float, default=None,
                 help="Sectional curvature; sign must match the space kind."),
    click.option("--suite", multiple=True,
                 help="Suite to run (repeatable); defaults to the operator suites."),
    click.option("--samples", type=int, default=100, show_default=True),
    click.option("--tol", type=float, default=1e-8, show_default=True,
                 help="Residual tolerance for the 1e-8-family checks."),
    click.option("--seed", type=int, default=0, show_default=True),
    click.option("--out", type=click.Path(dir_okay=False), default=None,
                 help="Write the JSON report here instead of stdout."),
    click.option("--server", default=None,
                 help="URL of a running service; in-process by default."),
]


def add_options(options):
    def wrap(fn):
        for option in reversed(options):
            fn = option(fn)
        return fn
    return wrap


@click.group()
def main():
    """Verification engine for spin geometry on constant-curvature spaces."""


@main.command()
@add_options(space_opts)
def verify(space, dim, curvature, suite, samples, tol, seed, out, server):
    """Run verification suites and emit a report."""
    suites = list(suite) or DEFAULT_SUITES
    payload = _config_payload(space, dim, curvature, suites, samples, tol, seed)
    resp = _post("/verify", payload, server)
    sys.exit(_handle(resp, out))


@main.command()
@add_options(space_opts)
def table(space, dim, curvature, suite, samples, tol, seed, out, server):
    """Run superalgebra suites and emit structure-constant tables."""
    suites = list(suite) or ["killing-superalgebra", "conformal"]
    payload = _config_payload(space, dim, curvature, suites, samples, tol, seed)
    resp = _post("/table", payload, server)
    sys.exit(_handle(resp, out, want_summary=False))


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the verification service."""
    import uvicorn

    uvicorn.run("spingeo.service:app", host=host, port=port)


if __name__ == "__main__":
    main()
