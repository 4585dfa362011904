"""Operator CLI: catalog generation, the service, scripted logins, reports.

All commands are deterministic for a given --seed and write reports to
stdout as JSON; failures exit nonzero with the reason on stderr.
"""

from __future__ import annotations

import json
import random

import click
import httpx
import uvicorn

from .analysis import observation_candidates, password_space, pin_space_ratio
from .config import load_config
from .errors import CurvepassError
from .images import (
    DegradeParams,
    degrade,
    generate_synthetic_catalog,
    load_catalog,
    save_catalog,
)
from .service import EmbeddedServer, create_app
from .simulate import SimSpec, parse_noise, run_simulation


@click.group()
def main() -> None:
    """Curve-drawing graphical password toolkit."""


@main.group()
def catalog() -> None:
    """Image catalog management."""


@catalog.command("gen")
@click.option("--count", type=int, required=True, help="number of images")
@click.option("--seed", type=int, default=7, show_default=True)
@click.option("--out", type=click.Path(), required=True, help="output directory")
def catalog_gen(count: int, seed: int, out: str) -> None:
    """Generate a synthetic catalog: PNG rasters plus manifest.json."""
    if count < 1:
        raise click.BadParameter("--count must be >= 1")
    images = generate_synthetic_catalog(count, seed)
    manifest = save_catalog(images, out)
    click.echo(json.dumps({"count": len(images), "manifest": str(manifest)}))


@catalog.command("degrade")
@click.option("--manifest", type=click.Path(exists=True), required=True)
@click.option("--out", type=click.Path(), required=True, help="output directory")
@click.option("--contrast", type=float, default=0.4, show_default=True)
@click.option("--brightness", type=float, default=70.0, show_default=True)
def catalog_degrade(manifest: str, out: str, contrast: float, brightness: float) -> None:
    """Write the low-contrast challenge variants of a catalog."""
    try:
        params = DegradeParams(contrast=contrast, brightness=brightness)
        images = [degrade(img, params) for img in load_catalog(manifest)]
    except (CurvepassError, ValueError) as exc:
        raise click.ClickException(str(exc))
    written = save_catalog(images, out)
    click.echo(json.dumps({"count": len(images), "manifest": str(written)}))


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(config_path: str | None, host: str, port: int) -> None:
    """Run the authentication service."""
    cfg = load_config(config_path)
    uvicorn.run(create_app(cfg), host=host, port=port)


@main.group()
def simulate() -> None:
    """Scripted end-to-end runs against an embedded service."""


@simulate.command("login")
@click.option("--user", required=True)
@click.option("--runs", type=int, default=100, show_default=True)
@click.option("--noise", default="ideal", show_default=True, help="ideal or jitter:SIGMA")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--parallel", type=int, default=1, show_default=True)
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
def simulate_login(
    user: str, runs: int, noise: str, seed: int, parallel: int, config_path: str | None
) -> None:
    """Enroll a user with a seeded password and replay logins over HTTP.

    The embedded service runs with deterministic challenge layouts derived
    from --seed and with lockout disabled, so noise studies are not cut
    short after three rejections.
    """
    try:
        model, sigma = parse_noise(noise)
        spec = SimSpec(runs=runs, noise_model=model, jitter_px=sigma, seed=seed)
    except CurvepassError as exc:
        raise click.BadParameter(str(exc))
    cfg = load_config(config_path)
    cfg.test_seed = seed
    cfg.lockout_threshold = runs + 1
    app = create_app(cfg)
    engine = app.state.engine
    image_ids = [img.id for img in engine.catalog]
    pass_images = random.Random(seed).sample(image_ids, cfg.password_length)
    try:
        with EmbeddedServer(app) as server:
            with httpx.Client(base_url=server.base_url, timeout=30.0) as client:
                client.post(f"/users/{user}/enroll", json={"image_ids": pass_images}) \
                    .raise_for_status()
                summary = run_simulation(
                    client, user, pass_images, spec, cfg.grid(), parallel=parallel
                )
    except httpx.HTTPStatusError as exc:
        raise click.ClickException(f"{exc.response.status_code}: {exc.response.text}")
    summary["user"] = user
    summary["noise"] = noise
    summary["seed"] = seed
    click.echo(json.dumps(summary, indent=2))


@main.group()
def analyze() -> None:
    """Security reports."""


@analyze.command("space")
@click.option("-N", "--catalog-size", "catalog_size", type=int, required=True)
@click.option("-n", "--password-length", "password_length", type=int, required=True)
@click.option("--pin-alphabet", type=int, default=36, show_default=True)
@click.option("--pin-length", type=int, default=4, show_default=True)
def analyze_space(
    catalog_size: int, password_length: int, pin_alphabet: int, pin_length: int
) -> None:
    """Password-space size, bits, and ratio to a PIN space."""
    try:
        report = password_space(catalog_size, password_length)
        ratio = pin_space_ratio(report, pin_alphabet, pin_length)
    except CurvepassError as exc:
        raise click.ClickException(str(exc))
    out = report.as_dict()
    out["pin_alphabet"] = pin_alphabet
    out["pin_length"] = pin_length
    out["pin_ratio"] = ratio
    click.echo(json.dumps(out))


@analyze.command("attack")
@click.option("--trace", required=True, help="comma-separated image ids in crossing order")
@click.option("-n", "--password-length", "password_length", type=int, required=True)
@click.option("--truth", default=None, help="comma-separated true password for the contains check")
def analyze_attack(trace: str, password_length: int, truth: str | None) -> None:
    """Candidate passwords an observer of the full trace is left with."""
    observed = [t.strip() for t in trace.split(",") if t.strip()]
    truth_ids = [t.strip() for t in truth.split(",")] if truth else None
    try:
        report = observation_candidates(observed, password_length, truth_ids)
    except CurvepassError as exc:
        raise click.ClickException(str(exc))
    click.echo(json.dumps(report.as_dict()))


if __name__ == "__main__":
    main()
