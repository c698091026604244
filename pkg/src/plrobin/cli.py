"""Command-line front end: eigenvalue solves, scans, and verification sweeps.

All numeric output carries 12 significant digits and runs are deterministic,
so identical invocations produce byte-identical output. Results go to stdout
or, with --out, to a file written atomically.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import sys

import click

from . import geometry, records
from .errors import PLRobinError, VerificationError
from .geometry import SpaceForm
from .levelsets import HFunctional, default_levels, level_set_data
from .problem import Annulus, Ball, RobinParams
from .rayleigh import minimize_quotient
from .shooting import SolverOptions, first_eigenvalue
from .verify import (default_sweep_cells, compare, rectangle_check, sweep)

__all__ = ["main"]


def _geometry_options(f):
    f = click.option("--kappa", type=click.IntRange(-1, 1), default=0,
                     show_default=True, help="Curvature sign of the model space.")(f)
    f = click.option("--dim", type=click.IntRange(min=2), default=2,
                     show_default=True, help="Dimension n.")(f)
    f = click.option("--sphere-radius", type=float, default=None,
                     help="Radius of the compact sphere model (sin-type warp).")(f)
    f = click.option("--diameter", type=float, default=None,
                     help="Derive the compact sphere radius from this diameter.")(f)
    return f


def _problem_options(f):
    f = click.option("--p", "p", type=float, default=2.0, show_default=True,
                     help="Exponent of the p-Laplacian.")(f)
    f = click.option("--beta", type=float, default=1.0, show_default=True,
                     help="Robin coefficient.")(f)
    return f


def _domain_options(f):
    f = click.option("--ball", type=float, default=None, metavar="R",
                     help="Geodesic ball of radius R.")(f)
    f = click.option("--annulus", type=float, nargs=2, default=None,
                     metavar="R1 R2", help="Annulus with radii R1 < R2.")(f)
    return f


def _run_options(f):
    f = click.option("--tol", type=float, default=1e-10, show_default=True,
                     help="Relative tolerance of the eigenvalue bracket.")(f)
    f = click.option("--grid", type=click.IntRange(min=32), default=2048,
                     show_default=True, help="Profile/quotient grid intervals.")(f)
    f = click.option("--out", "out_path", type=click.Path(dir_okay=False),
                     default=None, help="Write output to this file atomically.")(f)
    f = click.option("--format", "fmt", type=click.Choice(["json", "csv"]),
                     default="json", show_default=True)(f)
    return f


def _space(kappa: int, dim: int, sphere_radius: float | None,
           diameter: float | None = None) -> SpaceForm:
    if sphere_radius is not None and diameter is not None:
        raise click.UsageError("choose at most one of --sphere-radius or --diameter")
    if diameter is not None:
        sphere_radius = geometry.model_sphere_radius(kappa, dim, diameter)
    return SpaceForm(kappa, dim, sphere_radius)


def _domain(ball, annulus):
    if (ball is None) == (not annulus):
        raise click.UsageError("choose exactly one of --ball or --annulus")
    return Ball(ball) if ball is not None else Annulus(*annulus)


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        click.echo(text, nl=False)
    else:
        records.write_atomic(out_path, text)
        click.echo(f"wrote {out_path}", err=True)


def _emit_records(recs: list[dict], fmt: str, out_path: str | None) -> None:
    text = records.json_text(recs) if fmt == "json" else records.records_csv(recs)
    _emit(text, out_path)


@click.group()
@click.version_option()
def main():
    """First Robin eigenvalues of the p-Laplacian on radial domains."""


@main.command()
@click.option("--kappa", type=click.IntRange(-1, 1), default=0, show_default=True)
@click.option("--dim", type=click.IntRange(min=2), default=2, show_default=True)
@click.option("--diameter", type=float, default=1.0, show_default=True,
              help="Diameter entering the compact-model radius.")
@click.option("--avr", type=float, default=1.0, show_default=True,
              help="Asymptotic volume ratio.")
@click.option("--m", "m", type=click.IntRange(min=1), default=1, show_default=True,
              help="Codimension for the flat-disk volume ratio.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json",
              show_default=True)
def constants(kappa, dim, diameter, avr, m, out_path, fmt):
    """Model-space constants: sphere radius, volume ratios, Wallis integrals."""
    try:
        sphere_radius = geometry.model_sphere_radius(kappa, dim, diameter)
        record = {
            "kappa": kappa,
            "n": dim,
            "diameter": diameter,
            "sphere_radius": sphere_radius,
            "avr": avr,
            "m": m,
            "alpha": geometry.model_constants(dim, m, avr=avr,
                                              hyperbolic=kappa == -1).alpha,
            "theta": geometry.flat_disk_volume_ratio(avr, dim, m),
            "omega_n": geometry.unit_ball_volume(dim),
            "wallis_n": geometry.wallis(dim),
        }
    except PLRobinError as exc:
        raise click.UsageError(str(exc))
    _emit_records([record], fmt, out_path)


@main.command()
@_geometry_options
@_problem_options
@_domain_options
@click.option("--oracle", is_flag=True,
              help="Cross-check with the variational quotient minimizer.")
@click.option("--profile", "profile_path", type=click.Path(dir_okay=False),
              default=None, help="Also dump the r,v,w,f profile CSV here.")
@_run_options
def eig(kappa, dim, sphere_radius, diameter, p, beta, ball, annulus, oracle,
        profile_path, tol, grid, out_path, fmt):
    """First eigenvalue on a ball or annulus, with optional profile dump."""
    try:
        sf = _space(kappa, dim, sphere_radius, diameter)
        dom = _domain(ball, annulus)
        opts = SolverOptions(lam_rtol=tol, points=grid)
        sol = first_eigenvalue(sf, RobinParams(p, beta), dom, opts)
    except PLRobinError as exc:
        raise click.UsageError(str(exc))
    record = records.eigen_record(sol)
    if oracle:
        lam_est, _ = minimize_quotient(sf, RobinParams(p, beta), dom, grid)
        record["lambda_variational"] = records.round12(lam_est)
        record["cross_rel_dev"] = records.round12(
            abs(lam_est - sol.lam) / sol.lam)
    if profile_path is not None:
        records.write_atomic(profile_path, records.profile_csv(sol))
        click.echo(f"wrote {profile_path}", err=True)
    _emit_records([record], fmt, out_path)


@main.command()
@_geometry_options
@_problem_options
@_domain_options
@click.option("--levels", type=click.IntRange(min=1), default=199,
              show_default=True, help="Number of levels in (0, 1).")
@_run_options
def hscan(kappa, dim, sphere_radius, diameter, p, beta, ball, annulus, levels,
          tol, grid, out_path, fmt):
    """Scan the comparison functional H(t, f) over superlevel sets."""
    try:
        sf = _space(kappa, dim, sphere_radius, diameter)
        dom = _domain(ball, annulus)
        opts = SolverOptions(lam_rtol=tol, points=grid)
        sol = first_eigenvalue(sf, RobinParams(p, beta), dom, opts)
    except PLRobinError as exc:
        raise click.UsageError(str(exc))
    func = HFunctional(sol, sol.f)
    rows = []
    for t in default_levels(sol, levels):
        data = level_set_data(sol, float(t))
        rows.append({"t": float(t), "volume": data.volume,
                     "interior_area": data.interior_area,
                     "exterior_area": data.exterior_area,
                     "H": func.value(float(t))})
    _emit_records(rows, fmt, out_path)


@main.command()
@_geometry_options
@_problem_options
@_domain_options
@click.option("--alpha", type=float, default=1.0, show_default=True,
              help="Volume fraction for the matched ball.")
@_run_options
def verify(kappa, dim, sphere_radius, diameter, p, beta, ball, annulus, alpha,
           tol, grid, out_path, fmt):
    """Compare one domain against its volume-matched ball."""
    try:
        sf = _space(kappa, dim, sphere_radius, diameter)
        dom = _domain(ball, annulus)
        opts = SolverOptions(lam_rtol=tol, points=grid)
        record = compare(sf, RobinParams(p, beta), dom, alpha, opts)
    except VerificationError as exc:
        if exc.record is not None:
            _emit_records([records.comparison_record_dict(exc.record)], fmt, out_path)
        click.echo(f"verification failed: {exc}", err=True)
        sys.exit(1)
    except PLRobinError as exc:
        raise click.UsageError(str(exc))
    _emit_records([records.comparison_record_dict(record)], fmt, out_path)


@main.command(name="sweep")
@click.option("--kappa", "kappas", type=click.IntRange(-1, 1), multiple=True,
              help="Restrict to these curvature signs (default: all).")
@click.option("--dim", "dims", type=click.IntRange(min=2), multiple=True,
              help="Restrict to these dimensions (default: 2 and 3).")
@click.option("--p", "ps", type=float, multiple=True,
              help="Restrict to these exponents (default: 1.5, 2, 3).")
@click.option("--beta", "betas", type=float, multiple=True,
              help="Restrict to these Robin coefficients (default: 0.1, 1, 10).")
@_run_options
def sweep_cmd(kappas, dims, ps, betas, tol, grid, out_path, fmt):
    """Run the full comparison grid and report records plus a summary."""
    cells = default_sweep_cells()
    if kappas:
        cells = [c for c in cells if c.kappa in kappas]
    if dims:
        cells = [c for c in cells if c.n in dims]
    if ps:
        cells = [c for c in cells if c.p in ps]
    if betas:
        cells = [c for c in cells if c.beta in betas]
    result = sweep(cells, SolverOptions(lam_rtol=tol, points=grid))
    report = {"records": [records.comparison_record_dict(r) for r in result.records],
              "summary": result.summary,
              "failures": result.failures}
    if fmt == "json":
        _emit(records.json_text(report), out_path)
    else:
        _emit(records.records_csv(report["records"]), out_path)
    if result.failures:
        click.echo(f"{len(result.failures)} cell(s) failed", err=True)
        sys.exit(1)


@main.command()
@click.option("--rect", "rect", type=float, nargs=2, required=True,
              metavar="LX LY", help="Side lengths of the rectangle.")
@click.option("--beta", type=float, default=1.0, show_default=True)
@click.option("--p", "p", type=float, default=2.0, show_default=True,
              help="Must be 2 (separation of variables).")
@_run_options
def rect(rect, beta, p, tol, grid, out_path, fmt):
    """Separable p = 2 rectangle against the equal-area disk."""
    try:
        record = rectangle_check(beta, rect[0], rect[1], p,
                                 SolverOptions(lam_rtol=tol, points=grid))
    except VerificationError as exc:
        click.echo(f"verification failed: {exc}", err=True)
        sys.exit(1)
    except PLRobinError as exc:
        raise click.UsageError(str(exc))
    _emit_records([records.comparison_record_dict(record)], fmt, out_path)


if __name__ == "__main__":
    main()
