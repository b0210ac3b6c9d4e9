"""Command-line driver: zeros, equilibrium, simulate, laughlin, beam.

Configuration comes from a JSON file (--config) with one top-level object per
command; command-line flags override config fields.  Exit codes: 0 ok,
2 validation, 3 non-convergence, 4 collision, 5 aliasing.
"""

import argparse
import json
import os
import sys
import warnings

import numpy as np

from . import orthopoly, stieltjes
from .backgrounds import (
    NoFlow,
    HermiteLinear,
    Coulomb,
    JacobiCharges,
    ConjugateLinear,
    CustomRational,
)
from .landau import LaughlinParams, solve_planar_equilibrium
from .paraxial import AliasingWarning, find_vortices, lg_mode, propagate, save_field
from .vortex import CollisionError, StepLimitError, VortexConfiguration, integrate

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NONCONVERGENCE = 3
EXIT_COLLISION = 4
EXIT_ALIASING = 5


class ConfigError(ValueError):
    pass


_DEFAULTS = {
    "zeros": {"family": "hermite", "n": 3, "alpha": 0.0, "beta": 0.0, "tol": 1e-8},
    "equilibrium": {
        "family": "hermite",
        "n": 5,
        "l": 0.0,
        "p": 0.5,
        "q": 0.5,
        "poles": [],
        "residues": [],
        "poly": [],
        "tol": 1e-12,
        "max_iter": 200,
        "output": "equilibrium.json",
    },
    "simulate": {
        "positions": [[1.0, 0.0], [-1.0, 0.0]],
        "strengths": [1.0, 1.0],
        "background": {"kind": "none"},
        "t_end": 1.0,
        "samples": 11,
        "rtol": 1e-10,
        "atol": 1e-12,
        "max_steps": 100000,
        "collision_eps": 1e-12,
        "drift_bound": 1e-8,
        "output": "trajectory.csv",
    },
    "laughlin": {
        "N": 2,
        "m_exp": 1,
        "l_B": 1.0,
        "tol": 1e-10,
        "max_iter": 200,
        "output": "laughlin.json",
    },
    "beam": {
        "p": 0,
        "ell": 1,
        "w0": 1.0,
        "grid": 128,
        "dx": 0.0625,
        "k": 100.0,
        "z_total": None,
        "slices": 10,
        "save_fields": False,
        "output": "vortex_track.csv",
    },
}


def _load_params(command, args):
    params = dict(_DEFAULTS[command])
    if args.config:
        with open(args.config) as fh:
            doc = json.load(fh)
        section = doc.get(command, {})
        unknown = set(section) - set(params)
        if unknown:
            raise ConfigError(f"unknown config keys for {command}: {sorted(unknown)}")
        params.update(section)
    if args.tol is not None:
        params["tol"] = args.tol
    for key, value in vars(args).items():
        if key in params and value is not None and key != "tol":
            params[key] = value
    return params


def _say(args, msg):
    if not args.quiet:
        print(msg)


def _background_from(doc):
    kind = doc.get("kind", "none")
    if kind == "none":
        return NoFlow()
    if kind == "hermite":
        return HermiteLinear()
    if kind == "coulomb":
        return Coulomb(l=doc.get("l", 0.0))
    if kind == "jacobi":
        return JacobiCharges(p=doc.get("p", 0.5), q=doc.get("q", 0.5))
    if kind == "conjugate_linear":
        return ConjugateLinear(omega=doc.get("omega", 0.25))
    if kind == "custom":
        return CustomRational(
            poles=tuple(doc.get("poles", [])),
            residues=tuple(doc.get("residues", [])),
            poly=tuple(doc.get("poly", [])),
        )
    raise ConfigError(f"unknown background kind {kind!r}")


def cmd_zeros(args):
    params = _load_params("zeros", args)
    spec = orthopoly.PolynomialSpec(
        params["family"], int(params["n"]), float(params["alpha"]), float(params["beta"])
    )
    xs = orthopoly.zeros(spec)
    ok = True
    _say(args, f"{'zero':>24}  {'ode_residual':>14}")
    for x in xs:
        res = orthopoly.ode_residual_relative(spec, x)
        if abs(res) > params["tol"]:
            ok = False
        _say(args, f"{x:24.16e}  {res:14.3e}")
    return EXIT_OK if ok else EXIT_NONCONVERGENCE


def cmd_equilibrium(args):
    params = _load_params("equilibrium", args)
    family = params["family"]
    if family == "hermite":
        bg = HermiteLinear()
    elif family == "coulomb":
        bg = Coulomb(l=float(params["l"]))
    elif family == "jacobi":
        bg = JacobiCharges(p=float(params["p"]), q=float(params["q"]))
    elif family == "custom":
        bg = CustomRational(
            poles=tuple(params["poles"]),
            residues=tuple(params["residues"]),
            poly=tuple(params["poly"]),
        )
    else:
        raise ConfigError(f"unknown equilibrium family {family!r}")
    n = int(params["n"])
    problem = stieltjes.EquilibriumProblem(n=n, background=bg)
    report = stieltjes.solve(problem, tolerance=float(params["tol"]), max_iter=int(params["max_iter"]))
    if report.residual_inf > float(params["tol"]):
        stieltjes.report_to_json(report, bg, n, os.path.join(args.out, params["output"]))
        _say(args, f"non-convergence: residual {report.residual_inf:.3e}")
        return EXIT_NONCONVERGENCE
    certified = None
    if not isinstance(bg, CustomRational):
        report = stieltjes.certify(report, bg.polynomial_spec(n))
        certified = report.certified
    stieltjes.report_to_json(report, bg, n, os.path.join(args.out, params["output"]))
    _say(args, f"residual_inf {report.residual_inf:.3e}  certified {certified}")
    if certified is None:
        return EXIT_OK
    return EXIT_OK if certified else EXIT_NONCONVERGENCE


def cmd_simulate(args):
    params = _load_params("simulate", args)
    z = np.array([complex(x, y) for x, y in params["positions"]])
    kappa = np.array(params["strengths"], dtype=float)
    cfg = VortexConfiguration(z, kappa)
    bg = _background_from(params["background"])
    t_end = float(params["t_end"])
    times = np.linspace(0.0, t_end, int(params["samples"]))
    traj = integrate(
        cfg,
        bg,
        t_end,
        rtol=float(params["rtol"]),
        atol=float(params["atol"]),
        max_steps=int(params["max_steps"]),
        sample_times=times,
        eps=float(params["collision_eps"]),
    )
    traj.to_csv(os.path.join(args.out, params["output"]))
    d = traj.drift
    _say(args, f"drift |dQ| {d.linear:.3e}  |dI| {d.angular:.3e}  |dH| {d.energy:.3e}")
    bound = float(params["drift_bound"])
    ok = d.linear <= bound and d.angular <= bound and d.energy <= bound
    return EXIT_OK if ok else EXIT_NONCONVERGENCE


def cmd_laughlin(args):
    params = _load_params("laughlin", args)
    lp = LaughlinParams(int(params["N"]), int(params["m_exp"]), float(params["l_B"]))
    if lp.N == 1:
        guess = np.array([0.0 + 0.0j])
    else:
        r0 = lp.l_B * np.sqrt(2.0 * lp.m_exp * (lp.N - 1))
        rng = np.random.default_rng(args.seed if args.seed is not None else 0)
        angles = 2.0 * np.pi * np.arange(lp.N) / lp.N
        guess = 0.9 * r0 * np.exp(1j * (angles + 0.01 * rng.standard_normal(lp.N)))
    z, res, converged = solve_planar_equilibrium(lp, guess, tol=float(params["tol"]),
                                                 max_iter=int(params["max_iter"]))
    radii = np.abs(z)
    doc = {
        "N": lp.N,
        "m_exp": lp.m_exp,
        "l_B": lp.l_B,
        "positions": [[float(v.real), float(v.imag)] for v in z],
        "residual_inf": float(res),
        "converged": bool(converged),
        "radius_mean": float(radii.mean()),
        "radius_min": float(radii.min()),
        "radius_max": float(radii.max()),
    }
    with open(os.path.join(args.out, params["output"]), "w") as fh:
        fh.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    _say(args, f"residual {res:.3e}  mean radius {radii.mean():.12g}")
    return EXIT_OK if converged else EXIT_NONCONVERGENCE


def cmd_beam(args):
    params = _load_params("beam", args)
    n = int(params["grid"])
    dx = float(params["dx"])
    k = float(params["k"])
    w0 = float(params["w0"])
    field = lg_mode(int(params["p"]), int(params["ell"]), w0, n, n, dx, dx, k)
    z_total = params["z_total"]
    if z_total is None:
        z_total = 0.5 * k * w0**2  # one Rayleigh range
    slices = int(params["slices"])
    dz = float(z_total) / slices
    rows = []
    charges = []
    with warnings.catch_warnings():
        warnings.simplefilter("error", AliasingWarning)
        try:
            current = field
            for s in range(slices + 1):
                vortices = find_vortices(current)
                total = sum(c for _, c in vortices)
                charges.append(total)
                for (vx, vy), c in vortices:
                    rows.append((current.z, vx, vy, c))
                if params["save_fields"]:
                    save_field(current, os.path.join(args.out, f"field_{s:03d}.bin"))
                if s < slices:
                    current = propagate(current, dz)
        except AliasingWarning as exc:
            _say(args, f"aliasing: {exc}")
            return EXIT_ALIASING
    with open(os.path.join(args.out, params["output"]), "w", newline="") as fh:
        fh.write("z,x,y,charge\n")
        for z_, vx, vy, c in rows:
            fh.write("%.17g,%.17g,%.17g,%d\n" % (z_, vx, vy, c))
    conservedq = len(set(charges)) <= 1
    _say(args, f"slices {slices + 1}  total charge per slice {charges}")
    return EXIT_OK if conservedq else EXIT_NONCONVERGENCE


def build_parser():
    ap = argparse.ArgumentParser(prog="vortexkit", description=__doc__)
    ap.add_argument("--config", default=None, help="JSON config path")
    ap.add_argument("--out", default=".", help="output directory")
    ap.add_argument("--tol", type=float, default=None, help="tolerance override")
    ap.add_argument("--seed", type=int, default=None, help="seed for randomized sweeps")
    ap.add_argument("--quiet", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeros", help="orthogonal polynomial zeros and ODE residuals")
    p.add_argument("--family", default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("equilibrium", help="solve and certify a stationary configuration")
    p.add_argument("--family", default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--l", type=float, default=None)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--q", type=float, default=None)
    p.set_defaults(func=cmd_equilibrium)

    p = sub.add_parser("simulate", help="integrate the time-dependent vortex equations")
    p.add_argument("--t-end", dest="t_end", type=float, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("laughlin", help="planar Laughlin equilibrium")
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--m-exp", dest="m_exp", type=int, default=None)
    p.add_argument("--l-B", dest="l_B", type=float, default=None)
    p.set_defaults(func=cmd_laughlin)

    p = sub.add_parser("beam", help="propagate an LG mode and track its vortices")
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--ell", type=int, default=None)
    p.add_argument("--w0", type=float, default=None)
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--slices", type=int, default=None)
    p.set_defaults(func=cmd_beam)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    os.makedirs(args.out, exist_ok=True)
    try:
        return args.func(args)
    except CollisionError as exc:
        print(f"collision: {exc}", file=sys.stderr)
        return EXIT_COLLISION
    except StepLimitError as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (ConfigError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
