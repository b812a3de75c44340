"""Command-line front end.

Subcommands: render, verify, hps, schmidt, momentum, elements, quantum,
pipeline.  Every command accepts ``--config PATH`` (flat key=value file),
``--out DIR`` for file output, ``--json`` to print the report to stdout, and
the numeric overrides ``--grid-n --half-extent --w0 --k --nmax`` plus
per-suite ``--tol-<suite>`` gating-tolerance overrides.  Reports are JSON
with sorted keys and deterministic float formatting; images are binary PPM.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import elements, hps, momentum, quantum, schmidt
from .config import SUITES, RunConfig, apply_overrides, load_config
from .errors import CypolError
from .modes import CPM_LABELS, as_coeff4, cpm_basis, make_uab
from .render import render_field
from .serialize import json_dumps, write_json
from .verify import run_suite


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="flat key=value config file")
    p.add_argument("--out", help="output directory (default '.')")
    p.add_argument("--json", action="store_true",
                   help="print the JSON report to stdout instead of a file")
    p.add_argument("--grid-n", type=int, dest="grid_n")
    p.add_argument("--half-extent", type=float, dest="half_extent")
    p.add_argument("--w0", type=float)
    p.add_argument("--k", type=float)
    p.add_argument("--nmax", type=int,
                   help="Fock cutoff override (applies to both spaces)")
    for suite in SUITES:
        p.add_argument(f"--tol-{suite}", type=float, dest=f"tol_{suite}")


def _add_mode_args(p: argparse.ArgumentParser):
    p.add_argument("--mode", choices=CPM_LABELS, help="basis mode label")
    p.add_argument("--A", type=_parse_complex,
                   help="radial amplitude (with --B; |A|^2+|B|^2 = 1)")
    p.add_argument("--B", type=_parse_complex, help="azimuthal amplitude")
    p.add_argument("--sphere", default="+", choices=["+", "-", "plus", "minus"])
    p.add_argument("--coeff",
                   help="four comma-separated complex coefficients over basis B")


def _config_from_args(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    tols = {s: getattr(args, f"tol_{s}") for s in SUITES
            if getattr(args, f"tol_{s}", None) is not None}
    return apply_overrides(
        cfg,
        grid_n=args.grid_n,
        half_extent=args.half_extent,
        w0=args.w0,
        k=args.k,
        nmax_4mode=args.nmax,
        nmax_2mode=args.nmax,
        out=args.out,
        tols=tols,
    )


def _mode_from_args(args) -> np.ndarray:
    given = [x is not None for x in (args.mode, args.A, args.coeff)]
    if sum(given) != 1:
        raise CypolError("give exactly one of --mode, --A/--B, or --coeff")
    if args.mode is not None:
        return cpm_basis(args.mode)
    if args.coeff is not None:
        vals = [_parse_complex(tok) for tok in args.coeff.split(",")]
        return as_coeff4(vals)
    if args.B is None:
        raise CypolError("--A needs --B")
    return make_uab(args.A, args.B, args.sphere)


def _emit(args, cfg, payload, filename) -> str | None:
    if args.json:
        sys.stdout.write(json_dumps(payload))
        return None
    path = os.path.join(cfg.out, filename)
    write_json(path, payload)
    print(path)
    return path


def _mode_payload(args):
    return {
        "mode": args.mode,
        "A": args.A,
        "B": args.B if args.A is not None else None,
        "sphere": args.sphere if args.A is not None else None,
        "coeff": args.coeff,
    }


def _sphere_point_payload(A, B, sphere) -> dict | None:
    w = abs(A) ** 2 + abs(B) ** 2
    if w < 1e-12:
        return None
    p = hps.sphere_from_amplitudes(A / math.sqrt(w), B / math.sqrt(w), sphere)
    return {"theta": p.theta, "phi": p.phi, "sphere": p.sphere}


# ------------------------------------------------------------------ commands


def cmd_render(args) -> int:
    cfg = _config_from_args(args)
    c = _mode_from_args(args)
    summary = render_field(c, cfg.beam_params(), cfg.grid_spec(),
                           out_dir=cfg.out, basename=args.basename,
                           stride=args.stride)
    payload = {"command": "render", "input": _mode_payload(args),
               "config": cfg.as_dict(), **summary}
    if args.json:
        sys.stdout.write(json_dumps(payload))
    else:
        print(summary["ppm"])
        print(summary["ellipses"])
    return 0


def cmd_verify(args) -> int:
    cfg = _config_from_args(args)
    report = run_suite(args.suite, cfg)
    _emit(args, cfg, report, f"verify_{args.suite}.json")
    return 0 if report["passed"] else 1


def cmd_schmidt(args) -> int:
    cfg = _config_from_args(args)
    c = _mode_from_args(args)
    res = schmidt.schmidt_of_coeff(c)
    payload = {
        "command": "schmidt",
        "input": _mode_payload(args),
        "lambda": [float(v) for v in res.lam],
        "K": res.K,
    }
    if args.A is not None:
        payload["class"] = schmidt.separability_class(args.A, args.B)
    elif args.mode is not None:
        sign, name, _ = schmidt.bell_label(args.mode)
        payload["class"] = "Rank2"
        payload["bell_tag"] = ("+" if sign > 0 else "-") + name
    _emit(args, cfg, payload, "schmidt.json")
    return 0


def cmd_momentum(args) -> int:
    cfg = _config_from_args(args)
    c = _mode_from_args(args)
    params, spec = cfg.beam_params(), cfg.grid_spec()
    rep = momentum.integrate(momentum.momentum_density(c, params, spec))
    half = momentum.integrate(momentum.momentum_density(
        c, params, type(spec)(n=spec.n // 2, half_extent=spec.half_extent)))
    payload = {
        "command": "momentum",
        "input": _mode_payload(args),
        "P": rep.P, "P_orb": rep.P_orb, "P_sp": rep.P_sp,
        "L": rep.L, "S": rep.S, "J": rep.J,
        "helicity_closed_form": momentum.helicity_sz(c, params),
        "quadrature": {
            "n": rep.n,
            "half_extent": rep.half_extent,
            "truncation_estimate": rep.truncation_estimate,
            "p_sp_transverse_max": rep.p_sp_transverse_max,
            "half_resolution_delta": float(np.max(np.abs(np.concatenate(
                [rep.P - half.P, rep.L - half.L, rep.S - half.S])))),
        },
    }
    _emit(args, cfg, payload, "momentum.json")
    return 0


def cmd_hps(args) -> int:
    cfg = _config_from_args(args)
    if args.theta is not None:
        point = hps.SpherePoint(args.theta, args.phi or 0.0,
                                "+" if args.sphere in ("+", "plus") else "-")
        fA, fR = hps.amplitudes_from_sphere(point)
        c = hps.coeff_from_sphere(point)
    else:
        c = _mode_from_args(args)
    split = hps.superselect(c)
    payload = {"command": "hps", "superselection": {}}
    for name, pair in (("plus", split.plus), ("minus", split.minus)):
        entry = {"A": pair.A, "B": pair.B, "weight": pair.weight}
        point = _sphere_point_payload(pair.A, pair.B,
                                      "+" if name == "plus" else "-")
        if point is not None:
            w = math.sqrt(pair.weight)
            st = hps.hybrid_stokes(pair.A / w, pair.B / w,
                                   "+" if name == "plus" else "-")
            entry["sphere_point"] = point
            entry["stokes"] = [st.s0, st.s1, st.s2, st.s3]
        payload["superselection"][name] = entry
    _emit(args, cfg, payload, "hps.json")
    return 0


def _parse_element(token: str):
    name, _, rest = token.partition(":")
    params = rest.split(",") if rest else []
    if name == "hwp":
        alpha = float(params[0]) if params else 0.0
        return f"hwp({alpha})", elements.tensor_transform(
            elements.spatial_identity(), elements.jones_hwp(alpha))
    if name == "qwp":
        alpha = float(params[0]) if params else 0.0
        return f"qwp({alpha})", elements.tensor_transform(
            elements.spatial_identity(), elements.jones_qwp(alpha))
    if name == "circpol":
        hand = params[0] if params else "L"
        return f"circpol({hand})", elements.tensor_transform(
            elements.spatial_identity(), elements.jones_circular(hand))
    if name == "spatial-rot":
        phi = float(params[0]) if params else 0.0
        return f"spatial-rot({phi})", elements.tensor_transform(
            elements.spatial_rotation(phi), elements.pol_identity())
    if name == "spatial-flip":
        m1 = _parse_complex(params[0]) if params else 1.0
        m2 = _parse_complex(params[1]) if len(params) > 1 else 0.0
        return f"spatial-flip({m1},{m2})", elements.tensor_transform(
            elements.spatial_flip(m1, m2), elements.pol_identity())
    raise CypolError(
        f"unknown element {name!r}; expected hwp|qwp|circpol|spatial-rot|spatial-flip"
    )


def _symmetry_payload(rep) -> dict:
    return {
        "classification": rep.classification,
        "kernel_residuals": rep.kernel_residuals,
        "block_norms": rep.block_norms,
        "swapped_law_residual": rep.swapped_law_residual,
        "commutes_fully": rep.commutes_fully,
    }


def cmd_elements(args) -> int:
    cfg = _config_from_args(args)
    stack = []
    total = np.eye(4, dtype=complex)
    for token in args.elements:
        desc, T = _parse_element(token)
        total = T @ total
        stack.append({
            "element": desc,
            "symmetry": _symmetry_payload(elements.symmetry_check(T)),
            "unitary": elements.is_unitary(T),
        })
    payload = {
        "command": "elements",
        "stack": stack,
        "stack_symmetry": _symmetry_payload(elements.symmetry_check(total)),
        "stack_unitary": elements.is_unitary(total),
    }
    _emit(args, cfg, payload, "elements.json")
    return 0


def cmd_pipeline(args) -> int:
    cfg = _config_from_args(args)
    c = _mode_from_args(args)
    steps = []
    state = c.copy()

    def snapshot(label):
        split = hps.superselect(state)
        entry = {
            "after": label,
            "coeff": state,
            "weights": {"plus": split.plus.weight, "minus": split.minus.weight},
            "points": {},
        }
        for name, pair in (("plus", split.plus), ("minus", split.minus)):
            point = _sphere_point_payload(pair.A, pair.B,
                                          "+" if name == "plus" else "-")
            if point is not None:
                entry["points"][name] = point
        return entry

    steps.append(snapshot("input"))
    for token in args.elements:
        desc, T = _parse_element(token)
        state = T @ state
        entry = snapshot(desc)
        entry["symmetry"] = _symmetry_payload(elements.symmetry_check(T))
        if entry["symmetry"]["classification"] == "Breaks":
            entry["warning"] = "element breaks the rotation-symmetry classes"
        steps.append(entry)
    payload = {"command": "pipeline", "input": _mode_payload(args),
               "trajectory": steps}
    _emit(args, cfg, payload, "pipeline.json")
    return 0


def cmd_quantum(args) -> int:
    cfg = _config_from_args(args)
    space4 = quantum.FockSpace.four_mode(cfg.nmax_4mode)
    space2 = quantum.FockSpace.squeezing_pair(cfg.nmax_2mode)
    payload = {"command": "quantum", "kind": args.kind}

    if args.kind == "coherent":
        state = quantum.coherent_state(args.alpha, args.A, args.B, space4)
        payload.update({
            "alpha": args.alpha, "A": args.A, "B": args.B,
            "signal_coeff": quantum.coherent_signal(state),
            "per_mode_amplitudes": {
                str(m): quantum.coherent_amplitude(state, m) for m in (1, 2, 3, 4)
            },
            "norm": state.norm,
            "truncation_leak": state.truncation_leak(),
        })
    elif args.kind == "photon":
        state = quantum.single_photon(args.A, args.B, space4)
        payload.update({
            "A": args.A, "B": args.B,
            "wavefunction_coeff": quantum.photon_wavefunction(state),
            "norm": state.norm,
        })
    elif args.kind == "squeeze":
        zeta = args.zeta
        vac = quantum.vacuum(space2)
        az = quantum.apply_operator(quantum.squeeze_azimuthal(zeta, space2), vac)
        tm = quantum.apply_operator(quantum.squeeze_two((3, 4), zeta, space2), vac)
        nz = [
            {"n3": int(i), "n4": int(j),
             "re": float(az.amps[i, j].real), "im": float(az.amps[i, j].imag)}
            for i, j in np.argwhere(np.abs(az.amps) > 1e-12)
        ]
        payload.update({
            "zeta": zeta,
            "azimuthal_amplitudes": nz,
            "azimuthal_entropy": quantum.entanglement_entropy(az, (3,)),
            "two_mode_diagonal": np.diag(tm.amps),
            "two_mode_entropy": quantum.entanglement_entropy(tm, (3,)),
            "n_max": space2.n_max,
        })
    else:  # factorization
        tables = []
        for z in args.zetas:
            rep = quantum.factorization_residual(z, space2)
            tables.append({"zeta": z, "rows": rep.rows})
        payload.update({"tables": tables, "n_max": space2.n_max})

    _emit(args, cfg, payload, f"quantum_{args.kind}.json")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cypol",
        description="Cylindrically polarized modes: rendering, verification, "
                    "sphere navigation, and quantum-layer reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("render", help="write PPM intensity + ellipse JSON")
    _add_common(p)
    _add_mode_args(p)
    p.add_argument("--basename", default="mode")
    p.add_argument("--stride", type=int, default=16)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify", help="run invariant suites")
    _add_common(p)
    p.add_argument("suite", choices=list(SUITES) + ["all"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("schmidt", help="Schmidt spectrum and separability class")
    _add_common(p)
    _add_mode_args(p)
    p.set_defaults(func=cmd_schmidt)

    p = sub.add_parser("momentum", help="momentum and angular-momentum report")
    _add_common(p)
    _add_mode_args(p)
    p.set_defaults(func=cmd_momentum)

    p = sub.add_parser("hps", help="hybrid Stokes / sphere-point report")
    _add_common(p)
    _add_mode_args(p)
    p.add_argument("--theta", type=float, help="polar angle input (with --phi)")
    p.add_argument("--phi", type=float, help="azimuth input")
    p.set_defaults(func=cmd_hps)

    p = sub.add_parser("elements", help="classify an optical element stack")
    _add_common(p)
    p.add_argument("check", choices=["check"],
                   help="classification mode (only 'check')")
    p.add_argument("elements", nargs="+", metavar="ELEMENT",
                   help="hwp:a | qwp:a | circpol:L/R | spatial-rot:phi | "
                        "spatial-flip:m1,m2")
    p.set_defaults(func=cmd_elements)

    p = sub.add_parser("quantum", help="quantum-layer reports")
    _add_common(p)
    p.add_argument("kind", choices=["coherent", "photon", "squeeze",
                                    "factorization"])
    p.add_argument("--alpha", type=_parse_complex, default=0.5)
    p.add_argument("--A", type=_parse_complex, default=1.0)
    p.add_argument("--B", type=_parse_complex, default=0.0)
    p.add_argument("--zeta", type=_parse_complex, default=0.5)
    p.add_argument("--zetas", type=lambda s: [_parse_complex(t) for t in s.split(",")],
                   default=[0.0, 0.1, 0.2])
    p.set_defaults(func=cmd_quantum)

    p = sub.add_parser("pipeline", help="apply an element stack to a mode")
    _add_common(p)
    _add_mode_args(p)
    p.add_argument("elements", nargs="*", metavar="ELEMENT",
                   help="same element syntax as 'elements check'")
    p.set_defaults(func=cmd_pipeline)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CypolError as exc:
        print(f"cypol: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
