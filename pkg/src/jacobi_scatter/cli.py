"""Command-line front end.

Usage:
    jacobi-scatter <command> --profile <path> [--z-samples N] [--eps E] [--tol T]
                   [--cuts m1,m2,...] [--format csv|json] [--seed S] [--out <path>]

Commands are ``validate``, ``scatter``, ``factorize``, ``closed-form`` and
``verify``.  Exit status is 0 when every check passes, 1 when a check fails
and 2 for unusable input.
"""
import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import cmatrix as cm
from .errors import JacobiScatterError, NotPointDefectError
from .factorize import (
    Partition,
    compose_scattering,
    composition_identities,
    defect_site,
    factorization_check,
    fragment,
    fragment_transitions,
    fragment_jost_relations,
    point_defect_closed_form,
)
from .lattice import DEFAULT_EXCLUSION_EPS, load_profile, make_spectral_grid, validate_class_A
from .models import random_profile
from .oracle import oracle_scattering
from .report import ReportCard
from .scattering import assemble_smatrix, extract_scattering, identity_suite, suite_sites
from .transition import build_frames_over, build_transition, determinant_suite, inverse_checks, relate_frames

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2

COMMANDS = ("validate", "scatter", "factorize", "closed-form", "verify")
BLOCKS = ("T_l", "T_r", "L", "R")


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    profile_path: str = None
    z_samples: int = 64
    exclusion_eps: float = DEFAULT_EXCLUSION_EPS
    tolerance: float = 1e-9
    cuts: tuple = None
    output: str = "csv"
    seed: int = None
    out: str = None

    def __post_init__(self):
        if self.z_samples < 1:
            raise InputError("--z-samples must be at least 1")
        if not self.tolerance > 0:
            raise InputError("--tol must be positive")
        if self.cuts is not None:
            try:
                Partition(self.cuts)
            except JacobiScatterError as exc:
                raise InputError(str(exc)) from exc


def parse_cuts(text):
    if text is None:
        return None
    try:
        return tuple(int(c) for c in text.split(",") if c.strip())
    except ValueError as exc:
        raise InputError(f"cannot parse --cuts {text!r}: expected integers like 0,3") from exc


def build_parser():
    parser = argparse.ArgumentParser(prog="jacobi-scatter", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--profile", help="JSON coefficient profile")
    parser.add_argument("--z-samples", type=int, default=64, help="points on the unit circle (default 64)")
    parser.add_argument("--eps", type=float, default=DEFAULT_EXCLUSION_EPS, help="exclusion radius around z = +-1")
    parser.add_argument("--tol", type=float, default=1e-9, help="pass/fail tolerance")
    parser.add_argument("--cuts", help="comma-separated cut sites m1,m2,...")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--seed", type=int, help="random profile seed when no --profile is given")
    parser.add_argument("--out", help="write data here instead of stdout")
    return parser


def config_from_args(args):
    return RunConfig(
        command=args.command,
        profile_path=args.profile,
        z_samples=args.z_samples,
        exclusion_eps=args.eps,
        tolerance=args.tol,
        cuts=parse_cuts(args.cuts),
        output=args.format,
        seed=args.seed,
        out=args.out,
    )


def load_input(cfg):
    """Profile from ``--profile``, or a random ``q = 2`` profile from ``--seed``."""
    if cfg.profile_path is not None:
        return load_profile(cfg.profile_path)
    if cfg.seed is not None:
        return random_profile(np.random.default_rng(cfg.seed), 2, 4, n_min=0)
    raise InputError("either --profile or --seed is required")


# -- output helpers -------------------------------------------------------------


def matrix_columns(name, q):
    return [f"{name}_{i}{j}_{part}" for i in range(q) for j in range(q) for part in ("re", "im")]


def matrix_values(m, q):
    if m is None:
        return [float("nan")] * (2 * q * q)
    out = []
    for x in np.asarray(m).ravel():
        out.extend((float(x.real), float(x.imag)))
    return out


def pair(x):
    return [float(complex(x).real), float(complex(x).imag)]


def json_matrix(m):
    if m is None:
        return None
    return [[pair(x) for x in row] for row in np.asarray(m)]


def render_csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(x) if isinstance(x, float) else x for x in row])
    return buf.getvalue()


def render_json(doc):
    return json.dumps(doc, indent=2, allow_nan=True) + "\n"


def emit(cfg, text):
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def note(text):
    print(text, file=sys.stderr)


# -- commands ---------------------------------------------------------------------


def cmd_validate(cfg, p):
    rep = validate_class_A(p)
    print(rep)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _scatter_rows(cfg, p, compute):
    """Evaluate ``compute(z)`` over the grid and tabulate the scattering blocks.

    ``compute`` returns ``(ScatteringData, extra_columns)``; a library error at
    one ``z`` flags the row and the sweep continues.
    """
    grid = make_spectral_grid(cfg.z_samples, cfg.exclusion_eps, p.tail)
    rows = []
    for sp in grid:
        try:
            d, extra = compute(sp)
            unit = assemble_smatrix(d).unitarity_residual()
            blocks = d.blocks()
            flag = "ok" if unit < cfg.tolerance and all(x < cfg.tolerance for x in extra.values()) else "check"
        except JacobiScatterError as exc:
            blocks, extra, unit = {}, {}, float("nan")
            flag = f"error: {type(exc).__name__}"
        rows.append({"z": sp.z, "lambda": sp.lam, "blocks": blocks, "unitarity": unit,
                     "extra": extra, "flag": flag})
    return rows


def _write_scatter(cfg, p, rows, extra_names=()):
    q = p.q
    if cfg.output == "json":
        doc = {"q": q, "rows": []}
        for r in rows:
            entry = {"z": pair(r["z"]), "lambda": pair(r["lambda"])}
            entry.update({k: json_matrix(r["blocks"].get(k)) for k in BLOCKS})
            entry["unitarity_residual"] = r["unitarity"]
            for name in extra_names:
                entry[name] = r["extra"].get(name, float("nan"))
            entry["flag"] = r["flag"]
            doc["rows"].append(entry)
        emit(cfg, render_json(doc))
        return
    header = ["z_re", "z_im", "lambda_re", "lambda_im"]
    for k in BLOCKS:
        header += matrix_columns(k, q)
    header += ["unitarity_residual", *extra_names, "flag"]
    out = []
    for r in rows:
        row = [*pair(r["z"]), *pair(r["lambda"])]
        for k in BLOCKS:
            row += matrix_values(r["blocks"].get(k), q)
        row += [r["unitarity"], *(r["extra"].get(n, float("nan")) for n in extra_names), r["flag"]]
        out.append(row)
    emit(cfg, render_csv(header, out))


def cmd_scatter(cfg, p):
    rows = _scatter_rows(cfg, p, lambda sp: (extract_scattering(p, sp, cfg.exclusion_eps), {}))
    _write_scatter(cfg, p, rows)
    bad = [r for r in rows if r["flag"] != "ok"]
    if bad:
        note(f"{len(bad)} of {len(rows)} rows flagged")
    return EXIT_FAIL if bad else EXIT_OK


def cmd_closed_form(cfg, p):
    try:
        m = defect_site(p)
    except NotPointDefectError as exc:
        raise InputError(str(exc)) from exc

    def compute(sp):
        c = point_defect_closed_form(p, sp)
        d = extract_scattering(p, sp, cfg.exclusion_eps)
        res = max(cm.residual(getattr(c, k), getattr(d, k)) for k in BLOCKS)
        return c, {"pipeline_residual": res}

    rows = _scatter_rows(cfg, p, compute)
    _write_scatter(cfg, p, rows, ("pipeline_residual",))
    worst = max((r["extra"].get("pipeline_residual", np.inf) for r in rows), default=0.0)
    note(f"defect site m = {m}; max |closed form - pipeline| = {worst:.3e}")
    return EXIT_OK if all(r["flag"] == "ok" for r in rows) else EXIT_FAIL


def cmd_factorize(cfg, p):
    if cfg.cuts is None:
        raise InputError("factorize needs --cuts")
    part = Partition(cfg.cuts)
    q2 = 2 * p.q
    grid = make_spectral_grid(cfg.z_samples, cfg.exclusion_eps, p.tail)
    card = ReportCard(tol=cfg.tolerance)
    records = []
    for sp in grid:
        pieces = fragment_transitions(p, part, sp)
        res = factorization_check(p, part, sp, cfg.tolerance)
        card.extend(res)
        lam_res = res["Lambda = Lambda_1 ... Lambda_{P+1}"].residual
        sig_res = res["Sigma = Sigma_{P+1} ... Sigma_1"].residual
        for j, (lam, _) in enumerate(pieces, start=1):
            records.append((sp, j, lam.m, lam_res, sig_res))
    if cfg.output == "json":
        doc = {"cuts": list(part.cuts), "rows": [
            {"z": pair(sp.z), "fragment": j, "Lambda": json_matrix(m),
             "lambda_product_residual": lr, "sigma_product_residual": sr}
            for sp, j, m, lr, sr in records]}
        emit(cfg, render_json(doc))
    else:
        header = ["z_re", "z_im", "fragment", *matrix_columns("Lambda", q2),
                  "lambda_product_residual", "sigma_product_residual"]
        rows = [[*pair(sp.z), j, *matrix_values(m, q2), lr, sr] for sp, j, m, lr, sr in records]
        emit(cfg, render_csv(header, rows))
    note(card.table())
    return EXIT_OK if card.passed else EXIT_FAIL


def verify_card(p, grid, tol, cuts=None):
    """Every consistency check the library knows, aggregated over ``grid``."""
    card = ReportCard(tol=tol)
    card.add("profile is class A", 0.0 if validate_class_A(p).passed else np.inf)
    lo, mid, hi = suite_sites(p)
    frame_sites = sorted({lo, mid, hi})
    if cuts is None:
        cuts = ((p.n_min + p.n_max) // 2,)
    part = Partition(cuts)
    try:
        defect_site(p)
        point = True
    except NotPointDefectError:
        point = False
    for sp in grid:
        d = extract_scattering(p, sp)
        d_conj = extract_scattering(p, sp.conj)
        card.extend(identity_suite(p, sp, d, d_conj, tol))
        frames = build_frames_over(p, sp.z, range(p.n_min - 3, p.n_max + 3))
        card.extend(determinant_suite(p, sp, d, frames=frames, tol=tol))
        frames_conj = {f.n: f for f in build_frames_over(p, sp.z.conjugate(), frame_sites)}
        lam, sig = build_transition(d)
        lam_2pt, sig_2pt = build_transition(d, d_conj)
        card.add("Lambda adjoint form = two-point form", cm.residual(lam.m, lam_2pt.m))
        card.add("Sigma adjoint form = two-point form", cm.residual(sig.m, sig_2pt.m))
        for f in frames:
            if f.n in frames_conj:
                card.extend(relate_frames(f, lam, sig, d, frames_conj[f.n], tol))
                card.extend(inverse_checks(f, p, sp, d, tol))
        card.extend(composition_identities(d, d_conj, tol))
        for m in part.cuts:
            card.extend(fragment_jost_relations(p, m, sp, tol))
        card.extend(factorization_check(p, part, sp, tol))
        datas = [extract_scattering(f.profile, sp) for f in fragment(p, part)]
        merged = datas[0]
        for nxt in datas[1:]:
            merged = compose_scattering(merged, nxt)
        card.add("composition = direct extraction", max(cm.residual(getattr(merged, k), getattr(d, k)) for k in BLOCKS))
        o = oracle_scattering(p, sp.z)
        card.add("oracle = Wronskian extraction", max(cm.residual(getattr(o, k), getattr(d, k)) for k in BLOCKS))
        if point:
            c = point_defect_closed_form(p, sp)
            card.add("point-defect closed form = extraction", max(cm.residual(getattr(c, k), getattr(d, k)) for k in BLOCKS))
    return card


def cmd_verify(cfg, p):
    grid = make_spectral_grid(cfg.z_samples, cfg.exclusion_eps, p.tail)
    card = verify_card(p, grid, cfg.tolerance, cfg.cuts)
    if cfg.output == "json":
        doc = {"passed": card.passed, "checks": [
            {"name": c.name, "max_residual": c.residual, "tol": c.tol, "expect": c.expect, "status": c.status()}
            for c in card.summary()]}
        emit(cfg, render_json(doc))
    else:
        emit(cfg, card.table() + "\n")
    return EXIT_OK if card.passed else EXIT_FAIL


HANDLERS = {
    "validate": cmd_validate,
    "scatter": cmd_scatter,
    "factorize": cmd_factorize,
    "closed-form": cmd_closed_form,
    "verify": cmd_verify,
}


def run(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        p = load_input(cfg)
        return HANDLERS[cfg.command](cfg, p)
    except InputError as exc:
        note(f"input error: {exc}")
        return EXIT_INPUT
    except JacobiScatterError as exc:
        note(f"input error: {type(exc).__name__}: {exc}")
        return EXIT_INPUT


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
