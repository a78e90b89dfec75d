"""Command-line driver: ``pwlab verify | census | general``.

Exit status: 0 when every check passes, 1 when a check fails, 2 for
configuration errors (bad type/rank/lambda, dimension cap exceeded).
"""
import argparse
import csv
import io
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg as la
from .chevrep import DimensionCapExceeded, cartan_projection, chevalley_basis, dual_rep, highest_weight_rep
from .coordring import phi_check, psi_check, random_words, topmult_table, validate_lambda
from .peterson import (
    CSV_HEADER,
    TranslateSearchFailed,
    cell_filter,
    cell_intersection_check,
    orbit_census,
    search_general_translate,
    type_a_criterion_holds,
)
from .principal import exponents, principal_data, regular_element, verify_regular_element
from .rootdata import build_root_system, dominant_weights_below, dominates
from .uea import (
    CentralizerGroup,
    CounterexampleError,
    TruncatedUEA,
    ann_equal,
    check_ann_inclusion,
    solve_bijection,
    solve_telescope,
    solve_toprow_pairs,
)

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    type_letter: str
    rank: int
    lambda_root: tuple
    max_degree: int
    subset: tuple = None
    s_params: tuple = None
    seed: int = 0
    out: str = None
    csv: str = None
    timings: bool = False

    def as_json(self):
        d = asdict(self)
        d.pop("out")
        d.pop("csv")
        d.pop("timings")
        d["lambda_root"] = list(self.lambda_root)
        d["subset"] = None if self.subset is None else [i + 1 for i in self.subset]
        d["s_params"] = None if self.s_params is None else [str(x) for x in self.s_params]
        return d


def _ints(text, what):
    try:
        return tuple(int(x) for x in str(text).replace(" ", "").split(",") if x != "")
    except ValueError:
        raise ConfigError(f"{what} must be comma-separated integers, got {text!r}") from None


def default_lambda(rs):
    if rs.type_letter == "A" and rs.rank == 1:
        return (1,)
    if rs.type_letter == "A" and rs.rank == 2:
        return (1, 1)
    return tuple(sum(r[i] for r in rs.positive_roots) for i in range(rs.rank))


def default_degree(rs):
    if rs.rank == 1:
        return 3
    if rs.rank == 2:
        return 2
    return 1


def read_config_file(path):
    out = {}
    try:
        with open(path) as fh:
            for ln, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{ln}: expected key=value")
                k, v = line.split("=", 1)
                out[k.strip().replace("-", "_")] = v.strip()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    return out


def build_config(args, command):
    raw = read_config_file(args.config) if args.config else {}
    for key in ("type", "rank", "lambda_", "max_degree", "subset", "s_params", "seed", "out", "csv"):
        val = getattr(args, key, None)
        name = "lambda" if key == "lambda_" else key
        if val is not None:
            raw[name] = val
    if "type" not in raw or "rank" not in raw:
        raise ConfigError("--type and --rank are required")
    try:
        rs = build_root_system(raw["type"], raw["rank"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    lam = _ints(raw["lambda"], "lambda") if raw.get("lambda") not in (None, "") else default_lambda(rs)
    if len(lam) != rs.rank:
        raise ConfigError(f"lambda needs {rs.rank} root coordinates")
    weight = rs.weight_from_root_coords(lam)
    try:
        validate_lambda(rs, weight)
    except ValueError as exc:
        raise ConfigError(str(exc).replace("not regular dominant", "not regular")) from None
    try:
        max_degree = int(raw["max_degree"]) if raw.get("max_degree") not in (None, "") else default_degree(rs)
        seed = int(raw.get("seed", 0))
    except ValueError:
        raise ConfigError("max-degree and seed must be integers") from None
    if max_degree < 0:
        raise ConfigError("max-degree must be non-negative")
    subset = None
    if raw.get("subset") is not None:
        # an empty value ("" or "{}") selects I = empty set
        s = raw["subset"].strip().strip("{}")
        subset = tuple(sorted({i - 1 for i in _ints(s, "subset")})) if s else ()
        if any(i < 0 or i >= rs.rank for i in subset):
            raise ConfigError(f"subset indices must lie in 1..{rs.rank}")
    s_params = None
    if raw.get("s_params") not in (None, ""):
        try:
            s_params = tuple(Fraction(x) for x in raw["s_params"].split(","))
        except ValueError:
            raise ConfigError("s-params must be comma-separated rationals") from None
    return RunConfig(rs.type_letter, rs.rank, lam, max_degree, subset, s_params, seed,
                     raw.get("out"), raw.get("csv"), bool(getattr(args, "timings", False)))


class Report:
    def __init__(self, suite, config):
        self.suite = suite
        self.config = config
        self.checks = []

    def run(self, cid, anchor, fn):
        t0 = time.perf_counter()
        try:
            ok, witness = fn()
        except CounterexampleError as exc:
            ok, witness = False, {"error": str(exc), "detail": exc.witness}
        except TranslateSearchFailed as exc:
            ok, witness = False, {"error": str(exc)}
        ms = int((time.perf_counter() - t0) * 1000) if self.config.timings else 0
        self.checks.append({"id": cid, "anchor": anchor, "status": "pass" if ok else "fail",
                            "witness": _jsonable(witness), "ms": ms})
        return ok

    @property
    def verdict(self):
        return "pass" if all(c["status"] == "pass" for c in self.checks) else "fail"

    def as_dict(self):
        return {"suite": self.suite, "config": self.config.as_json(), "checks": self.checks,
                "verdict": self.verdict}

    def dumps(self):
        return json.dumps(self.as_dict(), indent=2) + "\n"


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _wlabel(w):
    return "(" + ",".join(str(c) for c in w.coords) + ")"


# -- suites ------------------------------------------------------------------

def structural_checks(report, g):
    rs = g.rs

    def jacobi():
        n = g.dim
        ad = [g.ad_basis(k) for k in range(n)]
        for a in range(n):
            for b in range(n):
                lhs = la.commutator(ad[a], ad[b])
                rhs = g.ad(g.bracket(g.basis_vector(a), g.basis_vector(b)))
                if not la.is_zero(lhs - rhs):
                    return False, {"pair": [g.labels[a], g.labels[b]]}
        return True, None

    def degrees():
        pd = principal_data(g)
        want = tuple(2 * m for m in exponents(rs))
        return pd.degrees == want and pd.dim == rs.rank, {"degrees": list(pd.degrees), "expected": list(want)}

    report.run("structure.jacobi", "Jacobi identity in the Chevalley basis", jacobi)
    report.run("structure.principal_degrees", "g^e has dimension l, degrees twice the exponents", degrees)


def ann_checks(report, g, G, weights, top):
    Vtop = highest_weight_rep(g, top)
    reps = [(mu, highest_weight_rep(g, mu)) for mu in weights]
    U = TruncatedUEA.for_modules(G, *[V for _, V in reps])

    def inclusion():
        for mu, V in reps:
            D = dual_rep(V)
            for k in range(V.dim):
                ok, wit = check_ann_inclusion(U, (D, D.unit(0)), (D, D.unit(k)))
                if not ok:
                    return False, {"mu": _wlabel(mu), "index": k, "monomial": wit}
        return True, {"modules": len(reps)}

    def equality():
        for mu, V in reps:
            D = dual_rep(V)
            for k in range(V.dim):
                eq = ann_equal(U, (D, D.unit(0)), (D, D.unit(k)))
                if eq != (k == 0):
                    return False, {"mu": _wlabel(mu), "index": k, "equal": eq}
            mixed = D.unit(0) + sum((D.unit(k) for k in range(1, V.dim)), la.zeros(V.dim))
            if not ann_equal(U, (D, D.unit(0)), (D, mixed)):
                return False, {"mu": _wlabel(mu), "vector": "sum of dual basis"}
        return True, None

    def cross():
        count = 0
        for mu, Vmu in reps:
            for nu, Vnu in reps:
                if mu == nu or not dominates(g.rs, nu, mu):
                    continue
                Dm, Dn = dual_rep(Vmu), dual_rep(Vnu)
                ok, wit = check_ann_inclusion(U, (Dn, Dn.unit(0)), (Dm, Dm.unit(0)))
                count += 1
                if not ok:
                    return False, {"mu": _wlabel(mu), "lambda": _wlabel(nu), "monomial": wit}
        return True, {"pairs": count}

    def truncation():
        for _, V in reps:
            ok, mono = U.check_truncation(V)
            if not ok:
                return False, {"monomial": list(mono)}
        return True, {"bound": U.bound}

    report.run("uea.truncation", "monomials beyond the h-spread act as zero", truncation)
    report.run("uea.ann_inclusion", "Ann(v_mu^*) inside Ann(v^*) for every dual weight vector", inclusion)
    report.run("uea.ann_equality", "Ann(v^*) = Ann(v_mu^*) exactly when v^*(v_mu) != 0", equality)
    report.run("uea.ann_cross", "Ann(v_lambda^*) inside Ann(v_mu^*) for dominant mu <= lambda", cross)
    return U, reps, Vtop


def solver_checks(report, G, U, reps, Vtop):
    def toprow():
        n = 0
        for mu, V in reps:
            idx = [(i, j) for i in range(V.dim) for j in range(V.dim)]
            ws = solve_toprow_pairs(U, V, [(V.unit(i), V.unit(j)) for i, j in idx])
            table = G.entry_functions(V)
            got = G.functions_of(V, V.unit(0), ws)
            for (i, j), f in zip(idx, got):
                if G.entry_function(V, i, j, table) != f:
                    return False, {"mu": _wlabel(mu), "entry": [i, j]}
            n += len(idx)
        return True, {"inputs": n}

    def bijection():
        n = 0
        for mu, V in reps:
            vstar = sum((V.unit(k) for k in range(V.dim)), la.zeros(V.dim))
            ws = [V.unit(j) for j in range(V.dim)]
            us = solve_bijection(U, V, vstar, ws)
            left = G.functions_of(V, V.unit(0), ws)
            right = G.functions_of(V, vstar, us)
            if any(a != b for a, b in zip(left, right)):
                return False, {"mu": _wlabel(mu)}
            n += len(ws)
        return True, {"inputs": n}

    def telescope():
        n = 0
        for mu, V in reps:
            ws = [V.unit(j) for j in range(V.dim)]
            zs = solve_telescope(U, V, ws, Vtop)
            left = G.functions_of(V, V.unit(0), ws)
            right = G.functions_of(Vtop, Vtop.unit(0), zs)
            if any(a != b for a, b in zip(left, right)):
                return False, {"mu": _wlabel(mu)}
            n += len(ws)
        return True, {"inputs": n}

    report.run("uea.toprow", "v^*(g u) = v_mu^*(g w) on G^e", toprow)
    report.run("uea.bijection", "v_mu^*(g w) = v^*(g u) on G^e when v^*(v_mu) != 0", bijection)
    report.run("uea.telescope", "v_mu^*(g w) = v_lambda^*(g z) on G^e for mu <= lambda", telescope)


def iso_checks(report, g, lam, degrees, prefix, runner):
    for n in degrees:
        def one(n=n):
            rep = runner(n)
            return rep.ok, rep.as_dict()
        report.run(f"{prefix}.degree{n}", f"graded isomorphism of coordinate rings, degree {n}", one)


def topmult_checks(report, g, G, lam, seed):
    V = highest_weight_rep(g, lam)
    V0 = highest_weight_rep(g, (0,) * g.rank)

    def run():
        words = random_words(g, 20, seed=seed)
        for Va, Vb in ((V0, V), (V, V)):
            P = cartan_projection(Va, Vb)
            if not P.check_equivariance():
                return False, {"pair": [str(Va.highest), str(Vb.highest)], "equivariance": False}
            bad = topmult_table(G, P, words)
            if bad is not None:
                return False, {"pair": [str(Va.highest), str(Vb.highest)], "basis_indices": list(bad)}
        return True, {"words": len(words)}

    report.run("coordring.topmult", "product of top-row sections through the Cartan projection", run)


def cmd_verify(cfg):
    rs = build_root_system(cfg.type_letter, cfg.rank)
    g = chevalley_basis(rs)
    lam = rs.weight_from_root_coords(cfg.lambda_root)
    G = CentralizerGroup.principal(g)
    report = Report("verify", cfg)
    structural_checks(report, g)
    top = lam.scale(max(cfg.max_degree, 1))
    weights = dominant_weights_below(rs, top)
    U, reps, Vtop = ann_checks(report, g, G, weights, top)
    solver_checks(report, G, U, reps, Vtop)
    iso_checks(report, g, lam, range(0, cfg.max_degree + 1), "phi", lambda n: phi_check(g, lam, n))
    topmult_checks(report, g, G, lam, cfg.seed)
    return report


def cmd_census(cfg):
    rs = build_root_system(cfg.type_letter, cfg.rank)
    g = chevalley_basis(rs)
    report = Report("census", cfg)
    only = None
    if cfg.subset is not None:
        only = {cfg.subset}
    cf = cell_filter(g)

    def filt():
        return (len(cf.subsets) == 2 ** rs.rank and cf.point_membership_agrees,
                {"parabolic_cells": len(cf.subsets), "weyl_order": cf.weyl_order})

    def cosets():
        bad = [list(i + 1 for i in I) for I, ok in cf.membership_by_subset.items() if not ok]
        return not bad, {"failing_subsets": bad}

    report.run("census.cell_filter", "Pet meets N w B only for longest parabolic words", filt)
    report.run("census.coset_membership", "A_I w_I B lies in Pet for every I", cosets)
    rows = orbit_census(g, only)
    for r in rows:
        def cell(r=r):
            c = cell_intersection_check(g, r.I)
            return c.ok, {"contains": c.contains, "u_freedom": c.u_freedom, "linear_condition": c.linear_condition,
                          "dim_a": c.dim_a}
        report.run(f"census.cell{r.subset_label()}", "Pet cap N w_I B = A_I w_I B", cell)

    def table():
        summary = [dict(zip(CSV_HEADER, r.csv_row())) for r in rows]
        ok = all(r.checks["pi_commutes_e_I"] and r.checks["pi_inside_a_I"] for r in rows)
        return ok, {"rows": summary, "total_orbits": "inf" if any(not r.finite for r in rows) else len(rows)}

    report.run("census.orbits", "orbits on each cell correspond to pi_I(G^e)-cosets in A_I", table)
    if rs.type_letter == "A":
        def crit():
            ok = type_a_criterion_holds(rs, rows)
            if only is None:
                has_inf = any(not r.finite for r in rows)
                ok = ok and (has_inf == (rs.rank > 2))
            return ok, {"infinite": [r.subset_label() for r in rows if not r.finite]}
        report.run("census.type_a", "infinite exactly when [l_I, l_I] is not simple", crit)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.csv_row())
    return report, buf.getvalue()


def cmd_general(cfg):
    rs = build_root_system(cfg.type_letter, cfg.rank)
    g = chevalley_basis(rs)
    lam = rs.weight_from_root_coords(cfg.lambda_root)
    I = cfg.subset if cfg.subset is not None else (0,)
    try:
        rx = regular_element(g, I, cfg.s_params)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    report = Report("general", cfg)

    def regular():
        checks = verify_regular_element(rx)
        return all(checks.values()), checks

    report.run("general.regular_element", "x = s + n is regular with G^x = C x A", regular)
    Vlam = highest_weight_rep(g, lam)
    found = {}

    def search():
        word, attempts = search_general_translate(Vlam, rx.I, seed=cfg.seed)
        found["h"] = word
        return True, {"attempts": attempts, "length": len(word)}

    if not report.run("general.translate", "general translate h found", search):
        return report
    h = found["h"]
    iso_checks(report, g, lam, range(1, max(cfg.max_degree, 1) + 1), "general",
               lambda n: psi_check(g, lam, n, rx, h))
    return report


def _parser():
    p = argparse.ArgumentParser(prog="pwlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("verify", "census", "general"):
        s = sub.add_parser(name)
        s.add_argument("--config")
        s.add_argument("--type")
        s.add_argument("--rank")
        s.add_argument("--lambda", dest="lambda_")
        s.add_argument("--max-degree", dest="max_degree")
        s.add_argument("--subset")
        s.add_argument("--s-params", dest="s_params")
        s.add_argument("--seed")
        s.add_argument("--out")
        s.add_argument("--csv")
        s.add_argument("--timings", action="store_true", help="record wall-clock ms per check")
    return p


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        cfg = build_config(args, args.command)
        if args.command == "verify":
            report = cmd_verify(cfg)
            _write(cfg.out, report.dumps())
        elif args.command == "census":
            report, table = cmd_census(cfg)
            _write(cfg.out, report.dumps())
            if cfg.csv:
                _write(cfg.csv, table)
        else:
            report = cmd_general(cfg)
            _write(cfg.out, report.dumps())
    except (ConfigError, DimensionCapExceeded) as exc:
        print(f"pwlab: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK if report.verdict == "pass" else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
