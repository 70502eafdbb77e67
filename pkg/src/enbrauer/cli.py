"""Command line front end: ``en <command> ...``; every command prints JSON.

Exit codes: 0 when every invoked check passes, 1 when a check fails (the
report names the failing identity), 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

import numpy as np

from . import brauer, modalg, rmatrix, twisting
from .algebra import check_hopf_axioms
from .en import build_en, duality_iso
from .fields import QQ, parse_field
from .linalg import from_json, is_symmetric, to_json, zeros


class InputError(ValueError):
    pass


# -- input helpers ---------------------------------------------------------------

def load_json_arg(arg: str):
    """A path to a JSON file, or inline JSON."""
    if arg is None:
        return None
    if os.path.exists(arg):
        with open(arg) as fh:
            text = fh.read()
    else:
        text = arg
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError("cannot parse %r as JSON: %s" % (arg[:60], e)) from None


def load_matrix(arg, field=QQ, name="matrix"):
    obj = load_json_arg(arg)
    try:
        m = from_json(obj, field)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError("bad %s: %s" % (name, e)) from None
    if m.ndim != 2:
        raise InputError("%s must be two dimensional" % name)
    return m


def square(m, n=None, name="matrix"):
    if m.shape[0] != m.shape[1]:
        raise InputError("%s must be square" % name)
    if n is not None and m.shape[0] != n:
        raise InputError("%s must be %dx%d" % (name, n, n))
    return m


def mat_json(m):
    return to_json(np.asarray(m, dtype=object))


def scalar(f, x):
    return f.to_str(x)


# -- module representatives --------------------------------------------------------

def module_from_json(obj, field=QQ, r_matrix=None):
    """Representatives: {"type": "a_sigma", "L"}, {"type": "strongly_inner",
    "c", "x": [...]}, {"type": "a_alpha", "T"}, {"type": "twist", "T",
    "module"}, {"type": "product", "left", "right"} (braided by R_A)."""
    if not isinstance(obj, dict) or "type" not in obj:
        raise InputError("module JSON needs a 'type'")
    kind = obj["type"]
    if kind == "a_sigma":
        l = square(from_json(obj["L"], field), name="L")
        if not is_symmetric(l):
            raise InputError("L must be symmetric")
        return modalg.a_sigma(twisting.build_sigma(l.shape[0], -l), verify=False)
    if kind == "strongly_inner":
        xs = [from_json(x, field) for x in obj.get("x", [])]
        h = build_en(len(xs), field)
        images = {h.index(1, ()): from_json(obj["c"], field)}
        for i, x in enumerate(xs, 1):
            images[h.index(0, (i,))] = x
        return modalg.strongly_inner_module(h, images, field)
    if kind == "a_alpha":
        return brauer.build_A_alpha(from_json(obj["T"], field), with_algebra=False)
    if kind == "twist":
        return brauer.aut_twist(module_from_json(obj["module"], field, r_matrix), from_json(obj["T"], field))
    if kind == "product":
        a = module_from_json(obj["left"], field, r_matrix)
        b = module_from_json(obj["right"], field, r_matrix)
        n = a.h.n
        rm = r_matrix if r_matrix is not None else zeros(n, n, field)
        return modalg.braided_end(a, b, rmatrix.build_R(n, square(rm, n, "R"), field).r)
    raise InputError("unknown module type %r" % kind)


def witness_json(w, f):
    return {"alpha": scalar(f, w.alpha), "alpha_class": scalar(f, brauer.alpha_class(w.alpha, f)),
            "L": mat_json(w.l)}


def witness_from_json(obj, field=QQ):
    return brauer.BrauerClassWitness(field(obj["alpha"]), from_json(obj["L"], field))


# -- commands ------------------------------------------------------------------------

def cmd_build(args, f):
    if args.n < 0:
        raise InputError("n must be nonnegative")
    h = build_en(args.n, f)
    bad = check_hopf_axioms(h)
    out = h.to_json()
    out["n"] = args.n
    out["checks"] = [{"identity": "Hopf algebra axioms", "ok": not bad, "violations": bad[:20]}]
    return out, not bad


def cmd_rmatrix(args, f):
    a = square(load_matrix(args.matrix, f), args.n, "A")
    q = rmatrix.build_R(args.n, a, f)
    checks = []
    if args.check in ("qt", "yb"):
        bad = rmatrix.check_qt(q, yang_baxter=True)
        checks.append({"identity": "quasi-triangular axioms and Yang-Baxter", "ok": not bad,
                       "violations": bad[:20]})
    if args.check == "triangular":
        t = rmatrix.is_triangular(q)
        checks.append({"identity": "tau(R) R = 1 (x) 1", "ok": t, "symmetric_A": is_symmetric(a)})
    r = rmatrix.build_r(args.n, a, f)
    checks.append({"identity": "transported r_A equals the closed formula", "ok": not r.findings,
                   "violations": r.findings[:20]})
    out = {"n": args.n, "A": mat_json(a), "terms": len(q.r), "checks": checks}
    return out, all(c["ok"] for c in checks)


def cmd_orbit(args, f):
    a = square(load_matrix(args.matrix, f), name="A")
    lab = twisting.h_orbit_label(a)
    ok = lab.verify(a)
    return {"l": lab.l, "T": mat_json(lab.t), "sym_remainder": mat_json(lab.sym_remainder),
            "verified": ok}, ok


def cmd_twist(args, f):
    a = square(load_matrix(args.matrix, f), name="A")
    l = square(load_matrix(args.cocycle, f, "L"), a.shape[0], "L")
    if not is_symmetric(l):
        raise InputError("the cocycle matrix L must be symmetric")
    n = a.shape[0]
    b = twisting.act_on_r(twisting.build_sigma(n, l, f), rmatrix.build_r(n, a, f), verify=True)
    return mat_json(b.a), True


def cmd_clifford(args, f):
    l = square(load_matrix(args.L, f, "L"), args.n, "L")
    if not is_symmetric(l):
        raise InputError("L must be symmetric")
    checks = []
    if args.check in ("comodule", "all"):
        cl = modalg.build_clifford(args.n, l, field=f)
        bad = modalg.check_comodule_algebra(cl.alg, cl.h, cl.coaction)
        checks.append({"identity": "comodule algebra axioms", "ok": not bad, "violations": bad[:20]})
    if args.check in ("module", "azumaya", "all"):
        a = square(load_matrix(args.R, f, "R"), args.n, "R") if args.R else None
        m = modalg.clifford_module(args.n, l, a, field=f)
        if args.check in ("module", "all"):
            bad = modalg.check_module_algebra(m)
            checks.append({"identity": "module algebra axioms", "ok": not bad, "violations": bad[:20]})
        if args.check in ("azumaya", "all"):
            rm = rmatrix.build_R(args.n, a if a is not None else zeros(args.n, args.n, f), f).r
            rep = modalg.azumaya_check(m, rm)
            checks.append({"identity": "F and G are isomorphisms", "ok": bool(rep["azumaya"]),
                           **{k: v for k, v in rep.items() if k != "azumaya"}})
    return {"n": args.n, "L": mat_json(l), "checks": checks}, all(c["ok"] for c in checks)


def cmd_invariants(args, f):
    obj = load_json_arg(args.module)
    r = load_matrix(args.R, f, "R") if args.R else None
    mod = module_from_json(obj, f, r)
    d = modalg.normalize_pi(modalg.inner_decomposition(mod))
    bad = d.relation_violations()
    flag, _ = modalg.strongly_inner_test(d, mod.h)
    w = brauer.BrauerClassWitness(d.alpha, d.l)
    out = witness_json(w, f)
    out["strongly_inner"] = flag
    out["relations"] = {"ok": not bad, "violations": bad}
    return out, not bad


def cmd_symgroup(args, f):
    m = square(load_matrix(args.M, f, "M"), args.n, "M")
    if args.action == "op":
        x = brauer.SymBlockMatrix.from_matrix(square(load_matrix(args.L, f, "L"), args.n, "L"), m, args.r)
        y = brauer.SymBlockMatrix.from_matrix(square(load_matrix(args.N, f, "N"), args.n, "N"), m, args.r)
        z = brauer.sym_group_op(x, y)
        return {"n": args.n, "r": args.r, "M": mat_json(m), "L+N": mat_json(z.l),
                "N+L": mat_json(brauer.sym_group_op(y, x).l)}, True
    if args.action == "axioms":
        rep = brauer.sym_group_axioms(args.n, args.r, m, samples=args.samples, seed=args.seed, field=f)
    else:
        rep = brauer.central_extension_decompose(args.n, args.r, m, samples=args.samples,
                                                 seed=args.seed, field=f)
    return rep, rep["ok"]


def cmd_chi(args, f):
    l = square(load_matrix(args.L, f, "L"), args.n, "L")
    m = square(load_matrix(args.M, f, "M"), args.n, "M") if args.M else zeros(args.n, args.n, f)
    if not is_symmetric(l):
        raise InputError("L must be symmetric")
    w = brauer.chi_on_representatives(l)
    d = w.data["inner"]
    flag, _ = modalg.strongly_inner_test(d, build_en(args.n, f))
    out = {"witness": witness_json(w, f), "verified": w.data["verified"], "strongly_inner": flag}
    ok = w.data["verified"]
    if args.check_product:
        l2 = square(load_matrix(args.check_product, f, "L'"), args.n, "L'")
        rep = brauer.chi_product(l, l2, m)
        out["product"] = {"witness": witness_json(rep["witness"], f), "expected": mat_json(rep["expected"]),
                          "ok": rep["ok"]}
        ok = ok and rep["ok"]
    return out, ok


def cmd_autact(args, f):
    t = square(load_matrix(args.T, f, "T"), name="T")
    l = square(load_matrix(args.L, f, "L"), t.shape[0], "L")
    out = brauer.aut_conjugation_action(t, l, verify=args.verify)
    return {"TLT^t": mat_json(out), "verified_by_representative": bool(args.verify)}, True


# -- verify-all ----------------------------------------------------------------------

def _rand_matrix(rng, n, f):
    return np.array([[f.random(rng) for _ in range(n)] for _ in range(n)], dtype=object).reshape(n, n)


def _entry(identity, anchor, bad):
    return {"identity": identity, "anchor": anchor, "ok": not bad, "violations": list(bad)[:10]}


def verify_all(n: int, seed: int, f=QQ, full: bool = False) -> list[dict]:
    """The module suites at a fixed n on seeded data (entries in -3..3)."""
    rng = random.Random(seed)
    rep = []
    h = build_en(n, f)
    rep.append(_entry("Hopf algebra axioms of E(%d)" % n, "E(n) presentation", check_hopf_axioms(h)))
    rep.append(_entry("phi: E(n) -> E(n)^* is a Hopf isomorphism", "self-duality", duality_iso(n, f).check()))
    if n == 0:
        return rep
    a = _rand_matrix(rng, n, f)
    q = rmatrix.build_R(n, a, f)
    rep.append(_entry("quasi-triangular axioms and Yang-Baxter for R_A", "R_A family", rmatrix.check_qt(q)))
    tri = rmatrix.is_triangular(q) == is_symmetric(a)
    rep.append(_entry("R_A triangular iff A symmetric", "triangularity criterion",
                      [] if tri else ["triangularity disagrees with symmetry of A"]))
    r = rmatrix.build_r(n, a, f)
    rep.append(_entry("(phi (x) phi)(R_A) equals the closed form of r_A", "duality transport", r.findings))
    rep.append(_entry("coquasi-triangular axioms for r_A", "dual structures", rmatrix.check_coqt(r.form)))
    m = _rand_matrix(rng, n, f)
    l = _rand_matrix(rng, n, f)
    l = l + l.T
    for name, sigma in (("omega(M)", twisting.build_omega(n, m, f)), ("sigma(L)", twisting.build_sigma(n, l, f))):
        rep.append(_entry("2-cocycle identity for %s" % name, "cocycle identity",
                          twisting.check_cocycle(sigma.form)))
        rep.append(_entry("laziness of %s" % name, "lazy cocycles", twisting.check_lazy(sigma.form)))
        same = twisting.twisted_product(sigma.form).same_structure(h.alg)
        rep.append(_entry("E(n)^%s has the product of E(n)" % name, "Doi twist of a lazy cocycle",
                          [] if same else ["twisted product differs"]))
    b = twisting.act_on_r(twisting.build_sigma(n, l, f), r, verify=True)
    rep.append(_entry("act_on_r moves A by a symmetric matrix", "orbits of coquasi-triangular structures",
                      [] if is_symmetric(a - b.a) else ["A - B not symmetric"]))
    for rr in range(n + 1):
        sg = brauer.sym_group_axioms(n, rr, samples=20, seed=seed, field=f)
        rep.append(_entry("(Sym_{M,%d,%d}, (+)) is a group" % (n, rr), "blocked symmetric group law",
                          sg["violations"]))
    if n <= 2:
        w = brauer.chi_on_representatives(l)
        rep.append(_entry("A^sigma with sigma = sigma(-L) has invariants (1, L)", "kernel map chi",
                          [] if w.data["verified"] else ["invariants %s" % w.l.tolist()]))
        if n == 1 or full:
            l2 = _rand_matrix(rng, n, f)
            l2 = l2 + l2.T
            pr = brauer.chi_product(l, l2)
            rep.append(_entry("invariants of A^sigma # A^sigma' equal L (+) L'", "chi is a homomorphism",
                              [] if pr["ok"] else ["got %s" % pr["L"].tolist()]))
    return rep


def cmd_verify_all(args, f):
    if args.n < 0:
        raise InputError("n must be nonnegative")
    rep = verify_all(args.n, args.seed, f, args.full)
    return {"n": args.n, "seed": args.seed, "field": str(f), "checks": rep}, all(c["ok"] for c in rep)


# -- entry point -----------------------------------------------------------------------

def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="en", description=__doc__.splitlines()[0])
    p.add_argument("--field", default="q", help="q (default) or pNN")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, **kw)
        sp.set_defaults(fn=fn)
        sp.add_argument("--field", default=argparse.SUPPRESS)
        sp.add_argument("--out", default=argparse.SUPPRESS)
        return sp

    sp = add("build", cmd_build, help="build E(n) and check the Hopf axioms")
    sp.add_argument("--n", type=int, required=True)
    sp = add("rmatrix", cmd_rmatrix, help="R_A and its checks")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--check", choices=["qt", "triangular", "yb"], default="qt")
    sp = add("orbit", cmd_orbit, help="orbit label of r_A")
    sp.add_argument("--matrix", required=True)
    sp = add("twist", cmd_twist, help="act with sigma(L) on r_A")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--cocycle", required=True)
    sp = add("clifford", cmd_clifford, help="checks on Cl(L)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--L", required=True)
    sp.add_argument("--R", help="matrix A of the braiding R_A (default 0)")
    sp.add_argument("--check", choices=["comodule", "module", "azumaya", "all"], default="comodule")
    sp = add("invariants", cmd_invariants, help="(alpha, L) of a module algebra End(V)")
    sp.add_argument("--module", required=True)
    sp.add_argument("--R", help="matrix A of the braiding used by products (default 0)")
    sp = add("symgroup", cmd_symgroup, help="the group (Sym_{M,n,r}, (+))")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--M", required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("action", choices=["op", "axioms", "central"])
    sp.add_argument("--L")
    sp.add_argument("--N")
    sp = add("chi", cmd_chi, help="chi on representatives")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--M")
    sp.add_argument("--L", required=True)
    sp.add_argument("--check-product", dest="check_product")
    sp = add("autact", cmd_autact, help="the action L -> T L T^t")
    sp.add_argument("--T", required=True)
    sp.add_argument("--L", required=True)
    sp.add_argument("--verify", action="store_true", help="also decompose the twisted representative")
    sp = add("verify-all", cmd_verify_all, help="run the property suites")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--full", action="store_true", help="include the dim 64 product at n = 2")
    return p


def run(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        f = parse_field(args.field)
        if args.command == "symgroup" and args.action == "op" and not (args.L and args.N):
            raise InputError("symgroup op needs --L and --N")
        out, ok = args.fn(args, f)
    except (ValueError, KeyError, TypeError) as e:
        print(json.dumps({"error": str(e)}), file=sys.stderr)
        return 2
    text = json.dumps(out, sort_keys=True, indent=1)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
