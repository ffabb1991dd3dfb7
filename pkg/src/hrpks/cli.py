"""Command-line tool wiring the modules into GM / signer / verifier
workflows.

Exit codes: 0 success or Accept, 1 Reject, 2 usage or I/O problems,
3 signer revoked, 4 invariant violation (corrupt data or failed
reproduction).

All randomness flows through one generator: OS entropy by default,
a deterministic stream under --seed (byte-identical outputs across runs).
"""

import argparse
import json
import random
import sys
import warnings

from . import assumption_lab, curve_q, hierarchy, revocation, serial, sigma
from . import toydata
from .curve_fp import msm, reduce_curve, reduce_point, scalar_mul_fp
from .curve_q import catalog, scalar_mul_q
from .errors import InvariantError, ParseError, RetryExhausted, SignerRevoked
from .hierarchy import Hyperplane, find_dept, new_root

EXIT_OK = 0
EXIT_REJECT = 1
EXIT_USAGE = 2
EXIT_REVOKED = 3
EXIT_INVARIANT = 4


def _rng(seed):
    if seed is None:
        return random.SystemRandom()
    return random.Random(seed)


def _load_params(path):
    params = serial.load_artifact(path)
    if not isinstance(params, hierarchy.SystemParams):
        raise ParseError(f"{path} does not hold system parameters")
    return params


def _load_tree(path, create=False):
    try:
        root = serial.load_artifact(path)
    except FileNotFoundError:
        if not create:
            raise
        return new_root()
    if not isinstance(root, hierarchy.DeptNode):
        raise ParseError(f"{path} does not hold a department tree")
    return root


def _load_rl(path, params):
    rl = serial.load_artifact(path, curve=params.curve)
    if not isinstance(rl, revocation.RevocationList):
        raise ParseError(f"{path} does not hold a revocation list")
    return rl


def _load_keypair(path, params):
    pair = serial.load_artifact(path, curve=params.curve)
    if not (isinstance(pair, tuple) and len(pair) == 2
            and isinstance(pair[0], hierarchy.SecretKey)):
        raise ParseError(f"{path} does not hold a keypair")
    return pair


def _load_pub(path, params):
    pk = serial.load_artifact(path, curve=params.curve)
    if not isinstance(pk, hierarchy.PublicKey):
        raise ParseError(f"{path} does not hold a public key")
    return pk


def cmd_setup(args):
    rng = _rng(args.seed)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        params, gm_sk = hierarchy.setup(args.curve, args.p, args.q, rng,
                                        l_c=args.lc, l_s=args.ls)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    serial.save_artifact(args.params_out, "params", params)
    serial.save_artifact(args.gm_key_out, "keypair", (gm_sk, params.gm_pub))
    print(f"wrote {args.params_out} and {args.gm_key_out} "
          f"(r={params.r}, l_c={params.l_c}, l_s={params.l_s})")
    return EXIT_OK


def cmd_dept_add(args):
    params = _load_params(args.params)
    root = _load_tree(args.tree, create=True)
    parent = find_dept(root, args.parent)
    rng = _rng(args.seed)
    node = hierarchy.add_department(params, parent, rng, name=args.name)
    serial.save_artifact(args.tree, "tree", root)
    print(node.path)
    return EXIT_OK


def cmd_member_join(args):
    params = _load_params(args.params)
    root = _load_tree(args.tree)
    dept = find_dept(root, args.dept)
    gm_sk, _gm_pub = _load_keypair(args.gm_key, params)
    rng = _rng(args.seed)
    sk, pk = hierarchy.join(params, gm_sk, dept, args.id, rng)
    serial.save_artifact(args.key_out, "keypair", (sk, pk))
    serial.save_artifact(args.pub_out, "cert", pk)
    print(f"member {args.id!r} joined {dept.path}; "
          f"wrote {args.key_out} and {args.pub_out}")
    return EXIT_OK


def cmd_sign(args):
    params = _load_params(args.params)
    sk, pk = _load_keypair(args.key, params)
    rl = _load_rl(args.rl, params)
    with open(args.msg_file, "rb") as fh:
        message = fh.read()
    rng = _rng(args.seed)
    sig = sigma.sign(params, sk, pk, rl, message, rng)
    serial.save_artifact(args.out, "signature", sig)
    print(f"wrote {args.out} (rl version {sig.rl_version}, "
          f"{len(sig.nonzero_proofs)} nonzero proofs)")
    return EXIT_OK


def cmd_verify(args):
    params = _load_params(args.params)
    pk = _load_pub(args.pub, params)
    rl = _load_rl(args.rl, params)
    sig = serial.load_artifact(args.sig)
    if not isinstance(sig, sigma.Signature):
        raise ParseError(f"{args.sig} does not hold a signature")
    with open(args.msg_file, "rb") as fh:
        message = fh.read()
    result = sigma.verify(params, pk, rl, message, sig)
    if args.json:
        print(json.dumps({"accepted": result.accepted,
                          "reason": result.reason}, sort_keys=True))
    elif result.accepted:
        print("Accept")
    else:
        print(f"Reject({result.reason})")
    return EXIT_OK if result.accepted else EXIT_REJECT


def cmd_revoke_member(args):
    params = _load_params(args.params)
    pk = _load_pub(args.pub, params)
    rl = _load_rl(args.rl, params)
    rl = revocation.revoke_member(rl, pk)
    out = args.out or args.rl
    serial.save_artifact(out, "rl", rl)
    print(f"revoked member {pk.member_id!r}; {out} now version {rl.version}")
    return EXIT_OK


def cmd_revoke_group(args):
    params = _load_params(args.params)
    root = _load_tree(args.tree)
    dept = find_dept(root, args.dept)
    rl = _load_rl(args.rl, params)
    rl = revocation.revoke_group(rl, dept)
    out = args.out or args.rl
    serial.save_artifact(out, "rl", rl)
    print(f"revoked group {dept.path}; {out} now version {rl.version}")
    return EXIT_OK


def cmd_rl_coalesce(args):
    params = _load_params(args.params)
    root = _load_tree(args.tree)
    rl = _load_rl(args.rl, params)
    before = rl.version
    rl = revocation.coalesce(rl, root)
    out = args.out or args.rl
    serial.save_artifact(out, "rl", rl)
    if rl.version == before:
        print(f"no complete sibling family; {out} unchanged at "
              f"version {rl.version}")
    else:
        print(f"coalesced; {out} now version {rl.version} with "
              f"{len(rl.groups)} group entries")
    return EXIT_OK


def cmd_lab_relations(args):
    params = _load_params(args.params)
    if args.method == "mitm":
        report = assumption_lab.relation_search_mitm(params, args.bound)
    else:
        report = assumption_lab.relation_search_exhaustive(params, args.bound)
    serial.save_artifact(args.out, "report", report)
    nontrivial = sum(1 for f in report.trivial_flags if not f)
    print(f"{report.method} search bound {report.bound}: "
          f"{len(report.relations)} relations "
          f"({nontrivial} with >=2 nonzero coordinates); wrote {args.out}")
    return EXIT_OK


def cmd_lab_orders(args):
    params = _load_params(args.params)
    report = assumption_lab.order_report(params)
    serial.save_artifact(args.out, "report", report)
    print(f"orders {list(report.orders)} in Hasse interval "
          f"[{report.hasse_lo}, {report.hasse_hi}]; "
          f"q/min_order = {report.q_over_min_order:.6g}; wrote {args.out}")
    return EXIT_OK


def _diff_line(label, got, want):
    ok = got == want
    print(f"  {'ok  ' if ok else 'DIFF'} {label}: computed {got}"
          + ("" if ok else f", pinned {want}"))
    return ok


def cmd_reproduce_toy17(_args):
    """Recompute the toy17 worked example and diff it against the pinned
    vectors: generator multiples over Q and mod p, the department planes,
    and the published key material."""
    curve = catalog(toydata.TOY_CURVE_ID)
    p = toydata.TOY_P
    reduced = reduce_curve(curve, p)
    g1, g2 = curve.generators
    ok = True

    for label, gen, want_q, want_p in (
            ("P1", g1, toydata.P1_MULTIPLES_Q, toydata.P1_MULTIPLES_P),
            ("P2", g2, toydata.P2_MULTIPLES_Q, toydata.P2_MULTIPLES_P)):
        for n in range(1, 8):
            pt = scalar_mul_q(curve, n, gen)
            got_q = (str(pt.x), str(pt.y))
            ok &= _diff_line(f"{n}*{label} over Q", got_q, want_q[n - 1])
            red = reduce_point(reduced, pt)
            got_p = (red.x, red.y)
            ok &= _diff_line(f"{n}*{label} mod p", got_p, want_p[n - 1])
            direct = scalar_mul_fp(reduced, n, reduce_point(reduced, gen))
            ok &= _diff_line(f"{n}*reduce({label})", (direct.x, direct.y),
                             want_p[n - 1])

    q = toydata.TOY_Q
    fin = Hyperplane(toydata.FINANCIAL_PLANE)
    ok &= _diff_line("financial plane at SK2",
                     fin.evaluate(toydata.SK2, q), 0)
    ok &= _diff_line("financial plane at (3257, on-plane x2)",
                     fin.evaluate((toydata.SK1_PUBLISHED[0],
                                   toydata.SK1_X2_ON_PLANE), q), 0)
    ok &= _diff_line("financial plane at published SK1 (known nonzero)",
                     fin.evaluate(toydata.SK1_PUBLISHED, q),
                     toydata.SK1_PUBLISHED_PLANE_RESIDUE)

    gens = [reduce_point(reduced, g1), reduce_point(reduced, g2)]
    pk2 = msm(reduced, toydata.SK2, gens)
    ok &= _diff_line("PK2", (pk2.x, pk2.y), toydata.PK2)
    pk1 = msm(reduced, toydata.SK1_PUBLISHED, gens)
    ok &= _diff_line("PK1 from published SK1", (pk1.x, pk1.y),
                     toydata.PK1_PUBLISHED)
    pk1b = msm(reduced, (toydata.SK1_PUBLISHED[0], toydata.SK1_X2_ON_PLANE),
               gens)
    ok &= _diff_line("PK1 from on-plane x2 (differs from published PK1)",
                     (pk1b.x, pk1b.y), toydata.PK1_FROM_ON_PLANE)

    if ok:
        print("toy17 reproduction: all values match")
        return EXIT_OK
    print("toy17 reproduction: DIFFERENCES FOUND")
    return EXIT_INVARIANT


def build_parser():
    top = argparse.ArgumentParser(
        prog="hrpks",
        description="Hierarchical-revocation signatures over high-rank "
                    "elliptic curves (research tool; not constant-time)")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("setup", help="create system parameters and GM key")
    p.add_argument("--curve", required=True, choices=curve_q.catalog_ids())
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--lc", type=int, default=None)
    p.add_argument("--ls", type=int, default=hierarchy.DEFAULT_STAT_GAP_BITS)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--params-out", default="gm.params")
    p.add_argument("--gm-key-out", default="gm.key")
    p.set_defaults(func=cmd_setup)

    p = sub.add_parser("dept", help="department tree operations")
    dsub = p.add_subparsers(dest="dept_command", required=True)
    d = dsub.add_parser("add", help="add a department under --parent")
    d.add_argument("--params", required=True)
    d.add_argument("--tree", required=True)
    d.add_argument("--parent", default="/")
    d.add_argument("--name", default=None)
    d.add_argument("--seed", type=int, default=None)
    d.set_defaults(func=cmd_dept_add)

    p = sub.add_parser("member", help="member operations")
    msub = p.add_subparsers(dest="member_command", required=True)
    m = msub.add_parser("join", help="generate and certify a member keypair")
    m.add_argument("--params", required=True)
    m.add_argument("--tree", required=True)
    m.add_argument("--gm-key", required=True)
    m.add_argument("--dept", required=True)
    m.add_argument("--id", required=True)
    m.add_argument("--key-out", required=True)
    m.add_argument("--pub-out", required=True)
    m.add_argument("--seed", type=int, default=None)
    m.set_defaults(func=cmd_member_join)

    p = sub.add_parser("sign", help="sign a message file")
    p.add_argument("--params", required=True)
    p.add_argument("--key", required=True)
    p.add_argument("--rl", required=True)
    p.add_argument("--msg-file", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_sign)

    p = sub.add_parser("verify", help="verify a signature file")
    p.add_argument("--params", required=True)
    p.add_argument("--pub", required=True)
    p.add_argument("--rl", required=True)
    p.add_argument("--msg-file", required=True)
    p.add_argument("--sig", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("revoke", help="revocation operations")
    rsub = p.add_subparsers(dest="revoke_command", required=True)
    r = rsub.add_parser("member", help="put a public key on the list")
    r.add_argument("--params", required=True)
    r.add_argument("--rl", required=True)
    r.add_argument("--pub", required=True)
    r.add_argument("--out", default=None)
    r.set_defaults(func=cmd_revoke_member)
    r = rsub.add_parser("group", help="put a department's constraints "
                                      "on the list")
    r.add_argument("--params", required=True)
    r.add_argument("--rl", required=True)
    r.add_argument("--tree", required=True)
    r.add_argument("--dept", required=True)
    r.add_argument("--out", default=None)
    r.set_defaults(func=cmd_revoke_group)

    p = sub.add_parser("rl", help="revocation-list maintenance")
    lsub = p.add_subparsers(dest="rl_command", required=True)
    c = lsub.add_parser("coalesce", help="collapse fully revoked families")
    c.add_argument("--params", required=True)
    c.add_argument("--rl", required=True)
    c.add_argument("--tree", required=True)
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_rl_coalesce)

    p = sub.add_parser("lab", help="hardness-assumption probes")
    labsub = p.add_subparsers(dest="lab_command", required=True)
    l = labsub.add_parser("relations", help="search for generator relations")
    l.add_argument("--params", required=True)
    l.add_argument("--bound", type=int, required=True)
    l.add_argument("--method", choices=["exhaustive", "mitm"],
                   default="exhaustive")
    l.add_argument("--out", required=True)
    l.set_defaults(func=cmd_lab_relations)
    l = labsub.add_parser("orders", help="generator orders vs Hasse interval")
    l.add_argument("--params", required=True)
    l.add_argument("--out", required=True)
    l.set_defaults(func=cmd_lab_orders)

    p = sub.add_parser("reproduce", help="recompute built-in examples")
    p.add_argument("example", choices=["toy17"])
    p.set_defaults(func=cmd_reproduce_toy17)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SignerRevoked as e:
        print(f"signer revoked: {e}", file=sys.stderr)
        return EXIT_REVOKED
    except InvariantError as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except RetryExhausted as e:
        print(f"retry exhausted: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ParseError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
