"""Command line front end.

The CLI is a thin client of the HTTP service: by default it talks to the
FastAPI app in-process (no server needed); with --url it sends the same
requests to a running instance instead.

Exit codes: 0 success, 1 at least one check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import httpx


def _client(url: str | None) -> httpx.Client:
    if url:
        return httpx.Client(base_url=url, timeout=3600.0)
    # synchronous in-process ASGI client (starlette's TestClient is an
    # httpx.Client wired straight into the app, no socket involved)
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DeprecationWarning)
        from starlette.testclient import TestClient
    return TestClient(_load_app(), base_url="http://cxtriangle")


def _load_app():
    from .service.app import app
    return app


def _fail(resp: httpx.Response):
    try:
        detail = resp.json().get("detail", resp.text)
    except Exception:
        detail = resp.text
    print(f"error ({resp.status_code}): {detail}", file=sys.stderr)
    return 2


def _print_report(rep: dict, as_json: bool) -> int:
    if as_json:
        print(json.dumps(rep, indent=2, sort_keys=True))
    else:
        for c in rep["checks"]:
            line = f"{c['status']:<10} {c['check_id']}"
            if c["details"]:
                line += f"  ({c['details']})"
            print(line)
        counts = rep["counts"]
        print(f"-- pass {counts['pass']}  fail {counts['fail']}  "
              f"unverified {counts['unverified']}")
    return 1 if rep["counts"]["fail"] else 0


def cmd_catalog(args, client) -> int:
    if args.action == "list":
        r = client.get("/catalog")
        if r.status_code != 200:
            return _fail(r)
        data = r.json()
        if args.json:
            print(json.dumps(data, indent=2, sort_keys=True))
            return 0
        for fam in data["families"]:
            print(f"{fam['family']}(p,{fam['name']})  p in {fam['p_values']}  "
                  f"{fam['display']}")
        print("tables:", ", ".join(data["tables"]))
        return 0
    r = client.get(f"/catalog/{args.family}/{args.param}/{args.p}")
    if r.status_code != 200:
        return _fail(r)
    data = r.json()
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
        return 0
    print(f"{data['group']['family']}({data['group']['p']},{data['group']['param']})  "
          f"signature {tuple(data['signature'])}")
    for s in data["sides"]:
        print(f"  side {s['label']}  truncated for p in {s['truncated_for']}")
    print("  mirrors:", ", ".join(data["stabilizer_reflections"]))
    return 0


def cmd_classify(args, client) -> int:
    r = client.post("/classify", json={
        "family": args.family, "param": args.param, "p": args.p,
        "word": args.word, "cap": args.cap})
    if r.status_code != 200:
        return _fail(r)
    data = r.json()
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        order = data["order"] if data["order"] is not None else "inf"
        print(f"kind: {data['kind']}  order: {order}")
        if data.get("multiplier"):
            print(f"multiplier: {data['multiplier']}")
        if data.get("mirror_polar"):
            print(f"mirror polar: [{', '.join(data['mirror_polar'])}]")
        if data.get("fixed_point"):
            print(f"fixed point: [{', '.join(data['fixed_point'])}]")
    return 0


def cmd_braid(args, client) -> int:
    r = client.post("/braid", json={
        "family": args.family, "param": args.param, "p": args.p,
        "word_a": args.word_a, "word_b": args.word_b, "nmax": args.nmax})
    if r.status_code != 200:
        return _fail(r)
    data = r.json()
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
        return 0
    if data["braid_length"] is None:
        print(f"no braid relation up to n = {args.nmax}")
        return 1
    print(f"braid length: {data['braid_length']}")
    if data.get("center_kind"):
        print(f"center: {data['center_kind']}  box norm sign {data['box_norm_sign']}  "
              f"trichotomy consistent: {data['trichotomy_consistent']}")
    return 0


def cmd_stabilizer(args, client) -> int:
    payload = {"family": args.family, "param": args.param, "p": args.p,
               "cap": args.cap}
    if args.reflection:
        payload["reflection"] = args.reflection
    r = client.post("/stabilizer/verify", json=payload)
    if r.status_code != 200:
        return _fail(r)
    return _print_report(r.json(), args.json)


def cmd_tracefield(args, client) -> int:
    r = client.post("/tracefield", json={
        "family": args.family, "param": args.param, "p": args.p,
        "mirror": args.mirror, "maxlen": args.maxlen, "budget": args.budget})
    if r.status_code != 200:
        return _fail(r)
    data = r.json()
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(f"field: conductor {data['conductor']}, degree {data['degree']}")
        print(f"degrees by length: {data['degrees_by_length']}  "
              f"stabilized: {data['stabilized']}  exhausted: {data['exhausted']}")
        print(f"claim: {data['claim_status']}  ({data['claim_details']})")
    return 0 if data["claim_status"] in ("pass", "degree_match", None) else 1


def cmd_presentation(args, client) -> int:
    payload = {"family": args.family, "param": args.param, "p": args.p}
    if args.reflection:
        payload["reflection"] = args.reflection
    r = client.post("/presentation", json=payload)
    if r.status_code != 200:
        return _fail(r)
    data = r.json()
    print(f"{data['row_id']}:")
    print(f"  {data['presentation']}")
    return 0


def cmd_reproduce(args, client) -> int:
    payload = {"maxlen": args.maxlen, "budget": args.budget,
               "with_tracefield": not args.no_tracefield}
    if args.table:
        payload["tables"] = args.table
    r = client.post("/reproduce-tables", json=payload)
    if r.status_code != 200:
        return _fail(r)
    reports = r.json()
    worst = 0
    outdir = Path(args.outdir) if args.outdir else None
    if outdir:
        outdir.mkdir(parents=True, exist_ok=True)
    for rep in reports:
        if outdir:
            golden = {k: v for k, v in rep.items() if k != "timing_ms"}
            path = outdir / f"{rep['table']}.json"
            path.write_text(json.dumps(golden, indent=2, sort_keys=True) + "\n")
            print(f"wrote {path}")
        code = _print_report(rep, args.json)
        worst = max(worst, code)
    return worst


def cmd_checks(args, client) -> int:
    worst = 0
    fams = client.get("/catalog").json()["families"]
    for fam in fams:
        for p in fam["p_values"]:
            ref = {"family": fam["family"], "param": fam["name"], "p": p}
            endpoint = "/forms/check" if args.what == "forms" else "/braids/check"
            r = client.post(endpoint, json=ref)
            if r.status_code != 200:
                return _fail(r)
            worst = max(worst, _print_report(r.json(), args.json))
    return worst


def cmd_hybrids(args, client) -> int:
    r = client.post("/hybrids/check")
    if r.status_code != 200:
        return _fail(r)
    return _print_report(r.json(), args.json)


def cmd_serve(args, client) -> int:
    import uvicorn
    uvicorn.run("cxtriangle.service.app:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cxtriangle",
        description="Exact verification of lattice complex hyperbolic triangle groups")
    ap.add_argument("--url", help="base URL of a running service "
                                  "(default: run the engine in-process)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list the catalog or show one group")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("family", nargs="?")
    p.add_argument("param", nargs="?")
    p.add_argument("p", nargs="?", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_catalog)

    p = sub.add_parser("classify", help="classify the isometry of a word")
    p.add_argument("family"); p.add_argument("param"); p.add_argument("p", type=int)
    p.add_argument("word")
    p.add_argument("--cap", type=int, default=200)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("braid", help="minimal braid length of two words")
    p.add_argument("family"); p.add_argument("param"); p.add_argument("p", type=int)
    p.add_argument("word_a"); p.add_argument("word_b")
    p.add_argument("--nmax", type=int, default=16)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_braid)

    p = sub.add_parser("stabilizer", help="verify mirror-stabilizer rows")
    p.add_argument("action", choices=["verify"])
    p.add_argument("family"); p.add_argument("param"); p.add_argument("p", type=int)
    p.add_argument("--reflection", help="restrict to one mirror block")
    p.add_argument("--cap", type=int, default=200)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_stabilizer)

    p = sub.add_parser("tracefield", help="trace field of a mirror stabilizer")
    p.add_argument("family"); p.add_argument("param"); p.add_argument("p", type=int)
    p.add_argument("--mirror", required=True)
    p.add_argument("--maxlen", type=int, default=8)
    p.add_argument("--budget", type=int, default=24000)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_tracefield)

    p = sub.add_parser("presentation", help="central-extension presentation of a row")
    p.add_argument("family"); p.add_argument("param"); p.add_argument("p", type=int)
    p.add_argument("--reflection")
    p.set_defaults(fn=cmd_presentation)

    p = sub.add_parser("reproduce-tables", help="machine-check the stabilizer tables")
    p.add_argument("--table", action="append", help="table id (repeatable)")
    p.add_argument("--maxlen", type=int, default=8)
    p.add_argument("--budget", type=int, default=24000)
    p.add_argument("--no-tracefield", action="store_true")
    p.add_argument("--outdir", help="write one JSON report per table")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_reproduce)

    p = sub.add_parser("check", help="sweep form or braid validation over the catalog")
    p.add_argument("what", choices=["forms", "braids"])
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_checks)

    p = sub.add_parser("hybrids", help="verify the hybrid-pair claims")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_hybrids)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(fn=cmd_serve)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "serve":
        return cmd_serve(args, None)
    with _client(args.url) as client:
        return args.fn(args, client)


if __name__ == "__main__":
    sys.exit(main())
