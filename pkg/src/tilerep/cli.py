"""Command-line client for the tilerep service.

The CLI only reads input files, posts one request, and renders the
response.  By default it mounts the service in-process over an ASGI
transport, so no server is needed; --server points it at a running
instance instead.

Exit codes: 0 success, 2 input error, 3 budget/size-limit error.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys

import httpx

from . import __version__

USER_AGENT = f"tilerep-cli/{__version__}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tilerep",
        description=(
            "Representation varieties Hom(F_k, G)/G of substitution-tiling "
            "approximants and their direct limits."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, group=False, rule=False, endo=False, collar=False, rank=False, budget=False):
        if group:
            p.add_argument("--group", required=True, help="group spec, e.g. S3, C2, D4, perm(3): (1 2 3); (1 2)")
        if rule:
            p.add_argument("--rule", help="substitution rule file")
        if endo:
            p.add_argument("--endo", help="free-group endomorphism file (bypasses the approximant builder)")
        if collar:
            p.add_argument("--collar", type=int, choices=(0, 1), default=0, help="collar level (default 0)")
        if rank:
            p.add_argument("--rank", type=int, help="free-group rank")
        if budget:
            p.add_argument("--budget", type=int, help="max enumeration size (default 10^7 points)")
        p.add_argument("--json", action="store_true", help="emit the JSON report instead of text")
        p.add_argument("--server", help="base URL of a running service (default: in-process)")

    p = sub.add_parser("count", help="count homomorphisms and conjugacy classes")
    common(p, group=True, rank=True, budget=True)

    for name, blurb in (
        ("limit", "direct limit of Hom(pi1, G)/G under the substitution-induced map"),
        ("based-limit", "direct limit of Hom(pi1, G) without the conjugation quotient"),
    ):
        p = sub.add_parser(name, help=blurb)
        common(p, group=True, rule=True, endo=True, collar=True, rank=True, budget=True)

    p = sub.add_parser("approximant", help="approximant graph, rank, and induced endomorphism")
    common(p, rule=True, collar=True)

    p = sub.add_parser("factors", help="allowed factors of the substitution language")
    common(p, rule=True)
    p.add_argument("--length", type=int, default=2, help="factor length (default 2)")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


def _read_file(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


class UsageError(Exception):
    pass


def _build_request(args) -> tuple[str, dict]:
    cmd = args.command
    if cmd == "count":
        if args.rank is None:
            raise UsageError("count requires --rank")
        return "/count", {"group": args.group, "rank": args.rank, "budget": args.budget}
    if cmd in ("limit", "based-limit"):
        if (args.rule is None) == (args.endo is None):
            raise UsageError("provide exactly one of --rule or --endo")
        payload = {
            "group": args.group,
            "rule": _read_file(args.rule) if args.rule else None,
            "endo": _read_file(args.endo) if args.endo else None,
            "collar": args.collar,
            "rank": args.rank,
            "budget": args.budget,
        }
        return f"/{cmd}", payload
    if cmd == "approximant":
        if args.rule is None:
            raise UsageError("approximant requires --rule")
        return "/approximant", {"rule": _read_file(args.rule), "collar": args.collar}
    if cmd == "factors":
        if args.rule is None:
            raise UsageError("factors requires --rule")
        return "/factors", {"rule": _read_file(args.rule), "length": args.length}
    raise UsageError(f"unknown command {cmd}")


async def _post(server: str | None, path: str, payload: dict) -> httpx.Response:
    headers = {"user-agent": USER_AGENT}
    if server:
        async with httpx.AsyncClient(base_url=server, headers=headers, timeout=600.0) as client:
            return await client.post(path, json=payload)
    from .service.app import app

    transport = httpx.ASGITransport(app=app)
    async with httpx.AsyncClient(
        transport=transport, base_url="http://tilerep.internal", headers=headers, timeout=None
    ) as client:
        return await client.post(path, json=payload)


def _error_exit(resp: httpx.Response) -> int:
    try:
        detail = resp.json().get("detail")
    except ValueError:
        detail = None
    if isinstance(detail, dict):
        kind = detail.get("kind", "input")
        message = detail.get("message", "unknown error")
    elif isinstance(detail, list) and detail and isinstance(detail[0], dict) and "msg" in detail[0]:
        kind = "input"
        loc = ".".join(str(x) for x in detail[0].get("loc", ())[1:])
        message = f"{loc}: {detail[0]['msg']}" if loc else detail[0]["msg"]
    else:
        kind = "input"
        message = json.dumps(detail) if detail is not None else resp.text
    print(f"error: {message}", file=sys.stderr)
    return 3 if kind == "budget" else 2


# -- text rendering ----------------------------------------------------------


def _rule_line(report: dict) -> list[str]:
    lines = []
    if report.get("rule"):
        images = ", ".join(
            f"{name} -> {' '.join(img)}"
            for name, img in zip(report["rule"]["letters"], report["rule"]["images"])
        )
        lines.append(f"rule: {images}")
    if report.get("endo"):
        images = ", ".join(
            f"{name} -> {img}"
            for name, img in zip(report["endo"]["letters"], report["endo"]["images"])
        )
        lines.append(f"endo: {images}")
    if report.get("collar") is not None:
        lines.append(f"collar: {report['collar']}")
    return lines


def _endo_line(report: dict) -> str:
    endo = report["endomorphism"]
    images = ", ".join(f"{g} -> {w}" for g, w in zip(endo["generators"], endo["images"]))
    return f"endomorphism: {images}"


def render_text(report: dict) -> str:
    cmd = report["command"]
    lines = []
    if "group" in report:
        lines.append(f"group: {report['group']['spec']} (order {report['group']['order']})")
    lines.extend(_rule_line(report))
    if cmd == "count":
        lines.append(f"rank: {report['rank']}")
        lines.append(f"homs: {report['counts']['homs']}, classes: {report['counts']['classes']}")
    elif cmd in ("limit", "based-limit"):
        lines.append(f"rank: {report['rank']}")
        lines.append(_endo_line(report))
        counts = report["counts"]
        if counts.get("classes") is not None:
            lines.append(f"homs: {counts['homs']}, classes: {counts['classes']}")
        else:
            lines.append(f"homs: {counts['homs']}")
        lim = report["limit"]
        what = "classes" if cmd == "limit" else "points"
        lines.append(
            f"limit size: {lim['size']} (stabilized after {lim['steps']} steps, "
            f"{lim['transients']} transient {what})"
        )
        lines.append("members:")
        for member in lim["members"]:
            tup = "(" + ", ".join(member["tuple"]) + ")"
            if member.get("orbit_size") is not None:
                lines.append(f"  {tup}  orbit {member['orbit_size']}")
            else:
                lines.append(f"  {tup}")
    elif cmd == "approximant":
        witness = report.get("primitivity_witness")
        primitive = "yes" if report["primitive"] else "no"
        if witness is not None:
            primitive += f" (witness exponent {witness})"
        lines.append(f"primitive: {primitive}")
        graph = report["graph"]
        lines.append(
            f"graph: {graph['vertices']} vertices, {len(graph['edges'])} edges, "
            f"basepoint {graph['basepoint']}"
        )
        for edge in graph["edges"]:
            lines.append(f"  {edge['label']}: {edge['source']} -> {edge['target']}")
        lines.append(f"rank: {report['rank']}")
        lines.append(_endo_line(report))
    elif cmd == "factors":
        lines.append(f"length: {report['length']}")
        lines.append(f"primitive: {'yes' if report['primitive'] else 'no'}")
        lines.append(f"{len(report['factors'])} factors:")
        for factor in report["factors"]:
            lines.append(f"  {factor}")
    return "\n".join(lines)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        uvicorn.run("tilerep.service.app:app", host=args.host, port=args.port)
        return 0
    try:
        path, payload = _build_request(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        resp = asyncio.run(_post(args.server, path, payload))
    except httpx.HTTPError as exc:
        print(f"error: cannot reach service: {exc}", file=sys.stderr)
        return 2
    if resp.status_code != 200:
        return _error_exit(resp)
    report = resp.json()
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(render_text(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
