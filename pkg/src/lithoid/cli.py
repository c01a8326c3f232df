"""Command-line shell: index a corpus, navigate, search, serve the API."""

from __future__ import annotations

import argparse
import sys

from .config import EngineConfig
from .engine import Engine
from .errors import EmptyRequest, LithoidError, NoFocus
from .expressions import linearize, parse
from .hyperindex import Start
from .navigation import BEAM_DOWN, NavigationSession, PreferenceProfile
from .selection import RankedSource


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="lithoid",
        description="Index-expression hyperindex: build, navigate, search, serve.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", help="ingest a corpus and persist a snapshot")
    p_index.add_argument("--corpus", required=True, help="JSONL file or directory of .txt files")
    p_index.add_argument("--out", required=True, help="snapshot path to write")
    p_index.add_argument("--config", default=None, help="flat key=value config file")

    p_nav = sub.add_parser("navigate", help="interactive query-by-navigation session")
    p_nav.add_argument("--snapshot", required=True)
    p_nav.add_argument("--config", default=None)
    p_nav.add_argument("--profile", default=None, help="preference profile file to load/save")

    p_search = sub.add_parser("search", help="one-shot selection for given clues")
    p_search.add_argument("--snapshot", required=True)
    p_search.add_argument("--clue", action="append", required=True, dest="clues")
    p_search.add_argument("--limit", type=int, default=None)
    p_search.add_argument("--config", default=None)

    p_serve = sub.add_parser("serve", help="run the HTTP JSON API")
    p_serve.add_argument("--snapshot", required=True)
    p_serve.add_argument("--addr", default=None, help="HOST:PORT (default from config)")
    p_serve.add_argument("--config", default=None)
    p_serve.add_argument("--ui", default=None, help="directory of static UI files to serve at /ui")

    args = parser.parse_args(argv)
    try:
        config = EngineConfig.resolve(args.config)
        if args.command == "index":
            return _cmd_index(args, config)
        if args.command == "navigate":
            return _cmd_navigate(args, config)
        if args.command == "search":
            return _cmd_search(args, config)
        if args.command == "serve":
            return _cmd_serve(args, config)
    except LithoidError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: IoError: {exc}", file=sys.stderr)
        return 2
    return 0


def _cmd_index(args, config: EngineConfig) -> int:
    engine = Engine(config)
    report = engine.ingest_corpus(args.corpus)
    path = engine.save_snapshot(args.out)
    print(f"registered: {report.registered}")
    print(f"failed: {report.failed}")
    for source_id, message in report.errors:
        print(f"  {source_id}: {message}")
    print(f"phrases: {sum(report.phrase_counts.values())}")
    print(f"nodes: {len(engine.lithoid)}")
    print(f"snapshot: {path}")
    return 0 if report.failed == 0 else 1


def _cmd_search(args, config: EngineConfig) -> int:
    engine = Engine.load_snapshot(args.snapshot, config)
    clues = {parse(c, config.grammar) for c in args.clues}
    results = engine.select(clues, limit=args.limit)
    _print_results(engine, results)
    return 0


def _print_results(engine: Engine, results: list[RankedSource]) -> None:
    if not results:
        print("no matching sources")
        return
    for rank, r in enumerate(results, 1):
        d = engine.registry.descriptor(r.source_id)
        print(f"{rank}. {r.source_id}  score={r.score:.3f}  contained={r.contained_count}  {d.uri}")
        if d.title:
            print(f"   {d.title}")
        for m in r.matched:
            print(f"   {m.kind}: {linearize(m.clue)}  <-  {linearize(m.phrase)}")


PROMPT = "> "
HELP = """commands:
  choose N      move to alternative number N (bare N works too)
  back          return to the previous focus
  clue          collect the current focus as a clue
  results       show ranked sources for the collected clues
  feedback N +  mark result N relevant (N - marks it not relevant)
  done          finish: print results for the collected clues and exit
  help          show this message"""


def _cmd_navigate(args, config: EngineConfig) -> int:
    engine = Engine.load_snapshot(args.snapshot, config)
    profile = None
    if args.profile:
        try:
            profile = PreferenceProfile.load(args.profile)
        except FileNotFoundError:
            profile = PreferenceProfile()
    session = engine.begin_session(profile)
    print(f"session {session.session_id}")
    print(HELP)
    last_results: list[RankedSource] = []
    _show_state(session)
    while True:
        try:
            line = input(PROMPT).strip()
        except EOFError:
            line = "done"
        if not line:
            continue
        words = line.split()
        cmd = words[0].lower()
        if cmd == "choose" and len(words) == 2:
            cmd, words = words[1], words[1:]
        try:
            if cmd == "done":
                break
            elif cmd == "help":
                print(HELP)
            elif cmd == "back":
                if len(session.trail) < 2:
                    print("already at the start node")
                else:
                    session.move(session.trail[-2])
                    _show_state(session)
            elif cmd == "clue":
                session.add_clue()
                print("clues: " + ", ".join(sorted(linearize(c) for c in session.clues)))
            elif cmd == "results":
                last_results = engine.session_results(session)
                _print_results(engine, last_results)
            elif cmd == "feedback":
                if len(words) != 3 or words[2] not in ("+", "-"):
                    print("usage: feedback N +|-")
                    continue
                n = int(words[1])
                if not 1 <= n <= len(last_results):
                    print("no such result; run `results` first")
                    continue
                source_id = last_results[n - 1].source_id
                session.record_feedback(source_id, words[2] == "+")
                print(f"feedback recorded for {source_id}")
            elif cmd.isdigit():
                alts = session.alternatives()
                n = int(cmd)
                if not 1 <= n <= len(alts):
                    print(f"choose a number between 1 and {len(alts)}")
                    continue
                session.move(alts[n - 1].expr)
                _show_state(session)
            else:
                print(f"unknown command {cmd!r} (try `help`)")
        except NoFocus:
            print("move to a node first; the start node cannot be a clue")
        except LithoidError as exc:
            print(f"{exc.code}: {exc}")
    if args.profile:
        session.profile.save(args.profile)
    print("clues: " + (", ".join(sorted(linearize(c) for c in session.clues)) or "none"))
    try:
        _print_results(engine, engine.session_results(session))
    except EmptyRequest:
        print("no clues collected; nothing to select")
    return 0


def _phrase(expr) -> str:
    return "(start)" if isinstance(expr, Start) else linearize(expr)


def _show_state(session: NavigationSession) -> None:
    print(f"focus: {_phrase(session.focus)}")
    alts = session.alternatives()
    if not alts:
        print("no alternatives (empty hyperindex?)")
        return
    for i, alt in enumerate(alts, 1):
        direction = "down  " if alt.direction == BEAM_DOWN else "refine"
        print(f"  {i}. {direction} {_phrase(alt.expr)}  [support {alt.support}, score {alt.score:.2f}]")


def _cmd_serve(args, config: EngineConfig) -> int:
    import uvicorn

    from .server import create_app

    addr = args.addr or config.listen_addr
    host, _, port = addr.rpartition(":")
    if not host or not port.isdigit():
        raise LithoidError(f"bad listen address {addr!r}, expected HOST:PORT")
    engine = Engine.load_snapshot(args.snapshot, config)
    app = create_app(engine, ui_dir=args.ui)
    uvicorn.run(app, host=host, port=int(port), log_level="warning")
    return 0


if __name__ == "__main__":
    sys.exit(main())
