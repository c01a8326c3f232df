"""Acceptance suite: one test per release criterion, each printing a
[PASS]/[FAIL] line (run with `pytest tests/test_acceptance.py -v -s`).

Randomized checks use fixed seeds so every run exercises the same cases.
"""

import random
import time

from expr_helpers import brute_subexpressions, random_expression
from conftest import FIXTURES, load_fixture
from lithoid.characterize import Registry, SourceDescriptor
from lithoid.engine import Engine
from lithoid.expressions import contains, linearize, parse, size, subexpressions
from lithoid.hyperindex import Lithoid
from lithoid.selection import brute_force_select, select

from test_cli import ranked_lines, run_cli
from test_hyperindex import covering_path_length


def report(name: str, ok: bool, detail: str = "") -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {name} {detail}".rstrip())
    assert ok, f"{name}: {detail}"


def test_subexpression_oracle():
    rng = random.Random(2001)
    started = time.perf_counter()
    mismatches = 0
    for _ in range(500):
        e = random_expression(rng, 6)
        if set(subexpressions(e)) != brute_subexpressions(e):
            mismatches += 1
    elapsed = time.perf_counter() - started
    report(
        "subexpression-oracle",
        mismatches == 0 and elapsed < 10.0,
        f"500 trees, {mismatches} mismatches, {elapsed:.2f}s (limit 10s)",
    )


def test_worked_example():
    e = parse("proclamation of (resurrection of Jesus) by disciples")
    expected = {
        "proclamation",
        "resurrection",
        "jesus",
        "disciples",
        "resurrection of jesus",
        "proclamation of resurrection",
        "proclamation by disciples",
        "proclamation of (resurrection of jesus)",
        "proclamation of (resurrection) by disciples",
        "proclamation of (resurrection of jesus) by disciples",
    }
    got = {linearize(s) for s in subexpressions(e)}
    lithoid = Lithoid()
    lithoid.add_source("gospel")
    lithoid.insert_characterization("gospel", e)
    beams = {n.phrase for n in lithoid.beam_down(parse("resurrection of Jesus"))}
    ok = got == expected and beams == {"resurrection", "jesus"}
    report(
        "worked-example",
        ok,
        f"{len(got)} subexpressions, beam-downs {sorted(beams)}",
    )


def test_partial_order_suite():
    rng = random.Random(2003)
    violations = 0
    for _ in range(10_000):
        a = random_expression(rng, 6)
        b = random_expression(rng, 6)
        if not contains(a, a):
            violations += 1
        if contains(a, b) and contains(b, a) and a != b:
            violations += 1
        # transitivity along a derived chain (random unrelated pairs rarely
        # satisfy the premise)
        s = rng.choice(sorted(subexpressions(b), key=linearize))
        r = rng.choice(sorted(subexpressions(s), key=linearize))
        if not contains(b, r):
            violations += 1
        if contains(a, b) and not contains(a, s):
            violations += 1
    report("partial-order", violations == 0, f"10000 pairs, {violations} violations")


def _random_corpus(rng, max_phrases=20, max_size=5):
    pairs = []
    for i in range(rng.randint(1, 4)):
        for _ in range(rng.randint(1, max_phrases // 2)):
            pairs.append((f"s{i}", random_expression(rng, max_size)))
    return pairs[:max_phrases]


def test_lithoid_invariants():
    rng = random.Random(2004)
    started = time.perf_counter()
    violations = []
    for trial in range(50):
        pairs = _random_corpus(rng)
        lithoid = Lithoid()
        for sid, expr in pairs:
            lithoid.add_source(sid)
            lithoid.insert_characterization(sid, expr)
        union = set().union(*(subexpressions(e) for _, e in pairs))
        if {n.expr for n in lithoid.nodes()} != union:
            violations.append((trial, "union"))
        if not lithoid.check_edges():
            violations.append((trial, "edges"))
        shuffled = pairs[:]
        rng.shuffle(shuffled)
        other = Lithoid()
        for sid, expr in shuffled:
            other.add_source(sid)
            other.insert_characterization(sid, expr)
        if other != lithoid:
            violations.append((trial, "order"))
        for _, expr in pairs:
            if covering_path_length(lithoid, expr) != size(expr):
                violations.append((trial, "path"))
                break
    elapsed = time.perf_counter() - started
    report(
        "lithoid-invariants",
        not violations and elapsed < 30.0,
        f"50 corpora, violations {violations}, {elapsed:.2f}s (limit 30s)",
    )


def test_selection_oracle():
    rng = random.Random(2005)
    started = time.perf_counter()
    mismatches = 0
    for _ in range(100):
        registry = Registry()
        for i in range(rng.randint(1, 100)):
            registry.register(
                SourceDescriptor(f"s{i:03d}", f"https://example.org/{i}"),
                phrases={random_expression(rng, 5) for _ in range(rng.randint(1, 3))},
            )
        clues = {random_expression(rng, 3) for _ in range(rng.randint(1, 3))}
        ranked = select(registry, clues)
        contained = {r.source_id for r in ranked if r.contained_count > 0}
        if contained != brute_force_select(registry, clues):
            mismatches += 1
    elapsed = time.perf_counter() - started
    report(
        "selection-oracle",
        mismatches == 0 and elapsed < 30.0,
        f"100 registries, {mismatches} mismatches, {elapsed:.2f}s (limit 30s)",
    )


def test_preference_behaviour():
    engine = Engine()
    engine.register_source(
        SourceDescriptor("wavesurf", "https://example.org/wave"), phrases=["surfing of wave"]
    )
    engine.register_source(
        SourceDescriptor("netsurf", "https://example.org/net"), phrases=["surfing of internet"]
    )
    session = engine.begin_session()
    session.move(parse("surfing"))
    session.record_feedback("wavesurf", True)
    alts = [a.phrase for a in session.alternatives() if a.direction == "refine"]
    scores = {a.phrase: a.score for a in session.alternatives() if a.direction == "refine"}
    ranked = engine.select({parse("surfing")}, session.profile)
    ok = (
        alts.index("surfing of wave") < alts.index("surfing of internet")
        and scores["surfing of wave"] > scores["surfing of internet"]
        and [r.source_id for r in ranked] == ["wavesurf", "netsurf"]
        and ranked[0].score > ranked[1].score
    )
    report(
        "preference-behaviour",
        ok,
        f"alternatives {alts}, selection {[r.source_id for r in ranked]}",
    )


def test_round_trips(tmp_path):
    rng = random.Random(2007)
    failures = 0
    for _ in range(10_000):
        e = random_expression(rng, 6)
        if parse(linearize(e)) != e:
            failures += 1

    engine = Engine()
    engine.ingest_corpus(FIXTURES / "three_sources.jsonl")
    a = engine.save_snapshot(tmp_path / "a.snapshot")
    b = Engine.load_snapshot(a).save_snapshot(tmp_path / "b.snapshot")
    snapshot_ok = a.read_bytes() == b.read_bytes()

    again = Engine()
    again.ingest_corpus(FIXTURES / "three_sources.jsonl")
    ingest_ok = again.registry == engine.registry and again.lithoid == engine.lithoid

    report(
        "round-trips",
        failures == 0 and snapshot_ok and ingest_ok,
        f"10000 trees ({failures} failures), snapshot bytes {'equal' if snapshot_ok else 'differ'}, "
        f"re-ingest {'identical' if ingest_ok else 'diverged'}",
    )


def _synthetic_corpus(rng, n_docs=1000):
    vocab = [f"{a}{b}" for a in ("riv", "sal", "tor", "wav", "gul", "fen", "mor", "hal", "pel", "dra") for b in ("mon", "ier", "eta", "ing", "och", "ald", "ona", "iby", "eck", "urn")]
    connectors = ("of", "by", "in", "with", "for")
    docs = []
    for i in range(n_docs):
        sentences = []
        for _ in range(5):
            n = rng.randint(1, 5)
            words = [rng.choice(vocab)]
            for _ in range(n - 1):
                words.append(rng.choice(connectors))
                words.append(rng.choice(vocab))
            sentences.append(" ".join(words) + ".")
        docs.append(
            {
                "source_id": f"doc{i:04d}",
                "uri": f"https://example.org/{i}",
                "title": f"synthetic {i}",
                "text": " ".join(sentences),
            }
        )
    return docs


def test_desk_scale_performance():
    rng = random.Random(2008)
    docs = _synthetic_corpus(rng)
    engine = Engine()
    started = time.perf_counter()
    rep = engine.ingest_corpus(docs)
    build_elapsed = time.perf_counter() - started
    assert rep.failed == 0, rep.errors[:3]

    t0 = time.perf_counter()
    start_nodes = engine.lithoid.start_node()
    start_ms = (time.perf_counter() - t0) * 1000

    sample = [n.expr for n in rng.sample(engine.lithoid.nodes(), 50)]
    worst_ms = 0.0
    for expr in sample:
        t0 = time.perf_counter()
        engine.lithoid.refinements(expr)
        engine.lithoid.beam_down(expr)
        worst_ms = max(worst_ms, (time.perf_counter() - t0) * 1000)

    ok = build_elapsed < 60.0 and start_ms < 50.0 and worst_ms < 50.0
    report(
        "desk-scale-performance",
        ok,
        f"1000 docs in {build_elapsed:.1f}s (limit 60s), {len(engine.lithoid)} nodes, "
        f"start query {start_ms:.1f}ms, worst neighborhood {worst_ms:.2f}ms (limit 50ms), "
        f"{len(start_nodes)} elementary terms",
    )


def test_scripted_end_to_end(tmp_path):
    fixture = load_fixture("scripted_session.json")
    script, expected = fixture["script"], fixture["expected"]
    snapshot = tmp_path / "fixture.snapshot"
    proc = run_cli(
        ["index", "--corpus", str(FIXTURES / "three_sources.jsonl"), "--out", str(snapshot)]
    )
    assert proc.returncode == 0, proc.stderr
    stdin = "\n".join(
        [
            f"choose {script['start_choice_number']}",
            f"choose {script['refine_choice_number']}",
            "clue",
            "done",
            "",
        ]
    )
    proc = run_cli(["navigate", "--snapshot", str(snapshot)], stdin=stdin)
    lines = ranked_lines(proc.stdout)
    want_first = expected["results"][0]
    ok = (
        proc.returncode == 0
        and f"clues: {', '.join(expected['clues'])}" in proc.stdout
        and len(lines) == len(expected["results"])
        and lines[0].startswith(f"1. {want_first['source_id']}")
        and f"score={want_first['score']:.3f}" in lines[0]
    )
    report(
        "scripted-end-to-end",
        ok,
        f"first result {lines[0] if lines else 'none'}",
    )
