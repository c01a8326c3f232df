"""Engine facade: registry + lithoid + sessions + snapshot persistence.

The snapshot is a versioned text file holding the source registry and the
(source id, canonical phrase) characterization pairs; the hyperindex graph
is derived data and is reconstructed on load. Records are written sorted,
so save -> load -> save is byte-identical, and the file is replaced
atomically so a killed writer never leaves a corrupt snapshot.
"""

from __future__ import annotations

import os
import tempfile
import threading
import time
from pathlib import Path
from typing import Iterable

from .characterize import (
    IngestReport,
    Registry,
    SourceCharacterization,
    SourceDescriptor,
    read_corpus,
)
from .config import EngineConfig
from .errors import ConfigError, LithoidError, UnknownSession
from .expressions import linearize, parse
from .hyperindex import Lithoid
from .navigation import NavigationSession, PreferenceProfile, begin_session
from .selection import RankedSource, select

__all__ = ["Engine", "SNAPSHOT_HEADER"]

SNAPSHOT_HEADER = "lithoid-snapshot 1"


def _escape(value: str) -> str:
    return value.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")


def _unescape(value: str) -> str:
    out = []
    it = iter(value)
    for ch in it:
        if ch != "\\":
            out.append(ch)
            continue
        nxt = next(it, "")
        out.append({"t": "\t", "n": "\n", "\\": "\\"}.get(nxt, nxt))
    return "".join(out)


class Engine:
    """Owns the registry and lithoid; serializes mutations with one lock."""

    def __init__(self, config: EngineConfig | None = None):
        self.config = config or EngineConfig()
        self.registry = Registry(self.config.extraction)
        self.lithoid = Lithoid()
        self._sessions: dict[str, NavigationSession] = {}
        self._session_seen: dict[str, float] = {}
        self._lock = threading.RLock()

    # -- sources ---------------------------------------------------------

    def register_source(
        self,
        descriptor: SourceDescriptor,
        phrases=None,
        text: str | None = None,
    ) -> SourceCharacterization:
        with self._lock:
            char = self.registry.register(descriptor, phrases, text)
            self.lithoid.add_source(descriptor.source_id)
            for expr in char.phrases:
                self.lithoid.insert_characterization(descriptor.source_id, expr)
            return char

    def remove_source(self, source_id: str) -> None:
        with self._lock:
            self.registry.remove(source_id)
            self.lithoid.remove_source(source_id)

    def ingest_corpus(self, docs: str | Path | Iterable[dict]) -> IngestReport:
        """Register each document; failures are reported, not fatal."""
        if isinstance(docs, (str, Path)):
            docs = read_corpus(docs)
        report = IngestReport()
        for record in docs:
            source_id = str(record.get("source_id", "")) or "?"
            try:
                descriptor = SourceDescriptor(
                    source_id=str(record["source_id"]),
                    uri=str(record.get("uri", "")),
                    title=str(record.get("title", "")),
                    media_type=str(record.get("media_type", "text")),
                )
                char = self.register_source(
                    descriptor,
                    phrases=record.get("phrases"),
                    text=record.get("text"),
                )
            except (LithoidError, KeyError, ValueError) as exc:
                report.failed += 1
                report.errors.append((source_id, str(exc)))
            else:
                report.registered += 1
                report.phrase_counts[descriptor.source_id] = len(char.phrases)
        return report

    # -- sessions --------------------------------------------------------

    def begin_session(self, profile: PreferenceProfile | None = None) -> NavigationSession:
        with self._lock:
            self._expire_sessions()
            session = begin_session(
                self.lithoid,
                self.registry,
                lambda_pref=self.config.lambda_pref,
                eta_nav=self.config.eta_nav,
                eta_fb=self.config.eta_fb,
                profile=profile,
            )
            self._sessions[session.session_id] = session
            self._session_seen[session.session_id] = time.monotonic()
            return session

    def get_session(self, session_id: str) -> NavigationSession:
        with self._lock:
            self._expire_sessions()
            session = self._sessions.get(session_id)
            if session is None:
                raise UnknownSession(f"no session {session_id!r}")
            self._session_seen[session_id] = time.monotonic()
            return session

    def _expire_sessions(self) -> None:
        deadline = time.monotonic() - self.config.session_ttl
        for sid, seen in list(self._session_seen.items()):
            if seen < deadline:
                del self._session_seen[sid]
                del self._sessions[sid]

    # -- selection ---------------------------------------------------------

    def select(self, clues, profile=None, limit=None, exclude=None) -> list[RankedSource]:
        limit = self.config.result_limit if limit is None else limit
        return select(
            self.registry,
            set(clues),
            profile,
            limit,
            self.config.selection_params,
            exclude,
        )

    def session_results(self, session: NavigationSession, limit: int | None = None) -> list[RankedSource]:
        """Ranked sources for the session's clues, minus rejected sources."""
        return self.select(
            session.clues,
            session.profile,
            limit,
            exclude=session.excluded_sources(),
        )

    # -- persistence -------------------------------------------------------

    def save_snapshot(self, path: str | Path | None = None) -> Path:
        path = Path(path or self.config.snapshot_path)
        with self._lock:
            lines = [SNAPSHOT_HEADER]
            for source_id in self.registry.source_ids():
                d = self.registry.descriptor(source_id)
                c = self.registry.characterization(source_id)
                lines.append(
                    "source\t%s\t%s\t%s\t%s\t%s"
                    % (d.source_id, _escape(d.uri), _escape(d.title), d.media_type, c.provenance)
                )
            for source_id in self.registry.source_ids():
                for phrase in sorted(
                    linearize(e) for e in self.registry.characterization(source_id).phrases
                ):
                    lines.append(f"phrase\t{source_id}\t{phrase}")
            data = "".join(line + "\n" for line in lines).encode("utf-8")
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(data)
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return path

    @classmethod
    def load_snapshot(cls, path: str | Path, config: EngineConfig | None = None) -> "Engine":
        engine = cls(config)
        grammar = engine.config.grammar
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        if not lines or lines[0] != SNAPSHOT_HEADER:
            raise ConfigError(f"{path}: not a recognized snapshot file")
        descriptors: dict[str, tuple[SourceDescriptor, str]] = {}
        phrases: dict[str, set] = {}
        for lineno, line in enumerate(lines[1:], 2):
            if not line:
                continue
            kind, _, rest = line.partition("\t")
            if kind == "source":
                sid, uri, title, media, provenance = rest.split("\t")
                descriptors[sid] = (
                    SourceDescriptor(sid, _unescape(uri), _unescape(title), media),
                    provenance,
                )
                phrases[sid] = set()
            elif kind == "phrase":
                sid, _, phrase = rest.partition("\t")
                if sid not in descriptors:
                    raise ConfigError(f"{path}:{lineno}: phrase for unknown source {sid!r}")
                phrases[sid].add(parse(phrase, grammar))
            else:
                raise ConfigError(f"{path}:{lineno}: unknown record {kind!r}")
        for sid, (descriptor, provenance) in descriptors.items():
            engine.registry.restore(
                descriptor,
                SourceCharacterization(sid, frozenset(phrases[sid]), provenance),
            )
            engine.lithoid.add_source(sid)
            for expr in phrases[sid]:
                engine.lithoid.insert_characterization(sid, expr)
        return engine
