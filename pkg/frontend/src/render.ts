import type { ViewState } from "./state.js";
import type { AlternativeJson, Phrase, ResultJson } from "./types.js";

export interface Handlers {
  onMove(target: Phrase | null): void;
  onCollectClue(): void;
  onRemoveClue(phrase: Phrase): void;
  onFetchResults(): void;
  onFeedback(sourceId: string, relevant: boolean): void;
  onNewSession(): void;
}

const START_LABEL = "(start)";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function button(label: string, className: string, onClick: () => void): HTMLButtonElement {
  const b = el("button", className, label);
  b.type = "button";
  b.addEventListener("click", onClick);
  return b;
}

function renderError(state: ViewState, handlers: Handlers): HTMLElement | null {
  if (!state.error) return null;
  const banner = el("div", "banner error");
  banner.setAttribute("role", "alert");
  const text =
    state.error.code === "EmptyRequest"
      ? "add a clue first"
      : `${state.error.code}: ${state.error.message}`;
  banner.appendChild(el("span", "", text));
  if (state.error.code === "StaleFocus") {
    banner.appendChild(button("back to start", "inline", () => handlers.onMove(null)));
  }
  return banner;
}

function renderBreadcrumbs(state: ViewState, handlers: Handlers): HTMLElement {
  const nav = el("nav", "breadcrumbs");
  state.trail.forEach((stop, i) => {
    if (i > 0) nav.appendChild(el("span", "crumb-sep", "›"));
    nav.appendChild(
      button(stop === null ? START_LABEL : stop, "crumb", () => handlers.onMove(stop)),
    );
  });
  return nav;
}

function renderAlternatives(
  title: string,
  className: string,
  entries: AlternativeJson[],
  handlers: Handlers,
): HTMLElement {
  const section = el("section", `alternatives ${className}`);
  section.appendChild(el("h3", "", title));
  const list = el("ol", "alt-list");
  // server order is preserved verbatim: one list item per entry, in order
  for (const alt of entries) {
    const item = el("li");
    const label = alt.expr === null ? START_LABEL : alt.expr;
    item.appendChild(button(label, "alt", () => handlers.onMove(alt.expr)));
    item.appendChild(
      el("span", "alt-meta", ` support ${alt.support} · score ${alt.score.toFixed(2)}`),
    );
    list.appendChild(item);
  }
  if (!entries.length) list.appendChild(el("li", "empty", "none"));
  section.appendChild(list);
  return section;
}

function renderClueBasket(state: ViewState, handlers: Handlers): HTMLElement {
  const section = el("section", "clues");
  section.appendChild(el("h3", "", "clue basket"));
  const list = el("ul", "clue-list");
  for (const clue of state.clues) {
    const item = el("li", "clue-chip");
    item.appendChild(el("span", "", clue));
    item.appendChild(button("×", "remove-clue", () => handlers.onRemoveClue(clue)));
    list.appendChild(item);
  }
  if (!state.clues.length) list.appendChild(el("li", "empty", "no clues yet"));
  section.appendChild(list);

  const collect = button("collect focus as clue", "collect-clue", handlers.onCollectClue);
  collect.disabled = state.focus === null;
  section.appendChild(collect);

  const fetch = button("show results", "fetch-results", handlers.onFetchResults);
  fetch.disabled = state.clues.length === 0;
  section.appendChild(fetch);
  return section;
}

function renderResult(r: ResultJson, state: ViewState, handlers: Handlers): HTMLElement {
  const item = el("li", "result");
  const head = el("div", "result-head");
  head.appendChild(el("span", "result-rank", `${r.rank}.`));
  const link = el("a", "result-title", r.title || r.source_id);
  link.setAttribute("href", r.uri);
  link.setAttribute("target", "_blank");
  head.appendChild(link);
  head.appendChild(el("span", "result-score", `score ${r.score.toFixed(3)}`));
  item.appendChild(head);
  const matches = el("ul", "matches");
  for (const m of r.matched) {
    matches.appendChild(el("li", `match ${m.kind}`, `${m.kind}: ${m.clue} ← ${m.phrase}`));
  }
  item.appendChild(matches);
  const verdict = state.feedback[r.source_id];
  const controls = el("div", "feedback");
  const up = button("relevant", "feedback-yes", () => handlers.onFeedback(r.source_id, true));
  const down = button("not relevant", "feedback-no", () => handlers.onFeedback(r.source_id, false));
  if (verdict === true) up.classList.add("active");
  if (verdict === false) down.classList.add("active");
  controls.appendChild(up);
  controls.appendChild(down);
  item.appendChild(controls);
  return item;
}

function renderResults(state: ViewState, handlers: Handlers): HTMLElement {
  const section = el("section", "results");
  section.appendChild(el("h3", "", "sources"));
  if (state.results === null) {
    section.appendChild(el("p", "empty", "no results fetched yet"));
    return section;
  }
  if (!state.results.length) {
    section.appendChild(el("p", "empty", "no matching sources"));
    return section;
  }
  const list = el("ol", "result-list");
  for (const r of state.results) list.appendChild(renderResult(r, state, handlers));
  section.appendChild(list);
  return section;
}

export function renderApp(root: HTMLElement, state: ViewState | null, handlers: Handlers): void {
  root.textContent = "";
  const header = el("header");
  header.appendChild(el("h1", "", "lithoid"));
  header.appendChild(button("new session", "new-session", handlers.onNewSession));
  root.appendChild(header);
  if (!state) {
    root.appendChild(el("p", "empty", "connecting…"));
    return;
  }
  const banner = renderError(state, handlers);
  if (banner) root.appendChild(banner);
  root.appendChild(renderBreadcrumbs(state, handlers));
  root.appendChild(
    el("h2", "focus", state.focus === null ? START_LABEL : state.focus),
  );
  const main = el("main", "columns");
  const left = el("div", "col nav-col");
  left.appendChild(renderAlternatives("refine", "refine", state.refinements, handlers));
  left.appendChild(renderAlternatives("beam down", "beam-down", state.beamDowns, handlers));
  const right = el("div", "col result-col");
  right.appendChild(renderClueBasket(state, handlers));
  right.appendChild(renderResults(state, handlers));
  main.appendChild(left);
  main.appendChild(right);
  root.appendChild(main);
}
