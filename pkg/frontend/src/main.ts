import { ApiClient, ApiError } from "./api.js";
import { SessionDriver } from "./driver.js";
import { renderApp, type Handlers } from "./render.js";
import { withError } from "./state.js";

const SESSION_KEY = "lithoid-session";

declare global {
  interface Window {
    __LITHOID_API__?: string;
  }
}

function boot(): void {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app container");
  const api = new ApiClient(window.__LITHOID_API__ ?? "");
  const driver = new SessionDriver(api);

  const redraw = () => renderApp(root, driver.state, handlers);

  const run = (action: () => Promise<unknown>) => {
    action()
      .then(() => {
        if (driver.state) localStorage.setItem(SESSION_KEY, driver.state.sessionId);
      })
      .catch((err) => {
        if (err instanceof ApiError && driver.state) {
          driver.state = withError(driver.state, err.code, err.message);
        } else {
          console.error(err);
        }
      })
      .finally(redraw);
  };

  const handlers: Handlers = {
    onMove: (target) => run(() => driver.move(target)),
    onCollectClue: () => run(() => driver.collectClue()),
    onRemoveClue: (phrase) => run(() => driver.removeClue(phrase)),
    onFetchResults: () => run(() => driver.fetchResults()),
    onFeedback: (sourceId, relevant) =>
      // record the judgment, then refresh the panel so re-ranking shows
      run(() => driver.markRelevant(sourceId, relevant).then(() => driver.fetchResults())),
    onNewSession: () => run(() => driver.start()),
  };

  redraw();
  const saved = localStorage.getItem(SESSION_KEY);
  run(() => (saved ? driver.resume(saved) : driver.start()));
}

boot();
