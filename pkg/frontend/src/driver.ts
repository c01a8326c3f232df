import { ApiClient, ApiError } from "./api.js";
import {
  projectSession,
  withClues,
  withFeedback,
  withResults,
  type ViewState,
} from "./state.js";
import type { Phrase } from "./types.js";

/**
 * Drives one navigation session. Every method issues exactly one API
 * call and folds the response into the view state; the same driver runs
 * under the DOM shell and in headless tests.
 */
export class SessionDriver {
  state: ViewState | null = null;

  constructor(private readonly api: ApiClient) {}

  private get sessionId(): string {
    if (!this.state) throw new Error("no active session");
    return this.state.sessionId;
  }

  async start(): Promise<ViewState> {
    this.state = projectSession(await this.api.createSession());
    return this.state;
  }

  async resume(sessionId: string): Promise<ViewState> {
    try {
      this.state = projectSession(await this.api.getSession(sessionId));
    } catch (err) {
      if (err instanceof ApiError && err.status === 404) {
        return this.start();
      }
      throw err;
    }
    return this.state;
  }

  async move(target: Phrase | null): Promise<ViewState> {
    this.state = projectSession(await this.api.move(this.sessionId, target), this.state ?? undefined);
    return this.state;
  }

  async collectClue(): Promise<ViewState> {
    const body = await this.api.addClue(this.sessionId);
    this.state = withClues(this.state!, body.clues);
    return this.state;
  }

  async removeClue(phrase: Phrase): Promise<ViewState> {
    const body = await this.api.removeClue(this.sessionId, phrase);
    this.state = withClues(this.state!, body.clues);
    return this.state;
  }

  async fetchResults(limit?: number): Promise<ViewState> {
    const body = await this.api.results(this.sessionId, limit);
    this.state = withResults(this.state!, body.results);
    return this.state;
  }

  async markRelevant(sourceId: string, relevant: boolean): Promise<ViewState> {
    await this.api.feedback(this.sessionId, sourceId, relevant);
    this.state = withFeedback(this.state!, sourceId, relevant);
    return this.state;
  }
}
