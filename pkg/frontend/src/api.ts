import type {
  CluesJson,
  FeedbackJson,
  HealthJson,
  NodeJson,
  Phrase,
  ResultsJson,
  SessionJson,
  StartJson,
} from "./types.js";

export interface ApiCall {
  method: string;
  path: string;
}

export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

/** Thin typed client; every method is exactly one HTTP request. */
export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly onCall?: (call: ApiCall) => void,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    this.onCall?.({ method, path });
    const res = await fetch(this.baseUrl + path, {
      method,
      headers: body === undefined ? undefined : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!res.ok) {
      let code = `HTTP${res.status}`;
      let message = res.statusText;
      try {
        const parsed = (await res.json()) as { code?: string; message?: string };
        code = parsed.code ?? code;
        message = parsed.message ?? message;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(code, message, res.status);
    }
    return (await res.json()) as T;
  }

  health(): Promise<HealthJson> {
    return this.request("GET", "/healthz");
  }

  start(): Promise<StartJson> {
    return this.request("GET", "/hyperindex/start");
  }

  node(expr: Phrase): Promise<NodeJson> {
    return this.request("GET", `/hyperindex/node?expr=${encodeURIComponent(expr)}`);
  }

  createSession(): Promise<SessionJson> {
    return this.request("POST", "/sessions", {});
  }

  getSession(id: string): Promise<SessionJson> {
    return this.request("GET", `/sessions/${id}`);
  }

  move(id: string, target: Phrase | null): Promise<SessionJson> {
    return this.request("POST", `/sessions/${id}/move`, { target });
  }

  addClue(id: string): Promise<CluesJson> {
    return this.request("POST", `/sessions/${id}/clue`, {});
  }

  removeClue(id: string, phrase: Phrase): Promise<CluesJson> {
    return this.request("POST", `/sessions/${id}/clue`, { remove: phrase });
  }

  results(id: string, limit?: number): Promise<ResultsJson> {
    const suffix = limit === undefined ? "" : `?limit=${limit}`;
    return this.request("GET", `/sessions/${id}/results${suffix}`);
  }

  feedback(id: string, sourceId: string, relevant: boolean): Promise<FeedbackJson> {
    return this.request("POST", `/sessions/${id}/feedback`, {
      source_id: sourceId,
      relevant,
    });
  }
}
