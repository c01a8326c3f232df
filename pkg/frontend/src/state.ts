import type { AlternativeJson, Phrase, ResultJson, SessionJson } from "./types.js";

// ViewState is a pure projection of the server responses: the client
// never re-sorts, re-scores or filters what the API returned.

export interface ViewState {
  sessionId: string;
  focus: Phrase | null;
  trail: (Phrase | null)[];
  refinements: AlternativeJson[];
  beamDowns: AlternativeJson[];
  clues: Phrase[];
  feedback: Record<string, boolean>;
  results: ResultJson[] | null;
  error: { code: string; message: string } | null;
}

export function projectSession(view: SessionJson, previous?: ViewState): ViewState {
  return {
    sessionId: view.session_id,
    focus: view.focus,
    trail: view.trail,
    refinements: view.alternatives.filter((a) => a.direction === "refine"),
    beamDowns: view.alternatives.filter((a) => a.direction === "beam_down"),
    clues: view.clues,
    feedback: view.feedback,
    results: previous?.results ?? null,
    error: null,
  };
}

export function withClues(state: ViewState, clues: Phrase[]): ViewState {
  return { ...state, clues, error: null };
}

export function withResults(state: ViewState, results: ResultJson[]): ViewState {
  return { ...state, results, error: null };
}

export function withFeedback(state: ViewState, sourceId: string, relevant: boolean): ViewState {
  return { ...state, feedback: { ...state.feedback, [sourceId]: relevant }, error: null };
}

export function withError(state: ViewState, code: string, message: string): ViewState {
  return { ...state, error: { code, message } };
}
