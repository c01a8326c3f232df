// JSON payload shapes of the lithoid HTTP API. Expressions travel as
// canonical phrase strings; null stands for the virtual start node.

export type Phrase = string;

export interface AlternativeJson {
  expr: Phrase | null;
  direction: "refine" | "beam_down";
  score: number;
  support: number;
}

export interface SessionJson {
  session_id: string;
  focus: Phrase | null;
  trail: (Phrase | null)[];
  clues: Phrase[];
  feedback: Record<string, boolean>;
  alternatives: AlternativeJson[];
}

export interface CluesJson {
  clues: Phrase[];
}

export interface MatchJson {
  clue: Phrase;
  phrase: Phrase;
  kind: "contained" | "partial";
}

export interface ResultJson {
  rank: number;
  source_id: string;
  uri: string;
  title: string;
  score: number;
  contained_count: number;
  matched: MatchJson[];
}

export interface ResultsJson {
  results: ResultJson[];
}

export interface NodeEntryJson {
  expr: Phrase | null;
  score: number;
  support: number;
}

export interface NodeJson {
  node: { expr: Phrase; support: number; postings: string[] };
  refinements: NodeEntryJson[];
  beam_downs: NodeEntryJson[];
}

export interface StartJson {
  alternatives: NodeEntryJson[];
}

export interface HealthJson {
  status: string;
  sources: number;
  nodes: number;
}

export interface FeedbackJson {
  source_id: string;
  relevant: boolean;
}

export interface ErrorJson {
  code: string;
  message: string;
}
