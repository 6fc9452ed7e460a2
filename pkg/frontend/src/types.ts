/** JSON shapes served by the dialog service. Mirrors the wire format only;
 * the client holds no engine logic of its own. */

export interface WidgetAttrs {
  label: string;
  placeholder: string;
  tooltip: string;
}

export interface Manifest {
  enabled_actions: string[];
  facet_schema: string[];
  format_version: string;
  mode: "basic" | "generalized";
  title: string;
  widgets: Record<string, WidgetAttrs>;
}

export interface ChildLink {
  label: string;
  purview: number;
}

export interface DocRef {
  id: string;
  title: string;
  uri: string;
}

export interface ConsumedToken {
  token: string;
  kind: string;
}

export interface ViewSnapshot {
  focus: string[];
  children: ChildLink[];
  documents: DocRef[];
  status: "active" | "terminated";
  mode: "basic" | "generalized";
  consumed: ConsumedToken[];
  remaining: number;
  results: DocRef[] | null;
}

/** [entry, distinct document count] pairs. */
export type VocabEntry = [string, number];

export interface VocabularyListing {
  labels: VocabEntry[];
  terms: VocabEntry[];
}

export interface ActionResponse {
  view: ViewSnapshot;
  vocabulary?: VocabularyListing;
  results?: DocRef[];
}

export interface SessionCreated {
  session_id: string;
  view: ViewSnapshot;
}

export type ActionName =
  | "navigate"
  | "out_of_turn"
  | "vocabulary"
  | "collect"
  | "restructure"
  | "reset";
