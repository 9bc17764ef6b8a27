// Payload shapes of the /v1 session service. The UI renders these verbatim:
// every number shown comes straight out of a service response.

export interface GraphAtom {
  element: string;
  hydrogens: number;
}

export interface GraphData {
  atoms: GraphAtom[];
  bonds: [number, number, number][];
}

export type PropertyMap = Record<string, number>;

export interface SessionSummary {
  id: string;
  status: string;
  iterations: number;
  executed: number;
  seed: string;
  scoring: string;
  objective: { name: string; normalization: number[] | null };
}

export interface ViewStep {
  iteration: number;
  provenance: string;
  source: string;
  chosen: string;
  chosen_index: number;
  alternatives: number;
  properties: PropertyMap;
  graph: GraphData;
}

export interface ArchivedStep {
  iteration: number;
  provenance: string;
  chosen: string;
  properties: PropertyMap;
  graph: GraphData;
}

export interface ArchiveBranch {
  overridden_iteration: number;
  previous_chosen_index: number;
  steps: ArchivedStep[];
}

export interface SessionView {
  session: SessionSummary;
  seed: { tokens: string; graph: GraphData };
  steps: ViewStep[];
  archives: ArchiveBranch[];
}

export interface CandidateData {
  tokens: string;
  log_likelihood: number | null;
  properties: PropertyMap;
}

export interface AlternativesStep {
  iteration: number;
  source: string;
  chosen: string;
  chosen_index: number;
  provenance: string;
  candidates: CandidateData[];
}

export interface SeriesPoint {
  iteration: number;
  mean: number;
  stddev: number;
  max: number;
  diversity: number;
}

export interface ReportEntry {
  tokens: string;
  objective: number;
  iteration: number;
  properties: PropertyMap;
}

export interface ReportData {
  best: ReportEntry;
  top: ReportEntry[];
  series: SeriesPoint[];
  generations_per_seed: number;
  total_generations: number;
  non_recursive_baseline: boolean;
}
