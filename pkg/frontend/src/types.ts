/** Typed mirrors of the session service's versioned payloads. */

export interface GoalProbability {
  goal_id: number;
  label: string;
  probability: number;
}

export interface AttributeEntropy {
  attribute: number;
  name: string;
  entropy: number;
}

export interface Snapshot {
  turn: number;
  entropy: number;
  support_size: number;
  asked: number[];
  top_goals: GoalProbability[];
  attribute_entropies: AttributeEntropy[];
}

export interface Question {
  attribute: number;
  name: string;
  text: string;
}

export interface ReturnedGoal {
  goal_id: number;
  label: string;
}

export interface SessionResult {
  status: string;
  returned_goals: ReturnedGoal[];
}

export interface SessionBody {
  version: number;
  session_id: string;
  catalog: string;
  mode: string;
  finished: boolean;
  question: Question | null;
  result: SessionResult | null;
  snapshot: Snapshot;
}

export interface CatalogAttribute {
  attribute: number;
  name: string;
  cardinality: number;
}

export interface CatalogInfo {
  name: string;
  num_goals: number;
  attributes: CatalogAttribute[];
}

export interface CreateSessionRequest {
  catalog: string;
  strategy: string;
  mode?: string;
  theta?: number;
}

export interface CandidateAnswer {
  value: string;
  confidence: number;
}

export interface AnswerRequest {
  value?: string;
  confidence?: number;
  candidates?: CandidateAnswer[];
  unknown?: boolean;
}
