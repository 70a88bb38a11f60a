/** Wire types mirroring the screening service's JSON responses. */

export interface CardView {
  /** Card value; null for face-down cards (the server never sends those). */
  value: number | null;
  face_up: boolean;
  matched: boolean;
}

export interface SessionView {
  level: number;
  phase: string;
  click_count: number;
  click_threshold: number;
  matched_pairs: number;
  total_pairs: number;
  rows: number;
  cols: number;
  remaining_s: number | null;
  cards: CardView[];
  health_prediction: number | null;
  face_prediction: number | null;
  acknowledged: boolean;
}

export interface Transition {
  from_phase: string;
  to_phase: string;
  reason: string | null;
}

export interface CreateSessionResponse {
  session_id: string;
  view: SessionView;
}

export interface EventResponse {
  view: SessionView;
  transition: Transition | null;
}

export interface PredictionResponse {
  score: number;
  label: string;
  view: SessionView;
}

export interface Decision {
  kind: "fused" | "single_model" | "passed";
  outcome: string | null;
  display: string;
  weighted_score: number | null;
  health_prediction: number | null;
  face_prediction: number | null;
  caveat: string | null;
}

export interface HealthForm {
  age: number;
  blood_oxygen: number;
  heart_rate: number;
  body_temp: number;
  weight: number;
  diabetic: number;
}
