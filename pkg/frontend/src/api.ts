/** Typed fetch client for the screening service. */

import type {
  CreateSessionResponse,
  Decision,
  EventResponse,
  HealthForm,
  PredictionResponse,
} from "./types";

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: unknown,
  ) {
    super(`API error ${status}: ${JSON.stringify(detail)}`);
  }
}

async function parseOrThrow<T>(response: Response): Promise<T> {
  const body = await response.json().catch(() => null);
  if (!response.ok) {
    throw new ApiError(response.status, body ? (body as { detail?: unknown }).detail : null);
  }
  return body as T;
}

export class ApiClient {
  constructor(private baseUrl: string = "") {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await fetch(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    return parseOrThrow<T>(response);
  }

  private async get<T>(path: string): Promise<T> {
    return parseOrThrow<T>(await fetch(`${this.baseUrl}${path}`));
  }

  createSession(level: 1 | 2 = 1, seed?: number): Promise<CreateSessionResponse> {
    return this.post("/api/sessions", seed === undefined ? { level } : { level, seed });
  }

  getView(sessionId: string): Promise<EventResponse> {
    return this.get(`/api/sessions/${sessionId}`);
  }

  postEvent(sessionId: string, kind: "flip" | "tick", cardIndex?: number): Promise<EventResponse> {
    const body = kind === "flip" ? { kind, card_index: cardIndex } : { kind };
    return this.post(`/api/sessions/${sessionId}/events`, body);
  }

  submitHealth(sessionId: string, form: HealthForm): Promise<PredictionResponse> {
    return this.post(`/api/sessions/${sessionId}/health`, form);
  }

  submitFace(sessionId: string, imageBase64: string): Promise<PredictionResponse> {
    return this.post(`/api/sessions/${sessionId}/face`, { image_base64: imageBase64 });
  }

  getDecision(sessionId: string): Promise<Decision> {
    return this.get(`/api/sessions/${sessionId}/decision`);
  }

  healthz(): Promise<{ status: string }> {
    return this.get("/api/healthz");
  }
}
