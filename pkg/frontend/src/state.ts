/** Client session controller.
 *
 * Owns the session id and the latest server view. All event posts run
 * through a single promise chain so they reach the server strictly in the
 * order the player produced them (the server assigns sequence numbers per
 * arrival). The client never computes game rules: every state change comes
 * back from a server response.
 */

import { ApiClient, ApiError } from "./api";
import type { Decision, HealthForm, PredictionResponse, SessionView, Transition } from "./types";

export type ViewListener = (view: SessionView, transition: Transition | null) => void;

export class SessionController {
  sessionId = "";
  view: SessionView | null = null;
  private queue: Promise<unknown> = Promise.resolve();
  private listeners: ViewListener[] = [];

  constructor(readonly api: ApiClient) {}

  onViewChange(listener: ViewListener): void {
    this.listeners.push(listener);
  }

  private publish(view: SessionView, transition: Transition | null = null): void {
    this.view = view;
    for (const listener of this.listeners) listener(view, transition);
  }

  /** Serialize an action behind every previously queued post. */
  private enqueue<T>(action: () => Promise<T>): Promise<T> {
    const next = this.queue.then(action, action);
    this.queue = next.catch(() => undefined);
    return next;
  }

  async start(level: 1 | 2 = 1, seed?: number): Promise<SessionView> {
    const created = await this.api.createSession(level, seed);
    this.sessionId = created.session_id;
    this.publish(created.view);
    return created.view;
  }

  flip(cardIndex: number): Promise<SessionView> {
    return this.enqueue(async () => {
      try {
        const response = await this.api.postEvent(this.sessionId, "flip", cardIndex);
        this.publish(response.view, response.transition);
        return response.view;
      } catch (error) {
        if (error instanceof ApiError && error.status === 409) {
          // stale click (card already up, phase moved on): refresh and go on
          const refreshed = await this.api.getView(this.sessionId);
          this.publish(refreshed.view, refreshed.transition);
          return refreshed.view;
        }
        throw error;
      }
    });
  }

  tick(): Promise<SessionView> {
    return this.enqueue(async () => {
      const response = await this.api.postEvent(this.sessionId, "tick");
      this.publish(response.view, response.transition);
      return response.view;
    });
  }

  submitHealth(form: HealthForm): Promise<PredictionResponse> {
    return this.enqueue(async () => {
      const response = await this.api.submitHealth(this.sessionId, form);
      this.publish(response.view);
      return response;
    });
  }

  submitFace(imageBase64: string): Promise<PredictionResponse> {
    return this.enqueue(async () => {
      const response = await this.api.submitFace(this.sessionId, imageBase64);
      this.publish(response.view);
      return response;
    });
  }

  getDecision(): Promise<Decision> {
    return this.enqueue(() => this.api.getDecision(this.sessionId));
  }
}
