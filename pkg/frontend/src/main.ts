/** App bootstrap: phase-driven screen routing over the server's view.
 *
 * A 1-second tick poller keeps server time moving while a timed phase is
 * active; every transition (memorization ending, countdown expiry, threshold
 * crossing, level completion) arrives from the server, never from local
 * logic.
 */

import { ApiClient } from "./api";
import { renderBoard, renderStatusBar } from "./board";
import { renderCapture } from "./capture";
import { renderDecision } from "./decision";
import { renderHealthForm } from "./health-form";
import { SessionController } from "./state";
import { CountdownDisplay } from "./timers";
import type { SessionView } from "./types";

const TICK_INTERVAL_MS = 1000;

export class App {
  private lastScreen = "";
  private countdown: CountdownDisplay | null = null;
  private poller: ReturnType<typeof setInterval> | null = null;
  private confirmed = false;

  constructor(
    private root: HTMLElement,
    readonly controller: SessionController,
  ) {
    controller.onViewChange((view) => this.render(view));
  }

  async start(level: 1 | 2 = 1, seed?: number): Promise<void> {
    await this.controller.start(level, seed);
    this.startPolling();
  }

  private startPolling(): void {
    if (this.poller !== null) return;
    this.poller = setInterval(() => {
      const phase = this.controller.view?.phase;
      if (phase === "Memorizing" || phase === "Playing") {
        void this.controller.tick().catch(() => undefined);
      }
    }, TICK_INTERVAL_MS);
  }

  stopPolling(): void {
    if (this.poller !== null) {
      clearInterval(this.poller);
      this.poller = null;
    }
  }

  private render(view: SessionView): void {
    const screen = `${view.level}:${view.phase}`;
    switch (view.phase) {
      case "Memorizing":
      case "Playing":
        this.renderBoardScreen(view, screen);
        break;
      case "AwaitingHealthInput":
        if (screen !== this.lastScreen) this.renderHealthScreen();
        break;
      case "AwaitingFaceCapture":
        if (screen !== this.lastScreen) void this.renderCaptureScreen();
        break;
      case "LevelPassed":
        if (screen !== this.lastScreen) this.renderLevelPassedScreen();
        break;
      case "Completed":
        if (screen !== this.lastScreen) void this.renderDecisionScreen();
        break;
      case "Failed":
        this.root.innerHTML = "<section><h2>Session ended</h2></section>";
        break;
    }
    this.lastScreen = screen;
  }

  private renderBoardScreen(view: SessionView, screen: string): void {
    this.root.innerHTML = "";
    const header = document.createElement("div");
    this.root.appendChild(header);
    const timerSlot = renderStatusBar(header, view);
    this.countdown?.stop();
    this.countdown = new CountdownDisplay(timerSlot);
    this.countdown.sync(view.remaining_s);
    if (view.phase === "Memorizing") {
      const banner = document.createElement("p");
      banner.className = "banner";
      banner.textContent = "Memorize the card positions!";
      this.root.appendChild(banner);
    }
    const boardSlot = document.createElement("div");
    boardSlot.dataset.role = "board";
    this.root.appendChild(boardSlot);
    renderBoard(boardSlot, view, (index) => {
      void this.controller.flip(index).catch(() => undefined);
    });
    if (screen !== this.lastScreen && view.phase === "Playing") {
      this.confirmed = false;
    }
  }

  private renderHealthScreen(): void {
    this.countdown?.stop();
    this.root.innerHTML = "";
    if (!this.confirmed) {
      // confirmation step before the prediction page
      const confirm = document.createElement("section");
      confirm.className = "confirm";
      confirm.innerHTML = `
        <h2>Click limit reached</h2>
        <p>You have gone past the click threshold for level 1. Next you will
        be asked for a few health details so the screening step can run.</p>
        <button type="button" data-role="confirm-health">Continue</button>
      `;
      confirm
        .querySelector('[data-role="confirm-health"]')!
        .addEventListener("click", () => {
          this.confirmed = true;
          this.renderHealthScreen();
        });
      this.root.appendChild(confirm);
      return;
    }
    renderHealthForm(this.root, async (form) => {
      const result = await this.controller.submitHealth(form);
      const note = document.createElement("p");
      note.className = "prediction-note";
      note.textContent = `Level 1 screening result: ${result.label} (score ${result.score.toFixed(2)})`;
      this.root.prepend(note);
    });
  }

  private async renderCaptureScreen(): Promise<void> {
    this.countdown?.stop();
    await renderCapture(this.root, {
      onSubmit: async (imageBase64) => {
        await this.controller.submitFace(imageBase64);
      },
    });
  }

  private renderLevelPassedScreen(): void {
    this.countdown?.stop();
    this.root.innerHTML = "";
    const section = document.createElement("section");
    section.className = "congratulations";
    section.innerHTML = `
      <h2>Congratulations!</h2>
      <p>You cleared level 1 within the click limit. Ready for the ultimate test?</p>
      <button type="button" data-role="continue-level2">Start level 2</button>
    `;
    section
      .querySelector('[data-role="continue-level2"]')!
      .addEventListener("click", () => {
        void this.controller.tick();
      });
    this.root.appendChild(section);
  }

  private async renderDecisionScreen(): Promise<void> {
    this.countdown?.stop();
    this.stopPolling();
    const decision = await this.controller.getDecision();
    renderDecision(this.root, decision);
  }
}

export function boot(root: HTMLElement, baseUrl = ""): App {
  const app = new App(root, new SessionController(new ApiClient(baseUrl)));
  const params = new URLSearchParams(window.location.search);
  const level = params.get("level") === "2" ? 2 : 1;
  void app.start(level);
  return app;
}

declare global {
  interface Window {
    cogscreenBoot?: typeof boot;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  boot(document.getElementById("app")!);
} else if (typeof window !== "undefined") {
  window.cogscreenBoot = boot;
}
