/** Shared helpers for driving the app through its DOM. */

export const SERVER_URL = `http://127.0.0.1:8931`;

// 1x1 transparent PNG
export const TINY_PNG_BASE64 =
  "iVBORw0KGgoAAAANSUhEUgAAAAEAAAABCAYAAAAfFcSJAAAADUlEQVR42mP8z8BQDwAEhQGAhKmMIQAAAABJRU5ErkJggg==";

export function makeRoot(): HTMLElement {
  document.body.innerHTML = '<main id="app"></main>';
  return document.getElementById("app") as HTMLElement;
}

export async function waitFor(
  condition: () => boolean,
  timeoutMs = 10_000,
  label = "condition",
): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (condition()) return;
    await new Promise((resolve) => setTimeout(resolve, 25));
  }
  throw new Error(`timed out waiting for ${label}`);
}

export function clickCard(root: HTMLElement, index: number): void {
  const button = root.querySelector<HTMLButtonElement>(`.card[data-index="${index}"]`);
  if (!button) throw new Error(`no card button at index ${index}`);
  button.click();
}

export function firstFaceDownIndex(root: HTMLElement): number {
  const button = root.querySelector<HTMLButtonElement>(".card.face-down");
  if (!button) throw new Error("no face-down card in the DOM");
  return Number(button.dataset.index);
}

export function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}
