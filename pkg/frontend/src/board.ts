/** Card grid rendering. Face-down cards render a card back only; their
 * values are never present in the view payload, so nothing secret can leak
 * into the DOM. */

import type { SessionView } from "./types";

// placeholder artwork: one glyph per card value
const CARD_GLYPHS = [
  "\u{1F34E}", "\u{1F34C}", "\u{1F347}", "\u{1F352}", "\u{1F34B}",
  "\u{1F351}", "\u{1F353}", "\u{1F34D}", "\u{1F95D}", "\u{1F349}",
];

export function glyphFor(value: number): string {
  return CARD_GLYPHS[value % CARD_GLYPHS.length];
}

export function renderBoard(
  container: HTMLElement,
  view: SessionView,
  onFlip: (index: number) => void,
): void {
  container.innerHTML = "";
  const grid = document.createElement("div");
  grid.className = "board";
  grid.style.gridTemplateColumns = `repeat(${view.cols}, 1fr)`;
  view.cards.forEach((card, index) => {
    const button = document.createElement("button");
    button.type = "button";
    button.className = "card";
    button.dataset.index = String(index);
    if (card.matched) {
      button.classList.add("matched");
      button.textContent = card.value === null ? "" : glyphFor(card.value);
      button.disabled = true;
    } else if (card.face_up && card.value !== null) {
      button.classList.add("face-up");
      button.textContent = glyphFor(card.value);
    } else {
      button.classList.add("face-down");
      button.textContent = "❓";
      button.addEventListener("click", () => onFlip(index));
    }
    grid.appendChild(button);
  });
  container.appendChild(grid);
}

export function renderStatusBar(container: HTMLElement, view: SessionView): HTMLElement {
  const bar = document.createElement("div");
  bar.className = "status-bar";
  bar.innerHTML = `
    <span class="level">Level ${view.level}</span>
    <span class="clicks">Clicks: <b data-role="clicks">${view.click_count}</b> / ${view.click_threshold}</span>
    <span class="pairs">Pairs: <b>${view.matched_pairs}</b> / ${view.total_pairs}</span>
    <span class="timer" data-role="timer"></span>
  `;
  container.appendChild(bar);
  return bar.querySelector('[data-role="timer"]') as HTMLElement;
}
