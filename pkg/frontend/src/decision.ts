/** Final decision screen. The headline text is the server's `display`
 * string rendered verbatim; the client adds no interpretation of its own. */

import type { Decision } from "./types";

export function renderDecision(container: HTMLElement, decision: Decision): void {
  container.innerHTML = "";
  const section = document.createElement("section");
  section.className = "decision";
  const positive =
    decision.kind === "passed" ||
    decision.outcome === "NON_DEMENTED" ||
    decision.outcome === "NON_DEMENTED_HIGH_PROBABILITY";
  section.classList.add(positive ? "positive" : "attention");

  const headline = document.createElement("h2");
  headline.dataset.role = "decision-display";
  headline.textContent = decision.display;
  section.appendChild(headline);

  const details = document.createElement("dl");
  if (decision.health_prediction !== null) {
    details.innerHTML += `<dt>Health model</dt><dd>${
      decision.health_prediction === 1 ? "Demented" : "Non-Demented"
    }</dd>`;
  }
  if (decision.face_prediction !== null) {
    details.innerHTML += `<dt>Face model</dt><dd>${
      decision.face_prediction === 1 ? "Demented" : "Non-Demented"
    }</dd>`;
  }
  if (decision.weighted_score !== null) {
    details.innerHTML += `<dt>Weighted score</dt><dd>${decision.weighted_score.toFixed(2)}</dd>`;
  }
  section.appendChild(details);

  if (decision.caveat) {
    const caveat = document.createElement("p");
    caveat.className = "caveat";
    caveat.textContent = decision.caveat;
    section.appendChild(caveat);
  }
  if (decision.kind === "passed") {
    const note = document.createElement("p");
    note.textContent =
      "Congratulations on completing both levels of the assessment!";
    section.appendChild(note);
  }
  container.appendChild(section);
}
