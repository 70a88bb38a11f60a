/** Health-metrics form: six raw-value fields with range hints. The server
 * performs the class coding and validation; its per-field errors render
 * under the matching input. */

import { ApiError } from "./api";
import type { HealthForm } from "./types";

interface FieldSpec {
  name: keyof HealthForm;
  label: string;
  hint: string;
  step: string;
}

const FIELDS: FieldSpec[] = [
  { name: "age", label: "Age (years)", hint: "40 to 90", step: "1" },
  { name: "blood_oxygen", label: "Blood oxygen (%)", hint: "e.g. 96", step: "0.1" },
  { name: "heart_rate", label: "Heart rate (bpm)", hint: "e.g. 72", step: "1" },
  { name: "body_temp", label: "Body temperature (°C)", hint: "e.g. 36.8", step: "0.1" },
  { name: "weight", label: "Weight (kg)", hint: "e.g. 65", step: "0.1" },
];

export function renderHealthForm(
  container: HTMLElement,
  onSubmit: (form: HealthForm) => Promise<void>,
): void {
  container.innerHTML = "";
  const section = document.createElement("section");
  section.className = "health-form";
  section.innerHTML = `
    <h2>Health check</h2>
    <p>You went past the click limit. Fill in these details so the first
    screening step can run, then continue to level 2.</p>
  `;
  const form = document.createElement("form");
  for (const field of FIELDS) {
    const row = document.createElement("label");
    row.className = "field";
    row.innerHTML = `
      <span>${field.label}</span>
      <input name="${field.name}" type="number" step="${field.step}"
             placeholder="${field.hint}" required />
      <small class="error" data-error-for="${field.name}"></small>
    `;
    form.appendChild(row);
  }
  const diabetic = document.createElement("label");
  diabetic.className = "field";
  diabetic.innerHTML = `
    <span>Diabetic</span>
    <select name="diabetic">
      <option value="0">No</option>
      <option value="1">Yes</option>
    </select>
    <small class="error" data-error-for="diabetic"></small>
  `;
  form.appendChild(diabetic);
  const submit = document.createElement("button");
  submit.type = "submit";
  submit.textContent = "Submit and continue";
  form.appendChild(submit);

  form.addEventListener("submit", async (event) => {
    event.preventDefault();
    for (const el of form.querySelectorAll(".error")) el.textContent = "";
    const data = new FormData(form);
    const body: HealthForm = {
      age: Number(data.get("age")),
      blood_oxygen: Number(data.get("blood_oxygen")),
      heart_rate: Number(data.get("heart_rate")),
      body_temp: Number(data.get("body_temp")),
      weight: Number(data.get("weight")),
      diabetic: Number(data.get("diabetic")),
    };
    submit.disabled = true;
    try {
      await onSubmit(body);
    } catch (error) {
      submit.disabled = false;
      if (error instanceof ApiError && typeof error.detail === "object" && error.detail) {
        const detail = error.detail as { field?: string; error?: string };
        if (detail.field) {
          const slot = form.querySelector(`[data-error-for="${detail.field}"]`);
          if (slot) slot.textContent = detail.error ?? "invalid value";
          return;
        }
      }
      throw error;
    }
  });
  section.appendChild(form);
  container.appendChild(section);
}
