/** Prediction view: the clamped grade prominently, the raw value beneath,
 * and one what-if slider per factor. Sliders move every member variable
 * uniformly and re-issue predictions; every displayed grade or factor sum
 * comes verbatim from the latest service response (exact values are kept
 * in data attributes, text is display-trimmed only). */

import type { PredictResponse, ResponseScale, ValidationProblems } from "./api.js";
import { formatGrade } from "./format.js";
import type { FactorGroup, WizardState } from "./state.js";
import { factorSliderPosition, scaleSpan } from "./state.js";

export interface ResultHandlers {
  onSlide(group: FactorGroup, wireValue: number): void;
  onAdjustAnswers(): void;
  onRestart(): void;
}

export function renderResult(
  root: HTMLElement,
  modelId: string,
  scale: ResponseScale,
  groups: FactorGroup[],
  state: WizardState,
  handlers: ResultHandlers,
): void {
  root.replaceChildren();
  const view = document.createElement("section");
  view.className = "view-result";

  const heading = document.createElement("h2");
  heading.textContent = `Predicted grade (${modelId})`;
  view.append(heading);

  const grade = document.createElement("div");
  grade.className = "grade-display";
  grade.textContent = "…";
  const raw = document.createElement("p");
  raw.className = "grade-raw";
  view.append(grade, raw);

  const problems = document.createElement("div");
  problems.className = "problem-banner";
  problems.hidden = true;
  view.append(problems);

  const hint = document.createElement("p");
  hint.textContent = "Drag a factor to see how changing it would move the grade.";
  view.append(hint);

  const sliders = document.createElement("div");
  sliders.className = "slider-list";
  for (const group of groups) {
    const row = document.createElement("div");
    row.className = "slider-row";
    row.dataset.factor = group.code;

    const label = document.createElement("label");
    label.textContent = group.code;

    const input = document.createElement("input");
    input.type = "range";
    input.min = "0";
    input.max = String(scaleSpan(scale));
    input.step = "1";
    input.value = String(factorSliderPosition(state, group));

    const shown = document.createElement("output");
    shown.className = "slider-value";
    shown.textContent = String(Number(input.value) + scale.min);

    const echo = document.createElement("span");
    echo.className = "factor-echo";

    input.addEventListener("input", () => {
      const wire = Number(input.value);
      shown.textContent = String(wire + scale.min);
      handlers.onSlide(group, wire);
    });

    row.append(label, input, shown, echo);
    sliders.append(row);
  }
  view.append(sliders);

  const nav = document.createElement("div");
  nav.className = "result-nav";
  const adjust = document.createElement("button");
  adjust.type = "button";
  adjust.className = "btn-adjust";
  adjust.textContent = "Change answers";
  adjust.addEventListener("click", () => handlers.onAdjustAnswers());
  const restart = document.createElement("button");
  restart.type = "button";
  restart.className = "btn-restart";
  restart.textContent = "Start over";
  restart.addEventListener("click", () => handlers.onRestart());
  nav.append(adjust, restart);
  view.append(nav);

  root.append(view);
  if (state.lastPrediction) updatePrediction(root, state.lastPrediction);
}

/** Write the latest response into the view. The untrimmed values land in
 * data-clamped / data-raw / data-value so tests can assert provenance. */
export function updatePrediction(root: HTMLElement, prediction: PredictResponse): void {
  const grade = root.querySelector<HTMLElement>(".grade-display");
  const raw = root.querySelector<HTMLElement>(".grade-raw");
  if (!grade || !raw) return;
  grade.textContent = formatGrade(prediction.clamped);
  grade.dataset.clamped = String(prediction.clamped);
  raw.textContent = `raw ${formatGrade(prediction.raw)}`;
  raw.dataset.raw = String(prediction.raw);
  showProblems(root, null);

  for (const row of root.querySelectorAll<HTMLElement>(".slider-row")) {
    const echo = row.querySelector<HTMLElement>(".factor-echo");
    if (!echo) continue;
    const code = row.dataset.factor ?? "";
    const value = prediction.factor_values?.[code.toLowerCase()];
    if (value === undefined) {
      echo.textContent = "";
      delete echo.dataset.value;
    } else {
      echo.textContent = `sum ${formatGrade(value)}`;
      echo.dataset.value = String(value);
    }
  }
}

/** Surface 422 details: banner text plus a problem mark on each slider row
 * whose factor contains an offending variable. */
export function showProblems(
  root: HTMLElement,
  problems: ValidationProblems | null,
  groups: FactorGroup[] = [],
): void {
  const banner = root.querySelector<HTMLElement>(".problem-banner");
  if (!banner) return;
  for (const row of root.querySelectorAll<HTMLElement>(".slider-row")) {
    row.classList.remove("problem");
  }
  if (!problems) {
    banner.hidden = true;
    banner.textContent = "";
    return;
  }
  const parts: string[] = [];
  if (problems.missing.length) parts.push(`missing: ${problems.missing.join(", ")}`);
  if (problems.out_of_scale.length) parts.push(`out of scale: ${problems.out_of_scale.join(", ")}`);
  banner.textContent = parts.join(" - ");
  banner.hidden = false;

  const flagged = new Set([...problems.missing, ...problems.out_of_scale]);
  for (const group of groups) {
    if (!group.members.some((m) => flagged.has(m.id))) continue;
    root
      .querySelector<HTMLElement>(`.slider-row[data-factor="${group.code}"]`)
      ?.classList.add("problem");
  }
}

export function showError(root: HTMLElement, message: string): void {
  const banner = root.querySelector<HTMLElement>(".problem-banner");
  if (!banner) return;
  banner.textContent = message;
  banner.hidden = false;
}
