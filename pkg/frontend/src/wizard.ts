/** Paged questionnaire: one page per factor, Likert radios per prompt,
 * finish gated on a complete 70/70 response map. Radios display the scale's
 * own numbers; the stored answer is the zero-offset wire value. */

import type { Schema } from "./api.js";
import type { FactorGroup, WizardState } from "./state.js";
import { answeredCount, isComplete } from "./state.js";

export interface WizardHandlers {
  onAnswer(variableId: string, wireValue: number): void;
  onNavigate(delta: number): void;
  onFinish(): void;
}

export function renderWizard(
  root: HTMLElement,
  schema: Schema,
  groups: FactorGroup[],
  state: WizardState,
  handlers: WizardHandlers,
  problemIds: ReadonlySet<string> = new Set(),
): void {
  root.replaceChildren();
  const group = groups[state.page];
  if (!group) throw new RangeError(`page ${state.page} out of range`);

  const view = document.createElement("section");
  view.className = "view-wizard";

  const header = document.createElement("header");
  const title = document.createElement("h2");
  title.textContent = `Factor ${group.code}`;
  const pager = document.createElement("p");
  pager.className = "wizard-progress";
  pager.textContent =
    `Page ${state.page + 1} of ${groups.length} - ` +
    `${answeredCount(state)}/${schema.variables.length} answered`;
  const meter = document.createElement("progress");
  meter.max = schema.variables.length;
  meter.value = answeredCount(state);
  header.append(title, pager, meter);
  view.append(header);

  const { min, max } = schema.scale;
  for (const variable of group.members) {
    const item = document.createElement("fieldset");
    item.className = "prompt-item";
    item.dataset.variableId = variable.id;
    if (problemIds.has(variable.id)) item.classList.add("problem");

    const legend = document.createElement("legend");
    legend.textContent = variable.prompt;
    item.append(legend);

    const options = document.createElement("div");
    options.className = "likert-options";
    for (let shown = min; shown <= max; shown++) {
      const wire = shown - min;
      const label = document.createElement("label");
      const input = document.createElement("input");
      input.type = "radio";
      input.name = variable.id;
      input.value = String(wire);
      input.checked = state.responses[variable.id] === wire;
      input.addEventListener("change", () => handlers.onAnswer(variable.id, wire));
      const caption = document.createElement("span");
      caption.textContent = String(shown);
      label.append(input, caption);
      options.append(label);
    }
    const hint = document.createElement("p");
    hint.className = "scale-hint";
    hint.textContent = `${min} = strongly disagree, ${max} = strongly agree`;
    item.append(options, hint);
    view.append(item);
  }

  const nav = document.createElement("div");
  nav.className = "wizard-nav";
  const back = document.createElement("button");
  back.type = "button";
  back.className = "btn-back";
  back.textContent = "Back";
  back.disabled = state.page === 0;
  back.addEventListener("click", () => handlers.onNavigate(-1));
  nav.append(back);

  if (state.page < groups.length - 1) {
    const next = document.createElement("button");
    next.type = "button";
    next.className = "btn-next";
    next.textContent = "Next";
    next.addEventListener("click", () => handlers.onNavigate(1));
    nav.append(next);
  } else {
    const finish = document.createElement("button");
    finish.type = "button";
    finish.className = "btn-finish";
    finish.textContent = "Predict grade";
    finish.disabled = !isComplete(state, schema);
    finish.addEventListener("click", () => handlers.onFinish());
    nav.append(finish);
  }
  view.append(nav);
  root.append(view);
}
