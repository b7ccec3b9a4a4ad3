/** Model-choice view: one card per served model, granularity badge, and an
 * offline banner when the service cannot be reached. */

import type { ModelInfo } from "./api.js";

export function renderHome(
  root: HTMLElement,
  models: ModelInfo[] | "offline",
  onSelect: (modelId: string) => void,
): void {
  root.replaceChildren();
  const view = document.createElement("section");
  view.className = "view-home";

  const heading = document.createElement("h1");
  heading.textContent = "Predict a student's grade";
  view.append(heading);

  if (models === "offline") {
    const banner = document.createElement("div");
    banner.className = "offline-banner";
    banner.setAttribute("role", "alert");
    banner.textContent = "The prediction service is unreachable. Retry once it is running.";
    view.append(banner);
    root.append(view);
    return;
  }

  if (models.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No models are available on this service.";
    view.append(empty);
    root.append(view);
    return;
  }

  const intro = document.createElement("p");
  intro.textContent = "Choose a model, answer the questionnaire, then explore what-if changes.";
  view.append(intro);

  const list = document.createElement("div");
  list.className = "model-list";
  for (const model of models) {
    const card = document.createElement("article");
    card.className = "model-card";
    card.dataset.modelId = model.id;

    const title = document.createElement("h3");
    title.textContent = model.id;
    const badge = document.createElement("span");
    badge.className = `badge badge-${model.granularity}`;
    badge.textContent = model.granularity;
    title.append(" ", badge);

    const description = document.createElement("p");
    description.textContent = model.description;

    const start = document.createElement("button");
    start.type = "button";
    start.className = "btn-start";
    start.textContent = "Start questionnaire";
    start.addEventListener("click", () => onSelect(model.id));

    card.append(title, description, start);
    list.append(card);
  }
  view.append(list);
  root.append(view);
}
