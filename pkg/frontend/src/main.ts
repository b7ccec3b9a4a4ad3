/** App wiring: load models and schema, restore any saved wizard state, and
 * route between the three views. The service is the single source of every
 * displayed prediction; this module only moves state and DOM around. */

import { ApiClient, ApiError } from "./api.js";
import type { ModelInfo, PredictRequest, PredictResponse, Schema } from "./api.js";
import { renderHome } from "./home.js";
import { renderWizard } from "./wizard.js";
import { renderResult, showError, showProblems, updatePrediction } from "./result.js";
import { createScheduler } from "./schedule.js";
import type { FactorGroup, WizardState } from "./state.js";
import {
  answer,
  clampPage,
  clearState,
  emptyState,
  factorGroups,
  loadState,
  saveState,
  setFactorUniform,
} from "./state.js";

type View = "home" | "wizard" | "result";

export interface App {
  /** Re-render the current view (exposed for tests). */
  refresh(): void;
}

export async function createApp(
  root: HTMLElement,
  client: ApiClient = new ApiClient(),
  storage: Storage = window.sessionStorage,
  predictDelayMs = 200,
): Promise<App> {
  let models: ModelInfo[];
  let schema: Schema;
  try {
    [models, schema] = await Promise.all([client.getModels(), client.getSchema()]);
  } catch {
    renderHome(root, "offline", () => {});
    return { refresh: () => {} };
  }

  const groups: FactorGroup[] = factorGroups(schema);
  let state: WizardState = loadState(storage, schema);
  let view: View = state.model === null ? "home" : "wizard";
  let problemIds: ReadonlySet<string> = new Set();

  const scheduler = createScheduler<PredictRequest, PredictResponse>(
    (request) => client.predict(request),
    (prediction) => {
      state = { ...state, lastPrediction: prediction };
      if (view === "result") updatePrediction(root, prediction);
    },
    (error) => {
      if (view !== "result") return;
      if (error instanceof ApiError && error.problems) {
        showProblems(root, error.problems, groups);
      } else {
        showError(root, error instanceof Error ? error.message : String(error));
      }
    },
    predictDelayMs,
  );

  function predictRequest(): PredictRequest {
    if (state.model === null) throw new Error("no model selected");
    return { model: state.model, responses: { ...state.responses } };
  }

  function persist(): void {
    saveState(storage, state);
  }

  function render(): void {
    if (view === "home") {
      renderHome(root, models, (modelId) => {
        state = { ...state, model: modelId };
        persist();
        view = "wizard";
        render();
      });
      return;
    }
    if (view === "wizard") {
      renderWizard(root, schema, groups, state, {
        onAnswer(variableId, wireValue) {
          state = answer(state, variableId, wireValue, schema.scale);
          persist();
          render(); // keeps the progress meter and finish gate current
        },
        onNavigate(delta) {
          state = { ...state, page: clampPage(state.page + delta, groups.length) };
          persist();
          render();
        },
        onFinish() {
          problemIds = new Set();
          view = "result";
          render();
          scheduler.issueNow(predictRequest());
        },
      }, problemIds);
      return;
    }
    renderResult(root, state.model ?? "", schema.scale, groups, state, {
      onSlide(group, wireValue) {
        state = setFactorUniform(state, group, wireValue, schema.scale);
        persist();
        scheduler.schedule(predictRequest());
      },
      onAdjustAnswers() {
        scheduler.cancel();
        view = "wizard";
        render();
      },
      onRestart() {
        scheduler.cancel();
        clearState(storage);
        state = emptyState();
        problemIds = new Set();
        view = "home";
        render();
      },
    });
  }

  render();
  return { refresh: render };
}

/* Browser bootstrap; tests call createApp directly. */
const mount = typeof document === "undefined" ? null : document.getElementById("app");
if (mount) {
  void createApp(mount);
}
