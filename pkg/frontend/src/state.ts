/** Wizard state and the factor view of the schema. All functions are pure;
 * persistence is a JSON round-trip guarded against stale or foreign data. */

import type { PredictResponse, ResponseScale, Schema, SchemaVariable } from "./api.js";

export interface FactorGroup {
  code: string;
  members: SchemaVariable[];
}

/** Group variables by factor in first-appearance order (the questionnaire
 * lists each factor's members contiguously, so this is page order). */
export function factorGroups(schema: Schema): FactorGroup[] {
  const groups: FactorGroup[] = [];
  const byCode = new Map<string, FactorGroup>();
  for (const variable of schema.variables) {
    let group = byCode.get(variable.factor);
    if (!group) {
      group = { code: variable.factor, members: [] };
      byCode.set(variable.factor, group);
      groups.push(group);
    }
    group.members.push(variable);
  }
  return groups;
}

export function scaleSpan(scale: ResponseScale): number {
  return scale.max - scale.min;
}

export interface WizardState {
  model: string | null;
  /** variable id -> zero-offset answer (0 .. span) */
  responses: Record<string, number>;
  page: number;
  lastPrediction: PredictResponse | null;
}

export function emptyState(): WizardState {
  return { model: null, responses: {}, page: 0, lastPrediction: null };
}

export function answer(
  state: WizardState,
  variableId: string,
  value: number,
  scale: ResponseScale,
): WizardState {
  if (!Number.isInteger(value) || value < 0 || value > scaleSpan(scale)) {
    throw new RangeError(`answer ${value} outside 0..${scaleSpan(scale)}`);
  }
  return { ...state, responses: { ...state.responses, [variableId]: value } };
}

export function answeredCount(state: WizardState): number {
  return Object.keys(state.responses).length;
}

export function isComplete(state: WizardState, schema: Schema): boolean {
  return schema.variables.every((v) => v.id in state.responses);
}

export function clampPage(page: number, pageCount: number): number {
  return Math.min(Math.max(page, 0), pageCount - 1);
}

/** Slider semantics: one factor-level control moves every member variable
 * to the same value, even under variable-granularity models. */
export function setFactorUniform(
  state: WizardState,
  group: FactorGroup,
  value: number,
  scale: ResponseScale,
): WizardState {
  let next = state;
  for (const member of group.members) {
    next = answer(next, member.id, value, scale);
  }
  return next;
}

/** Where a factor slider sits: the rounded mean of its members' answers. */
export function factorSliderPosition(state: WizardState, group: FactorGroup): number {
  let sum = 0;
  for (const member of group.members) {
    sum += state.responses[member.id] ?? 0;
  }
  return Math.round(sum / group.members.length);
}

/* Persistence. lastPrediction is deliberately not stored: predictions are
 * always re-fetched so the display never shows a stale server value. */

const STORAGE_KEY = "gradecast-wizard";

export function serializeState(state: WizardState): string {
  return JSON.stringify({
    model: state.model,
    responses: state.responses,
    page: state.page,
  });
}

export function deserializeState(text: string, schema: Schema): WizardState {
  const state = emptyState();
  let parsed: unknown;
  try {
    parsed = JSON.parse(text);
  } catch {
    return state;
  }
  if (typeof parsed !== "object" || parsed === null) return state;
  const record = parsed as Record<string, unknown>;
  if (typeof record.model === "string") state.model = record.model;
  const span = scaleSpan(schema.scale);
  const known = new Set(schema.variables.map((v) => v.id));
  if (typeof record.responses === "object" && record.responses !== null) {
    for (const [id, value] of Object.entries(record.responses)) {
      if (known.has(id) && Number.isInteger(value) && (value as number) >= 0 && (value as number) <= span) {
        state.responses[id] = value as number;
      }
    }
  }
  if (typeof record.page === "number" && Number.isInteger(record.page)) {
    state.page = clampPage(record.page, factorGroups(schema).length);
  }
  return state;
}

export function saveState(storage: Storage, state: WizardState): void {
  storage.setItem(STORAGE_KEY, serializeState(state));
}

export function loadState(storage: Storage, schema: Schema): WizardState {
  const text = storage.getItem(STORAGE_KEY);
  return text === null ? emptyState() : deserializeState(text, schema);
}

export function clearState(storage: Storage): void {
  storage.removeItem(STORAGE_KEY);
}
