/** Shared test plumbing: fixture loading and a recording fetch stub. */
import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import type { ModelInfo, PredictResponse, Schema } from "../src/api.js";

const fixtures = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

export function fixtureSchema(): Schema {
  return JSON.parse(readFileSync(join(fixtures, "schema.json"), "utf8")) as Schema;
}

export function fixtureModels(): ModelInfo[] {
  return JSON.parse(readFileSync(join(fixtures, "models.json"), "utf8")) as ModelInfo[];
}

export interface RecordedCall {
  url: string;
  method: string;
  body: unknown;
}

export interface FetchStub {
  calls: RecordedCall[];
  /** Requests to /api/predict beyond GET schema/models. */
  predictCalls(): RecordedCall[];
}

type PredictHandler = (body: {
  model: string;
  responses: Record<string, number>;
}) => { status: number; payload: unknown } | PredictResponse;

/* A minimal Response stand-in: resolving within microtasks keeps the tests
 * deterministic under fake timers (a real Response.json() may take extra
 * event-loop turns). */
function jsonResponse(payload: unknown, status = 200): Response {
  return {
    ok: status < 400,
    status,
    json: async () => JSON.parse(JSON.stringify(payload)),
  } as unknown as Response;
}

/** Install a fetch stub serving the fixtures and a scripted /api/predict.
 * Returns the call recorder; restore with vi.unstubAllGlobals(). */
export function stubFetch(onPredict: PredictHandler): FetchStub {
  const schema = fixtureSchema();
  const models = fixtureModels();
  const calls: RecordedCall[] = [];

  vi.stubGlobal("fetch", async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    calls.push({ url, method, body });

    if (url.endsWith("/api/schema")) return jsonResponse(schema);
    if (url.endsWith("/api/models")) return jsonResponse(models);
    if (url.endsWith("/api/predict")) {
      const result = onPredict(body as { model: string; responses: Record<string, number> });
      if ("status" in result && "payload" in result) {
        return jsonResponse(result.payload, result.status);
      }
      return jsonResponse(result);
    }
    return jsonResponse({ detail: `unexpected ${url}` }, 500);
  });

  return {
    calls,
    predictCalls: () => calls.filter((c) => c.url.endsWith("/api/predict")),
  };
}

/** Answer every prompt on the current wizard page with the given wire value. */
export function answerPage(root: HTMLElement, wireValue: number): void {
  for (const item of root.querySelectorAll<HTMLElement>(".prompt-item")) {
    const radio = item.querySelector<HTMLInputElement>(
      `input[type="radio"][value="${wireValue}"]`,
    );
    if (!radio) throw new Error(`no radio for wire value ${wireValue}`);
    radio.checked = true;
    radio.dispatchEvent(new Event("change"));
  }
}

export function click(root: HTMLElement, selector: string): void {
  const el = root.querySelector<HTMLButtonElement>(selector);
  if (!el) throw new Error(`no element matches ${selector}`);
  if (el.disabled) throw new Error(`${selector} is disabled`);
  el.click();
}

/** Walk the whole wizard answering everything with one wire value. */
export function completeWizard(root: HTMLElement, wireValue: number, pages = 21): void {
  for (let page = 0; page < pages; page++) {
    answerPage(root, wireValue);
    if (page < pages - 1) click(root, ".btn-next");
  }
}
