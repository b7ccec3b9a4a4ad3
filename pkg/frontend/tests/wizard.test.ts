import { describe, expect, it, vi } from "vitest";
import { factorGroups, answer, emptyState } from "../src/state.js";
import type { WizardState } from "../src/state.js";
import { renderWizard } from "../src/wizard.js";
import type { WizardHandlers } from "../src/wizard.js";
import { fixtureSchema } from "./helpers.js";

const schema = fixtureSchema();
const groups = factorGroups(schema);

function mount(): HTMLElement {
  const root = document.createElement("main");
  document.body.replaceChildren(root);
  return root;
}

function draw(
  root: HTMLElement,
  state: WizardState,
  handlers: Partial<WizardHandlers> = {},
): void {
  renderWizard(root, schema, groups, state, {
    onAnswer: handlers.onAnswer ?? (() => {}),
    onNavigate: handlers.onNavigate ?? (() => {}),
    onFinish: handlers.onFinish ?? (() => {}),
  });
}

describe("wizard view", () => {
  it("first page is the first factor with its member prompts", () => {
    const root = mount();
    draw(root, emptyState());
    expect(root.querySelector("h2")?.textContent).toBe(`Factor ${groups[0]!.code}`);
    const items = root.querySelectorAll<HTMLElement>(".prompt-item");
    expect(items).toHaveLength(groups[0]!.members.length);
    expect(items[0]?.querySelector("legend")?.textContent).toBe(
      schema.variables[0]!.prompt,
    );
  });

  it("the SAT page shows exactly four prompts, x10 through x13", () => {
    const page = groups.findIndex((g) => g.code === "SAT");
    const root = mount();
    draw(root, { ...emptyState(), page });
    const items = [...root.querySelectorAll<HTMLElement>(".prompt-item")];
    expect(items.map((i) => i.dataset.variableId)).toEqual(["x10", "x11", "x12", "x13"]);
  });

  it("each prompt offers one radio per scale position, labeled 1..5, coded 0..4", () => {
    const root = mount();
    draw(root, emptyState());
    const radios = root.querySelectorAll<HTMLInputElement>(
      '.prompt-item:first-of-type input[type="radio"]',
    );
    expect(radios).toHaveLength(5);
    expect([...radios].map((r) => r.value)).toEqual(["0", "1", "2", "3", "4"]);
    const labels = root.querySelectorAll(".prompt-item:first-of-type .likert-options span");
    expect([...labels].map((l) => l.textContent)).toEqual(["1", "2", "3", "4", "5"]);
  });

  it("checking a radio reports the zero-offset wire value", () => {
    const root = mount();
    const onAnswer = vi.fn();
    draw(root, emptyState(), { onAnswer });
    const radio = root.querySelector<HTMLInputElement>('input[name="x2"][value="3"]')!;
    radio.checked = true;
    radio.dispatchEvent(new Event("change"));
    expect(onAnswer).toHaveBeenCalledWith("x2", 3);
  });

  it("page count and progress counter are live", () => {
    let state = emptyState();
    state = answer(state, "x1", 2, schema.scale);
    state = answer(state, "x50", 4, schema.scale);
    const root = mount();
    draw(root, state);
    expect(root.querySelector(".wizard-progress")?.textContent).toBe(
      "Page 1 of 21 - 2/70 answered",
    );
    const meter = root.querySelector("progress")!;
    expect(meter.value).toBe(2);
    expect(meter.max).toBe(70);
  });

  it("previously answered radios come back checked when navigating", () => {
    let state = emptyState();
    state = answer(state, "x1", 1, schema.scale);
    const root = mount();
    draw(root, state);
    expect(root.querySelector<HTMLInputElement>('input[name="x1"][value="1"]')!.checked).toBe(true);
    expect(root.querySelector<HTMLInputElement>('input[name="x1"][value="0"]')!.checked).toBe(false);
  });

  it("back is disabled on the first page and navigation reports deltas", () => {
    const root = mount();
    const onNavigate = vi.fn();
    draw(root, emptyState(), { onNavigate });
    expect(root.querySelector<HTMLButtonElement>(".btn-back")!.disabled).toBe(true);
    root.querySelector<HTMLButtonElement>(".btn-next")!.click();
    expect(onNavigate).toHaveBeenCalledWith(1);
  });

  it("the last page has a finish button disabled at 69/70", () => {
    let state: WizardState = { ...emptyState(), page: groups.length - 1 };
    for (const variable of schema.variables.slice(0, 69)) {
      state = answer(state, variable.id, 0, schema.scale);
    }
    const root = mount();
    draw(root, state);
    expect(root.querySelector(".btn-next")).toBeNull();
    const finish = root.querySelector<HTMLButtonElement>(".btn-finish")!;
    expect(finish.disabled).toBe(true);
  });

  it("finish enables at 70/70 and fires the handler", () => {
    let state: WizardState = { ...emptyState(), page: groups.length - 1 };
    for (const variable of schema.variables) {
      state = answer(state, variable.id, 0, schema.scale);
    }
    const onFinish = vi.fn();
    const root = mount();
    draw(root, state, { onFinish });
    const finish = root.querySelector<HTMLButtonElement>(".btn-finish")!;
    expect(finish.disabled).toBe(false);
    finish.click();
    expect(onFinish).toHaveBeenCalledOnce();
  });
});
