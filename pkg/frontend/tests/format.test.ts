import { describe, expect, it } from "vitest";
import { formatGrade } from "../src/format.js";

describe("formatGrade", () => {
  it("keeps short values verbatim", () => {
    expect(formatGrade(9.8865)).toBe("9.8865");
    expect(formatGrade(7)).toBe("7");
    expect(formatGrade(5.5)).toBe("5.5");
  });

  it("trims float noise to four decimals", () => {
    expect(formatGrade(5.1339000000000015)).toBe("5.1339");
    expect(formatGrade(3.14159265)).toBe("3.1416");
  });

  it("handles negatives and zero", () => {
    expect(formatGrade(0)).toBe("0");
    expect(formatGrade(-123.456789)).toBe("-123.4568");
  });
});
