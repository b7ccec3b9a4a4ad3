/** Presentation-only formatting. Values are never recomputed, only trimmed:
 * at most four decimals, trailing zeros dropped (9.8865 -> "9.8865",
 * 5.1339000000000015 -> "5.1339", 7 -> "7"). */
export function formatGrade(value: number): string {
  return String(Number(value.toFixed(4)));
}
