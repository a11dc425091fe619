/** Score entry: digit keys 1-9 map directly, 0 maps to 10. */

export const MIN_SCORE = 1;
export const MAX_SCORE = 10;

export function scoreForKey(key: string): number | null {
  if (key.length !== 1 || key < "0" || key > "9") return null;
  const digit = Number(key);
  return digit === 0 ? 10 : digit;
}

export function isValidScore(value: number): boolean {
  return Number.isInteger(value) && value >= MIN_SCORE && value <= MAX_SCORE;
}

/** Input-layer clamp: the UI never sends a score outside [1, 10]. */
export function clampScore(value: number): number {
  const rounded = Math.round(value);
  return Math.min(MAX_SCORE, Math.max(MIN_SCORE, rounded));
}
