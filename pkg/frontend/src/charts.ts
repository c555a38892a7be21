/** Pure data-to-pixel helpers for the inline SVG charts. */

export interface ChartSize {
  width: number;
  height: number;
}

/** X position of point i among n evenly spaced points. */
export function xAt(i: number, n: number, width: number): number {
  if (n <= 1) return width / 2;
  return (i / (n - 1)) * width;
}

/** Y position for a value in [min, max]; larger values sit higher. */
export function yAt(value: number, min: number, max: number, height: number): number {
  const clamped = Math.min(max, Math.max(min, value));
  return height - ((clamped - min) / (max - min)) * height;
}

/**
 * Split a series with nulls into SVG path segments; each null opens a gap.
 * Values map linearly from [min, max] onto the chart height.
 */
export function lineSegments(
  values: (number | null)[],
  size: ChartSize,
  min = -1,
  max = 1,
): string[] {
  const segments: string[] = [];
  let current: string[] = [];
  values.forEach((value, i) => {
    if (value === null) {
      if (current.length > 0) segments.push(current.join(" "));
      current = [];
      return;
    }
    const x = xAt(i, values.length, size.width);
    const y = yAt(value, min, max, size.height);
    current.push(`${current.length === 0 ? "M" : "L"}${x.toFixed(2)},${y.toFixed(2)}`);
  });
  if (current.length > 0) segments.push(current.join(" "));
  return segments;
}

/** Bar heights proportional to counts; an all-zero series stays all-zero. */
export function barHeights(counts: number[], maxHeight: number): number[] {
  const peak = Math.max(0, ...counts);
  if (peak === 0) return counts.map(() => 0);
  return counts.map((c) => (c / peak) * maxHeight);
}
