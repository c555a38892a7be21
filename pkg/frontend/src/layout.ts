/** Responsive layout switching.
 *
 * The stylesheet lays the four panels out per the root element's
 * data-layout attribute: "wide" (>= 1024px) is the four-panel arrangement
 * with the tweet list in the right column and sentiment across the bottom;
 * "stacked" (< 768px) is a single column in DOM order (daily overview,
 * weekly counts, tweet list, sentiment); "medium" covers the band between.
 */

export type LayoutMode = "wide" | "medium" | "stacked";

export const WIDE_MIN_WIDTH = 1024;
export const STACKED_MAX_WIDTH = 768;

export function layoutModeFor(width: number): LayoutMode {
  if (width >= WIDE_MIN_WIDTH) return "wide";
  if (width < STACKED_MAX_WIDTH) return "stacked";
  return "medium";
}

export function applyLayout(root: HTMLElement, width: number): LayoutMode {
  const mode = layoutModeFor(width);
  root.dataset.layout = mode;
  return mode;
}

/** Keep the root's layout attribute in sync with the viewport width. */
export function watchLayout(root: HTMLElement, win: Window): () => void {
  const update = () => applyLayout(root, win.innerWidth);
  update();
  win.addEventListener("resize", update);
  return () => win.removeEventListener("resize", update);
}
