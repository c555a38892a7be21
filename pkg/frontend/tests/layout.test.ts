import { readFileSync } from "node:fs";
import { join } from "node:path";
import { afterEach, describe, expect, it, vi } from "vitest";
import { ApiClient } from "../src/api.js";
import { buildDashboard } from "../src/app.js";
import { applyLayout, layoutModeFor, watchLayout } from "../src/layout.js";
import { PROFILE, defaultRoutes, installMockApi } from "./mock_api.js";

// vitest runs with the frontend directory as cwd
const STYLES = readFileSync(join(process.cwd(), "styles.css"), "utf-8");

afterEach(() => {
  vi.unstubAllGlobals();
  document.body.innerHTML = "";
});

function setViewportWidth(width: number): void {
  Object.defineProperty(window, "innerWidth", { configurable: true, value: width });
}

describe("layout mode thresholds", () => {
  it.each([
    [1920, "wide"],
    [1024, "wide"],
    [1023, "medium"],
    [768, "medium"],
    [767, "stacked"],
    [320, "stacked"],
  ])("width %dpx -> %s", (width, mode) => {
    expect(layoutModeFor(width as number)).toBe(mode);
  });

  it("applyLayout stamps the attribute", () => {
    const root = document.createElement("div");
    expect(applyLayout(root, 1200)).toBe("wide");
    expect(root.dataset.layout).toBe("wide");
    applyLayout(root, 500);
    expect(root.dataset.layout).toBe("stacked");
  });

  it("watchLayout follows resize events until detached", () => {
    const root = document.createElement("div");
    setViewportWidth(1400);
    const stop = watchLayout(root, window);
    expect(root.dataset.layout).toBe("wide");

    setViewportWidth(700);
    window.dispatchEvent(new Event("resize"));
    expect(root.dataset.layout).toBe("stacked");

    stop();
    setViewportWidth(1400);
    window.dispatchEvent(new Event("resize"));
    expect(root.dataset.layout).toBe("stacked"); // detached: no further updates
  });
});

describe("panel arrangement", () => {
  it("keeps the stacked DOM order: daily, weekly, tweets, sentiment", async () => {
    installMockApi(defaultRoutes());
    const root = document.createElement("div");
    document.body.append(root);
    setViewportWidth(700);
    buildDashboard(root, new ApiClient("http://api.test", "k"), PROFILE, window, 0);
    expect(root.dataset.layout).toBe("stacked");
    const order = [...root.querySelectorAll(".panel")].map(
      (p) => p.getAttribute("data-panel"),
    );
    expect(order).toEqual(["daily", "weekly", "tweets", "sentiment"]);
  });

  it("switches to the four-panel arrangement at >= 1024px", () => {
    installMockApi(defaultRoutes());
    const root = document.createElement("div");
    document.body.append(root);
    setViewportWidth(1280);
    buildDashboard(root, new ApiClient("http://api.test", "k"), PROFILE, window, 0);
    expect(root.dataset.layout).toBe("wide");
  });

  it("stylesheet places tweets far right and sentiment across the bottom in wide mode", () => {
    const wide = STYLES.slice(STYLES.indexOf('[data-layout="wide"]'));
    expect(wide).toContain('"daily weekly tweets"');
    expect(wide).toContain('"sentiment sentiment tweets"');
    expect(STYLES).toContain(".panel-tweets { grid-area: tweets; }");
    expect(STYLES).toContain(".panel-sentiment { grid-area: sentiment; }");
  });

  it("stylesheet stacks panels vertically in stacked mode", () => {
    const stacked = STYLES.slice(STYLES.indexOf('[data-layout="stacked"]'));
    const block = stacked.slice(0, stacked.indexOf("}"));
    expect(block).toContain("flex-direction: column");
  });
});
