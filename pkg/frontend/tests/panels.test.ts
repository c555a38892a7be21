import { afterEach, describe, expect, it, vi } from "vitest";
import { ApiClient } from "../src/api.js";
import { buildDashboard, boot } from "../src/app.js";
import { DailyPanel } from "../src/panels/daily.js";
import { SentimentPanel } from "../src/panels/sentiment.js";
import { TweetsPanel } from "../src/panels/tweets.js";
import { WeeklyPanel } from "../src/panels/weekly.js";
import {
  OVERVIEW,
  PROFILE,
  SENTIMENT_CRISIS,
  SENTIMENT_DAILY,
  WEEKLY,
  defaultRoutes,
  errorResponse,
  installMockApi,
  jsonResponse,
  makeTweet,
} from "./mock_api.js";

const client = () => new ApiClient("http://api.test", "k");

async function flushAll(rounds = 4): Promise<void> {
  for (let i = 0; i < rounds; i++) {
    await new Promise((r) => setTimeout(r, 0));
  }
}

afterEach(() => {
  vi.unstubAllGlobals();
  document.body.innerHTML = "";
});

describe("tweet overview panel", () => {
  it("renders exactly the payload rows", async () => {
    const tweets = [
      makeTweet(1, { text: "first #measles", like_count: 4, retweet_count: 2 }),
      makeTweet(2, { text: "second #measles" }),
      makeTweet(3, { text: "third #measles" }),
    ];
    installMockApi(defaultRoutes(tweets));
    const panel = new TweetsPanel(client(), "demo-outbreak");
    await panel.refresh();
    const rows = panel.root.querySelectorAll(".tweet-row");
    expect(rows).toHaveLength(3);
    expect(rows[0]?.getAttribute("data-tweet-id")).toBe("t1");
    expect(rows[0]?.querySelector(".tweet-text")?.textContent).toBe("first #measles");
    expect(rows[0]?.querySelector(".tweet-author")?.textContent).toBe("@user1");
    expect(rows[0]?.querySelector(".tweet-counts")?.textContent).toBe("♥ 4 · ↻ 2");
  });

  it("shows the error state on 403 without rendering data", async () => {
    installMockApi({
      "/api/v1/profiles/demo-outbreak/tweets?page_size=50": () => errorResponse(403),
    });
    const panel = new TweetsPanel(client(), "demo-outbreak");
    await panel.refresh();
    expect(panel.root.dataset.status).toBe("error");
    expect(panel.root.querySelectorAll(".tweet-row")).toHaveLength(0);
  });

  it("pages through 120 tweets via cursors, rendering each exactly once", async () => {
    const all = Array.from({ length: 120 }, (_, i) => makeTweet(i));
    installMockApi({
      "/api/v1/profiles/demo-outbreak/tweets?page_size=50": () =>
        jsonResponse({ items: all.slice(0, 50), next_cursor: "c1" }),
      "/api/v1/profiles/demo-outbreak/tweets?page_size=50&cursor=c1": () =>
        jsonResponse({ items: all.slice(50, 100), next_cursor: "c2" }),
      "/api/v1/profiles/demo-outbreak/tweets?page_size=50&cursor=c2": () =>
        jsonResponse({ items: all.slice(100), next_cursor: null }),
    });
    const panel = new TweetsPanel(client(), "demo-outbreak");
    await panel.refresh();
    expect(panel.tweetCount).toBe(50);

    const list = panel.root.querySelector(".tweet-list") as HTMLElement;
    // jsdom has no real layout: stub the scroll geometry near the bottom
    Object.defineProperty(list, "scrollHeight", { value: 2000, configurable: true });
    Object.defineProperty(list, "clientHeight", { value: 500, configurable: true });
    list.scrollTop = 1500;
    list.dispatchEvent(new Event("scroll"));
    await flushAll();
    expect(panel.tweetCount).toBe(100);

    list.dispatchEvent(new Event("scroll"));
    await flushAll();
    expect(panel.tweetCount).toBe(120);
    expect(panel.hasMore).toBe(false);

    const ids = [...panel.root.querySelectorAll(".tweet-row")].map(
      (r) => r.getAttribute("data-tweet-id"),
    );
    expect(ids).toHaveLength(120);
    expect(new Set(ids).size).toBe(120);

    // a further scroll past the end fetches nothing more
    list.dispatchEvent(new Event("scroll"));
    await flushAll();
    expect(panel.tweetCount).toBe(120);
  });
});

describe("sentiment panel", () => {
  it("plots payload values exactly, with gaps for null days", async () => {
    installMockApi(defaultRoutes());
    const panel = new SentimentPanel(client(), "demo-outbreak");
    await panel.refresh();

    const points = panel.root.querySelectorAll(".sentiment-point");
    expect(points).toHaveLength(6); // 7 days, one null
    const byDate = new Map(
      [...points].map((p) => [p.getAttribute("data-date"), p.getAttribute("data-mean")]),
    );
    for (const want of SENTIMENT_DAILY.points) {
      if (want.mean === null) {
        expect(byDate.has(want.date)).toBe(false);
      } else {
        expect(byDate.get(want.date)).toBe(String(want.mean));
      }
    }
    // the null day splits the polyline into two segments
    expect(panel.root.querySelectorAll(".sentiment-line")).toHaveLength(2);

    const summary = (key: string) =>
      panel.root.querySelector(`[data-summary="${key}"]`)?.textContent;
    expect(summary("mean")).toBe("0.123");
    expect(summary("tweets")).toBe(String(SENTIMENT_CRISIS.tweet_count));
    expect(summary("negative")).toBe("4");
    expect(summary("positive")).toBe("8");
  });

  it("renders a flat line at zero for an all-neutral series", async () => {
    installMockApi({
      "/api/v1/profiles/demo-outbreak/sentiment?granularity=daily": () =>
        jsonResponse({
          points: SENTIMENT_DAILY.points.map((p) => ({
            ...p,
            mean: 0,
            histogram: { negative: 0, neutral: p.tweet_count, positive: 0 },
          })),
        }),
      "/api/v1/profiles/demo-outbreak/sentiment?granularity=crisis": () =>
        jsonResponse({ ...SENTIMENT_CRISIS, mean: 0 }),
    });
    const panel = new SentimentPanel(client(), "demo-outbreak");
    await panel.refresh();
    const ys = new Set(
      [...panel.root.querySelectorAll(".sentiment-point")].map((p) =>
        p.getAttribute("cy"),
      ),
    );
    expect(ys.size).toBe(1); // every point sits on the zero line
    expect(panel.root.querySelectorAll(".sentiment-line")).toHaveLength(1);
  });
});

describe("daily overview panel", () => {
  it("bounds the date picker to the crisis window", async () => {
    installMockApi(defaultRoutes());
    const panel = new DailyPanel(client(), "demo-outbreak", PROFILE.window);
    expect(panel.dateInput.min).toBe("2026-03-01");
    expect(panel.dateInput.max).toBe("2026-03-07"); // window end is exclusive
    expect(panel.dateInput.value).toBe("2026-03-07");
  });

  it("renders the payload for the selected day and refetches on change", async () => {
    const mock = installMockApi(defaultRoutes());
    const panel = new DailyPanel(client(), "demo-outbreak", PROFILE.window);
    await panel.refresh();
    expect(panel.root.querySelector('[data-figure="date"]')?.textContent).toBe(
      "2026-03-07",
    );

    panel.dateInput.value = "2026-03-02";
    panel.dateInput.dispatchEvent(new Event("change"));
    await flushAll();
    const figure = (key: string) =>
      panel.root.querySelector(`[data-figure="${key}"]`)?.textContent;
    expect(figure("date")).toBe(OVERVIEW.date);
    expect(figure("tweets")).toBe(String(OVERVIEW.tweet_count));
    expect(figure("retweets")).toBe(String(OVERVIEW.retweet_count));
    expect(figure("authors")).toBe(String(OVERVIEW.unique_authors));
    expect(figure("mean")).toBe("-0.250");
    expect(mock.mock.calls.length).toBeGreaterThanOrEqual(2);
  });

  it("rejects out-of-window dates without fetching", async () => {
    const mock = installMockApi(defaultRoutes());
    const panel = new DailyPanel(client(), "demo-outbreak", PROFILE.window);
    await panel.refresh();
    const fetchesBefore = mock.mock.calls.length;

    panel.dateInput.value = "2026-04-01";
    panel.dateInput.dispatchEvent(new Event("change"));
    await flushAll();
    expect(mock.mock.calls.length).toBe(fetchesBefore);
    expect(panel.dateInput.value).toBe("2026-03-07"); // restored
    expect(panel.dateInput.classList.contains("invalid")).toBe(true);
    expect(panel.currentDate).toBe("2026-03-07");
  });

  it("renders only the newest payload under rapid date changes", async () => {
    let resolveSlow: ((r: Response) => void) | null = null;
    installMockApi({
      ...defaultRoutes(),
      "/api/v1/profiles/demo-outbreak/overview?date=2026-03-03": () =>
        new Promise<Response>((resolve) => {
          resolveSlow = resolve;
        }),
      "/api/v1/profiles/demo-outbreak/overview?date=2026-03-04": () =>
        jsonResponse({ ...OVERVIEW, date: "2026-03-04", tweet_count: 99 }),
    });
    const panel = new DailyPanel(client(), "demo-outbreak", PROFILE.window);

    panel.dateInput.value = "2026-03-03";
    panel.dateInput.dispatchEvent(new Event("change"));
    panel.dateInput.value = "2026-03-04";
    panel.dateInput.dispatchEvent(new Event("change"));
    await flushAll();
    // the stale (slow) response arrives last and must be discarded
    resolveSlow!(jsonResponse({ ...OVERVIEW, date: "2026-03-03", tweet_count: 1 }));
    await flushAll();

    expect(panel.root.querySelector('[data-figure="date"]')?.textContent).toBe(
      "2026-03-04",
    );
    expect(panel.root.querySelector('[data-figure="tweets"]')?.textContent).toBe("99");
  });
});

describe("weekly counts panel", () => {
  it("renders one proportional bar per ISO week with labels", async () => {
    installMockApi(defaultRoutes());
    const panel = new WeeklyPanel(client(), "demo-outbreak");
    await panel.refresh();
    const bars = [...panel.root.querySelectorAll(".weekly-bar")];
    expect(bars.map((b) => b.getAttribute("data-week"))).toEqual([
      "2026-W09",
      "2026-W10",
    ]);
    expect(bars.map((b) => b.getAttribute("data-count"))).toEqual(["10", "20"]);
    const heights = bars.map((b) => Number(b.getAttribute("height")));
    expect(heights[1]).toBeCloseTo(2 * heights[0]!, 5);
    const labels = [...panel.root.querySelectorAll(".weekly-label")].map(
      (l) => l.textContent,
    );
    expect(labels).toEqual(["2026-W09", "2026-W10"]);
  });

  it("renders zero-height bars and the axis for an empty store", async () => {
    installMockApi({
      "/api/v1/profiles/demo-outbreak/weekly": () =>
        jsonResponse({
          weeks: WEEKLY.weeks.map((w) => ({ ...w, tweet_count: 0 })),
        }),
    });
    const panel = new WeeklyPanel(client(), "demo-outbreak");
    await panel.refresh();
    const bars = [...panel.root.querySelectorAll(".weekly-bar")];
    expect(bars).toHaveLength(2);
    expect(bars.every((b) => b.getAttribute("height") === "0.00")).toBe(true);
    expect(panel.root.querySelector(".chart-axis")).not.toBeNull();
  });
});

describe("panel independence", () => {
  it("one panel's 500 leaves the other three ready with data", async () => {
    installMockApi({
      ...defaultRoutes(),
      "/api/v1/profiles/demo-outbreak/sentiment?granularity=daily": () =>
        errorResponse(500),
    });
    const root = document.createElement("div");
    document.body.append(root);
    const dash = buildDashboard(root, client(), PROFILE, window, 0);
    await flushAll();

    expect(dash.sentiment.root.dataset.status).toBe("error");
    expect(dash.daily.root.dataset.status).toBe("ready");
    expect(dash.weekly.root.dataset.status).toBe("ready");
    expect(dash.tweets.root.dataset.status).toBe("ready");
    expect(dash.tweets.tweetCount).toBe(3);
    // the failed panel still shows its retry action, others their data
    expect(dash.sentiment.root.querySelector(".panel-retry")).not.toBeNull();
    expect(dash.weekly.root.querySelectorAll(".weekly-bar")).toHaveLength(2);
  });

  it("each panel independently leaves loading as its fetch settles", async () => {
    let releaseWeekly: ((r: Response) => void) | null = null;
    installMockApi({
      ...defaultRoutes(),
      "/api/v1/profiles/demo-outbreak/weekly": () =>
        new Promise<Response>((resolve) => {
          releaseWeekly = resolve;
        }),
    });
    const root = document.createElement("div");
    document.body.append(root);
    const dash = buildDashboard(root, client(), PROFILE, window, 0);
    await flushAll();
    expect(dash.weekly.root.dataset.status).toBe("loading");
    expect(dash.daily.root.dataset.status).toBe("ready");
    expect(dash.tweets.root.dataset.status).toBe("ready");

    releaseWeekly!(jsonResponse(WEEKLY));
    await flushAll();
    expect(dash.weekly.root.dataset.status).toBe("ready");
  });
});

describe("boot", () => {
  it("loads config, picks the configured profile, and builds four panels", async () => {
    installMockApi(defaultRoutes());
    const root = document.createElement("div");
    root.id = "dashboard-root";
    document.body.append(root);
    const dash = await boot(root, window);
    await flushAll();
    expect(dash.profile.profile_id).toBe("demo-outbreak");
    const order = [...root.querySelectorAll(".panel")].map(
      (p) => p.getAttribute("data-panel"),
    );
    expect(order).toEqual(["daily", "weekly", "tweets", "sentiment"]);
    expect(root.getAttribute("data-layout")).toBeTruthy();
  });
});
