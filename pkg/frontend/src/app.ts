import { ApiClient } from "./api.js";
import { watchLayout } from "./layout.js";
import { DailyPanel } from "./panels/daily.js";
import { SentimentPanel } from "./panels/sentiment.js";
import { TweetsPanel } from "./panels/tweets.js";
import { WeeklyPanel } from "./panels/weekly.js";
import type { DashboardConfig, ProfileSummary } from "./types.js";

export interface Dashboard {
  daily: DailyPanel;
  weekly: WeeklyPanel;
  tweets: TweetsPanel;
  sentiment: SentimentPanel;
  profile: ProfileSummary;
  stopLayout: () => void;
}

export async function loadConfig(): Promise<DashboardConfig> {
  const res = await fetch("dashboard-config.json");
  if (!res.ok) throw new Error(`cannot load dashboard-config.json (${res.status})`);
  return (await res.json()) as DashboardConfig;
}

/** Build the four panels for a profile and kick off their first loads in
 * parallel; each panel manages its own loading / error lifecycle. */
export function buildDashboard(
  root: HTMLElement,
  client: ApiClient,
  profile: ProfileSummary,
  win: Window,
  pollIntervalMs?: number,
): Dashboard {
  const daily = new DailyPanel(client, profile.profile_id, profile.window);
  const weekly = new WeeklyPanel(client, profile.profile_id);
  const tweets = new TweetsPanel(client, profile.profile_id);
  const sentiment = new SentimentPanel(client, profile.profile_id);

  const grid = document.createElement("main");
  grid.className = "dashboard";
  // DOM order is the stacked order: daily, weekly, tweets, sentiment.
  grid.append(daily.root, weekly.root, tweets.root, sentiment.root);
  root.replaceChildren(grid);
  const stopLayout = watchLayout(root, win);

  for (const panel of [daily, weekly, tweets, sentiment]) {
    void panel.refresh();
    if (pollIntervalMs !== 0) panel.startPolling(pollIntervalMs);
  }
  return { daily, weekly, tweets, sentiment, profile, stopLayout };
}

export async function boot(root: HTMLElement, win: Window): Promise<Dashboard> {
  const config = await loadConfig();
  const client = new ApiClient(config.apiBaseUrl, config.apiKey);
  const { profiles } = await client.getProfiles();
  const profile =
    profiles.find((p) => p.profile_id === config.profileId) ??
    profiles.find((p) => p.active) ??
    profiles[0];
  if (!profile) throw new Error("no tracking profiles configured");
  return buildDashboard(root, client, profile, win);
}

declare global {
  interface Window {
    __crisiswatchBooted?: boolean;
  }
}

if (typeof document !== "undefined" && document.getElementById("dashboard-root")) {
  window.__crisiswatchBooted = true;
  const root = document.getElementById("dashboard-root") as HTMLElement;
  boot(root, window).catch((err) => {
    root.textContent = `Dashboard failed to start: ${err instanceof Error ? err.message : err}`;
  });
}
