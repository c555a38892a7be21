import type { ApiClient } from "../api.js";
import type { WeeklyCounts } from "../types.js";
import { Panel } from "../panel.js";
import { barHeights } from "../charts.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const CHART = { width: 420, height: 160, gap: 6 };

/** Weekly totals panel: one labeled bar per ISO week of the crisis window.
 * An empty store still renders the axis and zero-height bars. */
export class WeeklyPanel extends Panel<WeeklyCounts> {
  constructor(client: ApiClient, profileId: string) {
    super({
      id: "weekly",
      title: "Tweets per week",
      fetchData: () => client.getWeekly(profileId),
      renderData: (data, body) => renderBars(data, body),
    });
  }
}

function renderBars(data: WeeklyCounts, body: HTMLElement): void {
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("class", "weekly-chart");
  svg.setAttribute(
    "viewBox",
    `0 0 ${CHART.width} ${CHART.height + 24}`, // 24px label strip
  );

  const axis = document.createElementNS(SVG_NS, "line");
  axis.setAttribute("class", "chart-axis");
  axis.setAttribute("x1", "0");
  axis.setAttribute("x2", String(CHART.width));
  axis.setAttribute("y1", String(CHART.height));
  axis.setAttribute("y2", String(CHART.height));
  svg.append(axis);

  const weeks = data.weeks;
  const heights = barHeights(
    weeks.map((w) => w.tweet_count),
    CHART.height,
  );
  const slot = weeks.length > 0 ? CHART.width / weeks.length : CHART.width;
  weeks.forEach((week, i) => {
    const height = heights[i] ?? 0;
    const bar = document.createElementNS(SVG_NS, "rect");
    bar.setAttribute("class", "weekly-bar");
    bar.setAttribute("x", (i * slot + CHART.gap / 2).toFixed(2));
    bar.setAttribute("width", Math.max(1, slot - CHART.gap).toFixed(2));
    bar.setAttribute("y", (CHART.height - height).toFixed(2));
    bar.setAttribute("height", height.toFixed(2));
    bar.dataset.week = `${week.iso_year}-W${String(week.iso_week).padStart(2, "0")}`;
    bar.dataset.count = String(week.tweet_count);
    svg.append(bar);

    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("class", "weekly-label");
    label.setAttribute("x", (i * slot + slot / 2).toFixed(2));
    label.setAttribute("y", String(CHART.height + 16));
    label.setAttribute("text-anchor", "middle");
    label.textContent = `${week.iso_year}-W${String(week.iso_week).padStart(2, "0")}`;
    svg.append(label);
  });
  body.append(svg);
}
