import type { ApiClient } from "../api.js";
import type { SentimentCrisis, SentimentDaily } from "../types.js";
import { Panel } from "../panel.js";
import { lineSegments, xAt, yAt } from "../charts.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const CHART = { width: 640, height: 160 };

interface SentimentData {
  daily: SentimentDaily;
  crisis: SentimentCrisis;
}

/** Sentiment-over-time panel: daily means plotted with gaps on empty days,
 * with the crisis-wide summary alongside. */
export class SentimentPanel extends Panel<SentimentData> {
  constructor(client: ApiClient, profileId: string) {
    super({
      id: "sentiment",
      title: "Sentiment over time",
      fetchData: async () => {
        const [daily, crisis] = await Promise.all([
          client.getSentimentDaily(profileId),
          client.getSentimentCrisis(profileId),
        ]);
        return { daily, crisis };
      },
      renderData: (data, body) => renderSentiment(data, body),
    });
  }
}

function renderSentiment(data: SentimentData, body: HTMLElement): void {
  body.append(renderChart(data.daily), renderSummary(data.crisis));
}

function renderChart(daily: SentimentDaily): SVGSVGElement {
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("class", "sentiment-chart");
  svg.setAttribute("viewBox", `0 0 ${CHART.width} ${CHART.height}`);
  svg.setAttribute("preserveAspectRatio", "none");

  const zero = document.createElementNS(SVG_NS, "line");
  const zeroY = yAt(0, -1, 1, CHART.height);
  zero.setAttribute("class", "chart-axis");
  zero.setAttribute("x1", "0");
  zero.setAttribute("x2", String(CHART.width));
  zero.setAttribute("y1", String(zeroY));
  zero.setAttribute("y2", String(zeroY));
  svg.append(zero);

  const means = daily.points.map((p) => p.mean);
  for (const segment of lineSegments(means, CHART)) {
    const path = document.createElementNS(SVG_NS, "path");
    path.setAttribute("class", "sentiment-line");
    path.setAttribute("d", segment);
    path.setAttribute("fill", "none");
    svg.append(path);
  }

  daily.points.forEach((point, i) => {
    if (point.mean === null) return; // empty day: a gap, not a point
    const dot = document.createElementNS(SVG_NS, "circle");
    dot.setAttribute("class", "sentiment-point");
    dot.setAttribute("cx", xAt(i, daily.points.length, CHART.width).toFixed(2));
    dot.setAttribute("cy", yAt(point.mean, -1, 1, CHART.height).toFixed(2));
    dot.setAttribute("r", "3");
    dot.dataset.date = point.date;
    dot.dataset.mean = String(point.mean);
    dot.dataset.tweetCount = String(point.tweet_count);
    svg.append(dot);
  });
  return svg;
}

function renderSummary(crisis: SentimentCrisis): HTMLElement {
  const summary = document.createElement("dl");
  summary.className = "crisis-summary";
  const entries: [string, string, string][] = [
    ["mean", "Crisis mean", crisis.mean === null ? "–" : crisis.mean.toFixed(3)],
    ["tweets", "Tweets", String(crisis.tweet_count)],
    ["negative", "Negative", String(crisis.histogram.negative)],
    ["neutral", "Neutral", String(crisis.histogram.neutral)],
    ["positive", "Positive", String(crisis.histogram.positive)],
  ];
  for (const [key, label, value] of entries) {
    const dt = document.createElement("dt");
    dt.textContent = label;
    const dd = document.createElement("dd");
    dd.dataset.summary = key;
    dd.textContent = value;
    summary.append(dt, dd);
  }
  return summary;
}
