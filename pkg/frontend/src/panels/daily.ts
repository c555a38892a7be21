import type { ApiClient } from "../api.js";
import type { DailyOverview, WindowPayload } from "../types.js";
import { Panel } from "../panel.js";

/** Daily overview panel with a date picker bounded to the crisis window.
 * Changing the date re-enters loading and refetches; out-of-window dates
 * cannot be submitted. Rapid changes are safe: the panel's sequence
 * numbering discards every response but the newest. */
export class DailyPanel extends Panel<DailyOverview> {
  readonly dateInput: HTMLInputElement;
  private selectedDate: string;
  private readonly minDate: string;
  private readonly maxDate: string;

  constructor(client: ApiClient, profileId: string, window: WindowPayload) {
    const minDate = isoDay(window.start);
    const maxDate = lastDayInside(window.end);
    const initial = maxDate;
    super({
      id: "daily",
      title: "Daily overview",
      fetchData: () => client.getOverview(profileId, this.selectedDate ?? initial),
      renderData: (data, body) => renderOverview(data, body),
    });
    this.selectedDate = initial;
    this.minDate = minDate;
    this.maxDate = maxDate;

    this.dateInput = document.createElement("input");
    this.dateInput.type = "date";
    this.dateInput.className = "daily-date";
    this.dateInput.min = minDate;
    this.dateInput.max = maxDate;
    this.dateInput.value = initial;
    this.dateInput.addEventListener("change", () => this.onDateChange());
    const header = this.root.querySelector(".panel-header");
    header?.insertBefore(this.dateInput, header.querySelector(".panel-refresh"));
  }

  private onDateChange(): void {
    const value = this.dateInput.value;
    if (!this.isInWindow(value)) {
      // reject the selection: restore the last valid date, flag the input
      this.dateInput.value = this.selectedDate;
      this.dateInput.setCustomValidity("date is outside the crisis window");
      this.dateInput.classList.add("invalid");
      return;
    }
    this.dateInput.setCustomValidity("");
    this.dateInput.classList.remove("invalid");
    this.selectedDate = value;
    void this.refresh();
  }

  isInWindow(day: string): boolean {
    return day >= this.minDate && day <= this.maxDate;
  }

  get currentDate(): string {
    return this.selectedDate;
  }
}

function isoDay(timestamp: string): string {
  return timestamp.slice(0, 10);
}

/** Last calendar day inside a half-open [start, end) window. */
function lastDayInside(end: string): string {
  const endDate = new Date(end);
  if (
    endDate.getUTCHours() === 0 &&
    endDate.getUTCMinutes() === 0 &&
    endDate.getUTCSeconds() === 0
  ) {
    endDate.setUTCDate(endDate.getUTCDate() - 1);
  }
  return endDate.toISOString().slice(0, 10);
}

function renderOverview(data: DailyOverview, body: HTMLElement): void {
  const list = document.createElement("dl");
  list.className = "daily-figures";
  const rows: [string, string, string][] = [
    ["date", "Date", data.date],
    ["tweets", "Tweets", String(data.tweet_count)],
    ["retweets", "Retweets", String(data.retweet_count)],
    ["authors", "Unique authors", String(data.unique_authors)],
    [
      "mean",
      "Sentiment mean",
      data.sentiment_mean === null ? "–" : data.sentiment_mean.toFixed(3),
    ],
    ["negative", "Negative", String(data.histogram.negative)],
    ["neutral", "Neutral", String(data.histogram.neutral)],
    ["positive", "Positive", String(data.histogram.positive)],
  ];
  for (const [key, label, value] of rows) {
    const dt = document.createElement("dt");
    dt.textContent = label;
    const dd = document.createElement("dd");
    dd.dataset.figure = key;
    dd.textContent = value;
    list.append(dt, dd);
  }
  body.append(list);
}
