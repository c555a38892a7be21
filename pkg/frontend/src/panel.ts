/** Panel state machine shared by all four dashboard modules.
 *
 * Each panel independently moves loading -> ready | error. While loading it
 * shows an indicator and blocks user actions; an error shows a retry button
 * and never affects sibling panels. Responses arriving for superseded
 * requests are discarded by sequence number, so the newest request wins.
 */

export type PanelStatus = "loading" | "ready" | "error";

export const DEFAULT_POLL_INTERVAL_MS = 60_000;

export interface PanelOptions<T> {
  id: string;
  title: string;
  fetchData: () => Promise<T>;
  renderData: (data: T, body: HTMLElement, panel: Panel<T>) => void;
  pollIntervalMs?: number;
}

export class Panel<T> {
  readonly root: HTMLElement;
  readonly body: HTMLElement;
  status: PanelStatus = "loading";
  data: T | null = null;
  lastFetched: Date | null = null;

  private seq = 0;
  private pollTimer: ReturnType<typeof setInterval> | null = null;
  private readonly refreshButton: HTMLButtonElement;
  private readonly loadingEl: HTMLElement;
  private readonly errorEl: HTMLElement;

  constructor(private readonly options: PanelOptions<T>) {
    this.root = document.createElement("section");
    this.root.className = `panel panel-${options.id}`;
    this.root.dataset.panel = options.id;

    const header = document.createElement("header");
    header.className = "panel-header";
    const title = document.createElement("h2");
    title.textContent = options.title;
    this.refreshButton = document.createElement("button");
    this.refreshButton.type = "button";
    this.refreshButton.className = "panel-refresh";
    this.refreshButton.textContent = "Refresh";
    this.refreshButton.addEventListener("click", () => void this.refresh());
    header.append(title, this.refreshButton);

    this.loadingEl = document.createElement("div");
    this.loadingEl.className = "panel-loading";
    this.loadingEl.setAttribute("role", "status");
    this.loadingEl.textContent = "Loading…";

    this.errorEl = document.createElement("div");
    this.errorEl.className = "panel-error";

    this.body = document.createElement("div");
    this.body.className = "panel-body";

    this.root.append(header, this.loadingEl, this.errorEl, this.body);
    this.setStatus("loading");
  }

  private setStatus(status: PanelStatus): void {
    this.status = status;
    this.root.dataset.status = status;
    this.loadingEl.hidden = status !== "loading";
    this.errorEl.hidden = status !== "error";
    // no user actions while the panel is loading
    this.refreshButton.disabled = status === "loading";
    this.root.setAttribute("aria-busy", status === "loading" ? "true" : "false");
  }

  async refresh(): Promise<void> {
    const mySeq = ++this.seq;
    this.setStatus("loading");
    try {
      const data = await this.options.fetchData();
      if (mySeq !== this.seq) return; // a newer request superseded this one
      this.data = data;
      this.lastFetched = new Date();
      this.body.replaceChildren();
      this.options.renderData(data, this.body, this);
      this.setStatus("ready");
    } catch (err) {
      if (mySeq !== this.seq) return;
      this.errorEl.replaceChildren();
      const message = document.createElement("span");
      message.className = "panel-error-message";
      message.textContent = err instanceof Error ? err.message : String(err);
      const retry = document.createElement("button");
      retry.type = "button";
      retry.className = "panel-retry";
      retry.textContent = "Retry";
      retry.addEventListener("click", () => void this.refresh());
      this.errorEl.append(message, retry);
      this.setStatus("error");
    }
  }

  startPolling(intervalMs = this.options.pollIntervalMs ?? DEFAULT_POLL_INTERVAL_MS): void {
    this.stopPolling();
    this.pollTimer = setInterval(() => void this.refresh(), intervalMs);
  }

  stopPolling(): void {
    if (this.pollTimer !== null) {
      clearInterval(this.pollTimer);
      this.pollTimer = null;
    }
  }
}
