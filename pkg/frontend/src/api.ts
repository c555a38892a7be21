import type {
  DailyOverview,
  ProfilesResponse,
  SentimentCrisis,
  SentimentDaily,
  TweetsPage,
  WeeklyCounts,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

/** Thin read-only client for the crisiswatch JSON API. */
export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly apiKey: string,
  ) {}

  private async get<T>(path: string): Promise<T> {
    const res = await fetch(this.baseUrl + path, {
      headers: { Authorization: `Bearer ${this.apiKey}` },
    });
    if (!res.ok) {
      let message = `HTTP ${res.status}`;
      try {
        const body = (await res.json()) as { error?: { message?: string } };
        if (body.error?.message) message = body.error.message;
      } catch {
        // non-JSON error body: keep the status message
      }
      throw new ApiError(res.status, message);
    }
    return (await res.json()) as T;
  }

  getProfiles(): Promise<ProfilesResponse> {
    return this.get("/api/v1/profiles");
  }

  getTweets(
    profileId: string,
    opts: { cursor?: string; pageSize?: number } = {},
  ): Promise<TweetsPage> {
    const params = new URLSearchParams();
    if (opts.pageSize !== undefined) params.set("page_size", String(opts.pageSize));
    if (opts.cursor !== undefined) params.set("cursor", opts.cursor);
    const query = params.toString();
    return this.get(
      `/api/v1/profiles/${encodeURIComponent(profileId)}/tweets${query ? "?" + query : ""}`,
    );
  }

  getSentimentDaily(profileId: string): Promise<SentimentDaily> {
    return this.get(
      `/api/v1/profiles/${encodeURIComponent(profileId)}/sentiment?granularity=daily`,
    );
  }

  getSentimentCrisis(profileId: string): Promise<SentimentCrisis> {
    return this.get(
      `/api/v1/profiles/${encodeURIComponent(profileId)}/sentiment?granularity=crisis`,
    );
  }

  getOverview(profileId: string, date: string): Promise<DailyOverview> {
    return this.get(
      `/api/v1/profiles/${encodeURIComponent(profileId)}/overview?date=${encodeURIComponent(date)}`,
    );
  }

  getWeekly(profileId: string): Promise<WeeklyCounts> {
    return this.get(`/api/v1/profiles/${encodeURIComponent(profileId)}/weekly`);
  }
}
