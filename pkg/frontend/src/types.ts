/** Payload shapes of the crisiswatch HTTP API (all requests are GETs). */

export interface WindowPayload {
  start: string;
  end: string;
}

export interface ProfileSummary {
  profile_id: string;
  name: string;
  window: WindowPayload;
  active: boolean;
}

export interface ProfilesResponse {
  profiles: ProfileSummary[];
}

export interface TweetPayload {
  tweet_id: string;
  created_at: string;
  author_id: string;
  author_handle: string;
  text: string;
  like_count: number;
  retweet_count: number;
  retweet_of: string | null;
  mentions: string[];
  hashtags: string[];
  matched_terms: string[];
}

export interface TweetsPage {
  items: TweetPayload[];
  next_cursor: string | null;
}

export interface Histogram {
  negative: number;
  neutral: number;
  positive: number;
}

export interface SeriesPoint {
  date: string;
  mean: number | null;
  tweet_count: number;
  histogram: Histogram;
}

export interface SentimentDaily {
  points: SeriesPoint[];
}

export interface SentimentCrisis {
  window: WindowPayload;
  mean: number | null;
  tweet_count: number;
  histogram: Histogram;
}

export interface DailyOverview {
  date: string;
  tweet_count: number;
  retweet_count: number;
  unique_authors: number;
  sentiment_mean: number | null;
  histogram: Histogram;
}

export interface WeekCount {
  iso_year: number;
  iso_week: number;
  tweet_count: number;
}

export interface WeeklyCounts {
  weeks: WeekCount[];
}

/** Deploy-time configuration served next to the static assets. */
export interface DashboardConfig {
  apiBaseUrl: string;
  apiKey: string;
  profileId?: string;
}
