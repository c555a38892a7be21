import type { ApiClient } from "../api.js";
import type { TweetPayload, TweetsPage } from "../types.js";
import { Panel } from "../panel.js";

const PAGE_SIZE = 50;
const SCROLL_THRESHOLD_PX = 120;

/** Tweet overview panel: newest-known page first, then infinite scroll
 * through the cursor chain. Every tweet renders exactly once. */
export class TweetsPanel extends Panel<TweetsPage> {
  private nextCursor: string | null = null;
  private renderedIds = new Set<string>();
  private list: HTMLElement | null = null;
  private loadingMore = false;

  constructor(
    private readonly client: ApiClient,
    private readonly profileId: string,
  ) {
    super({
      id: "tweets",
      title: "Tweet overview",
      fetchData: () => this.client.getTweets(this.profileId, { pageSize: PAGE_SIZE }),
      renderData: (page, body) => this.renderFirstPage(page, body),
    });
  }

  private renderFirstPage(page: TweetsPage, body: HTMLElement): void {
    this.renderedIds = new Set();
    this.nextCursor = page.next_cursor;
    this.list = document.createElement("div");
    this.list.className = "tweet-list";
    this.list.addEventListener("scroll", () => this.maybeLoadMore());
    this.appendTweets(page.items);
    body.append(this.list);
  }

  private appendTweets(items: TweetPayload[]): void {
    if (!this.list) return;
    for (const tweet of items) {
      if (this.renderedIds.has(tweet.tweet_id)) continue;
      this.renderedIds.add(tweet.tweet_id);
      this.list.append(renderTweetRow(tweet));
    }
  }

  /** Called from the scroll listener; fetches the next page near the end. */
  maybeLoadMore(): void {
    if (!this.list || this.nextCursor === null || this.loadingMore) return;
    const el = this.list;
    const nearBottom =
      el.scrollTop + el.clientHeight >= el.scrollHeight - SCROLL_THRESHOLD_PX;
    if (nearBottom) void this.loadMore();
  }

  async loadMore(): Promise<void> {
    if (this.nextCursor === null || this.loadingMore) return;
    this.loadingMore = true;
    try {
      const page = await this.client.getTweets(this.profileId, {
        pageSize: PAGE_SIZE,
        cursor: this.nextCursor,
      });
      this.nextCursor = page.next_cursor;
      this.appendTweets(page.items);
    } finally {
      this.loadingMore = false;
    }
  }

  get tweetCount(): number {
    return this.renderedIds.size;
  }

  get hasMore(): boolean {
    return this.nextCursor !== null;
  }
}

function renderTweetRow(tweet: TweetPayload): HTMLElement {
  const row = document.createElement("article");
  row.className = "tweet-row";
  row.dataset.tweetId = tweet.tweet_id;

  const meta = document.createElement("div");
  meta.className = "tweet-meta";
  const author = document.createElement("span");
  author.className = "tweet-author";
  author.textContent = `@${tweet.author_handle}`;
  const when = document.createElement("time");
  when.dateTime = tweet.created_at;
  when.textContent = tweet.created_at.replace("T", " ").replace("Z", " UTC");
  meta.append(author, when);

  const text = document.createElement("p");
  text.className = "tweet-text";
  text.textContent = tweet.text;

  const counts = document.createElement("div");
  counts.className = "tweet-counts";
  counts.textContent = `♥ ${tweet.like_count} · ↻ ${tweet.retweet_count}`;

  row.append(meta, text, counts);
  return row;
}
