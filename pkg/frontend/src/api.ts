// Typed client for the /v1 session API. The fetch implementation is
// injected so tests can serve recorded fixtures and log every request;
// all engine mutations go through the documented advance/pause/override
// endpoints and nothing else.

import type {
  AlternativesStep,
  ReportData,
  SessionSummary,
  SessionView,
} from "./types";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export class ApiClient {
  constructor(
    private readonly base: string,
    private readonly fetchLike: FetchLike,
  ) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
      init.headers = { "Content-Type": "application/json" };
    }
    const resp = await this.fetchLike(this.base + path, init);
    const text = await resp.text();
    if (!resp.ok) {
      let message = text;
      try {
        message = (JSON.parse(text) as { error?: string }).error ?? text;
      } catch {
        // leave the raw body as the message
      }
      throw new ApiError(resp.status, message);
    }
    return JSON.parse(text) as T;
  }

  async listSessions(): Promise<SessionSummary[]> {
    const data = await this.request<{ sessions: SessionSummary[] }>(
      "GET",
      "/v1/sessions",
    );
    return data.sessions;
  }

  async view(id: string): Promise<SessionView> {
    return this.request<SessionView>("GET", `/v1/sessions/${id}/view`);
  }

  async report(id: string): Promise<ReportData> {
    const data = await this.request<{ report: ReportData }>(
      "GET",
      `/v1/sessions/${id}/report`,
    );
    return data.report;
  }

  async alternatives(id: string, iteration: number): Promise<AlternativesStep> {
    const data = await this.request<{ step: AlternativesStep }>(
      "GET",
      `/v1/sessions/${id}/iterations/${iteration}/alternatives`,
    );
    return data.step;
  }

  async advance(id: string, steps: number): Promise<SessionSummary> {
    const data = await this.request<{ session: SessionSummary }>(
      "POST",
      `/v1/sessions/${id}/advance`,
      { steps },
    );
    return data.session;
  }

  async pause(id: string): Promise<SessionSummary> {
    const data = await this.request<{ session: SessionSummary }>(
      "POST",
      `/v1/sessions/${id}/pause`,
    );
    return data.session;
  }

  async override(
    id: string,
    iteration: number,
    candidate: number,
  ): Promise<SessionSummary> {
    const data = await this.request<{ session: SessionSummary }>(
      "POST",
      `/v1/sessions/${id}/override`,
      { iteration, candidate },
    );
    return data.session;
  }
}
