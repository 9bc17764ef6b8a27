// Controller: holds view state, talks to the API, and re-renders. All
// engine mutations go through advance/pause/override; sorting the
// breakpoint table is a pure re-render with no request.

import { ApiClient, ApiError } from "./api";
import {
  breakpointPanelHtml,
  errorBannerHtml,
  reportTableHtml,
  seriesChartsHtml,
  sessionHeaderHtml,
  traceTimelineHtml,
  type SortDir,
  type SortKey,
} from "./render";
import type { AlternativesStep, ReportData, SessionView } from "./types";

export interface PanelState {
  iteration: number;
  step: AlternativesStep;
  sortKey: SortKey;
  sortDir: SortDir;
}

export interface AppState {
  sessionId: string | null;
  view: SessionView | null;
  report: ReportData | null;
  panel: PanelState | null;
  error: { status: number | null; message: string } | null;
}

export class TraceExplorer {
  state: AppState = {
    sessionId: null,
    view: null,
    report: null,
    panel: null,
    error: null,
  };

  constructor(private readonly api: ApiClient) {}

  private fail(err: unknown): void {
    if (err instanceof ApiError) {
      this.state.error = { status: err.status, message: err.message };
    } else {
      this.state.error = { status: null, message: String(err) };
    }
  }

  async open(sessionId: string): Promise<void> {
    this.state.sessionId = sessionId;
    this.state.panel = null;
    await this.refresh();
  }

  async refresh(): Promise<void> {
    if (!this.state.sessionId) return;
    try {
      this.state.view = await this.api.view(this.state.sessionId);
      this.state.report =
        this.state.view.steps.length > 0
          ? await this.api.report(this.state.sessionId)
          : null;
      this.state.error = null;
    } catch (err) {
      this.fail(err);
    }
  }

  async advance(steps: number): Promise<void> {
    if (!this.state.sessionId) return;
    try {
      await this.api.advance(this.state.sessionId, steps);
      await this.refresh();
    } catch (err) {
      this.fail(err);
    }
  }

  async pause(): Promise<void> {
    if (!this.state.sessionId) return;
    try {
      await this.api.pause(this.state.sessionId);
    } catch (err) {
      this.fail(err);
    }
  }

  async openPanel(iteration: number): Promise<void> {
    if (!this.state.sessionId) return;
    try {
      const step = await this.api.alternatives(this.state.sessionId, iteration);
      this.state.panel = { iteration, step, sortKey: "objective", sortDir: -1 };
      this.state.error = null;
    } catch (err) {
      this.fail(err);
    }
  }

  closePanel(): void {
    this.state.panel = null;
  }

  // pure re-sort: flips direction when the same column is clicked again
  sortPanel(key: SortKey): void {
    const panel = this.state.panel;
    if (!panel) return;
    if (panel.sortKey === key) {
      panel.sortDir = (panel.sortDir * -1) as SortDir;
    } else {
      panel.sortKey = key;
      panel.sortDir = -1;
    }
  }

  async choose(candidate: number): Promise<void> {
    const panel = this.state.panel;
    if (!panel || !this.state.sessionId) return;
    try {
      await this.api.override(this.state.sessionId, panel.iteration, candidate);
      this.state.panel = null;
      await this.refresh();
    } catch (err) {
      this.fail(err);
    }
  }

  render(): string {
    const parts: string[] = [];
    if (this.state.error) {
      parts.push(errorBannerHtml(this.state.error.status, this.state.error.message));
    }
    if (!this.state.view) {
      parts.push(`<p class="empty">no session loaded</p>`);
      return parts.join("");
    }
    parts.push(sessionHeaderHtml(this.state.view));
    if (this.state.report) {
      parts.push(seriesChartsHtml(this.state.report.series));
      parts.push(reportTableHtml(this.state.report));
    }
    parts.push(traceTimelineHtml(this.state.view));
    if (this.state.panel) {
      parts.push(
        breakpointPanelHtml(
          this.state.panel.step,
          this.state.panel.sortKey,
          this.state.panel.sortDir,
        ),
      );
    }
    return parts.join("");
  }
}
