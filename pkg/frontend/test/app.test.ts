import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api";
import { TraceExplorer } from "../src/app";
import type {
  AlternativesStep,
  ReportData,
  SessionView,
} from "../src/types";
import { fixture, makeFetch, type LoggedRequest, type Route } from "./helpers";

const SID = fixture<SessionView>("view").session.id;

function standardRoutes(state: { overridden: boolean }): Route[] {
  return [
    {
      method: "GET",
      pattern: new RegExp(`/v1/sessions/${SID}/view$`),
      handler: () => ({
        payload: state.overridden
          ? fixture<SessionView>("view_after_override")
          : fixture<SessionView>("view"),
      }),
    },
    {
      method: "GET",
      pattern: new RegExp(`/v1/sessions/${SID}/report$`),
      handler: () => ({ payload: fixture<{ report: ReportData }>("report") }),
    },
    {
      method: "GET",
      pattern: new RegExp(`/v1/sessions/${SID}/iterations/1/alternatives$`),
      handler: () => ({
        payload: fixture<{ step: AlternativesStep }>("alternatives"),
      }),
    },
    {
      method: "POST",
      pattern: new RegExp(`/v1/sessions/${SID}/override$`),
      handler: () => {
        state.overridden = true;
        return { payload: { session: fixture<SessionView>("view").session } };
      },
    },
    {
      method: "POST",
      pattern: new RegExp(`/v1/sessions/${SID}/advance$`),
      handler: () => ({
        payload: { session: fixture<SessionView>("view").session },
      }),
    },
  ];
}

describe("trace explorer controller", () => {
  let log: LoggedRequest[];
  let explorer: TraceExplorer;
  let serverState: { overridden: boolean };

  beforeEach(async () => {
    log = [];
    serverState = { overridden: false };
    explorer = new TraceExplorer(
      new ApiClient("", makeFetch(standardRoutes(serverState), log)),
    );
    await explorer.open(SID);
  });

  it("loads view and report on open", () => {
    expect(explorer.state.view?.steps).toHaveLength(4);
    expect(explorer.state.report?.series).toHaveLength(4);
    expect(explorer.render()).toContain("step 1");
  });

  it("choosing an alternative emits exactly one override request", async () => {
    await explorer.openPanel(1);
    const expected = fixture<{ iteration: number; candidate: number }>(
      "override_request",
    );
    log.length = 0;
    await explorer.choose(expected.candidate);
    const posts = log.filter((r) => r.method === "POST");
    expect(posts).toHaveLength(1);
    expect(posts[0].url).toBe(`/v1/sessions/${SID}/override`);
    expect(posts[0].body).toEqual(expected);
    // panel closes and the refreshed trace shows the new branch
    expect(explorer.state.panel).toBeNull();
    const html = explorer.render();
    expect(html).toContain("provenance override");
    expect(html).toContain("archived branch");
  });

  it("sorting the panel is a pure re-render with no requests", async () => {
    await explorer.openPanel(1);
    const before = log.length;
    const firstHtml = explorer.render();
    explorer.sortPanel("molecular-weight");
    const sortedHtml = explorer.render();
    explorer.sortPanel("molecular-weight");
    expect(log).toHaveLength(before);
    expect(sortedHtml).not.toBe(firstHtml);
    const rows = (html: string) =>
      (html.match(/data-candidate="(\d+)"/g) ?? []).join(",");
    expect(rows(firstHtml)).not.toBe(rows(sortedHtml));
  });

  it("only documented endpoints are ever hit, and GETs outnumber writes", async () => {
    await explorer.refresh();
    await explorer.openPanel(1);
    explorer.sortPanel("qed");
    await explorer.advance(1);
    const allowedWrites = new RegExp(
      `/v1/sessions/${SID}/(advance|pause|override)$`,
    );
    for (const request of log) {
      if (request.method !== "GET") {
        expect(request.url).toMatch(allowedWrites);
      }
    }
  });

  it("surfaces service errors with their status code", async () => {
    const failing = new TraceExplorer(
      new ApiClient(
        "",
        makeFetch(
          [
            {
              method: "GET",
              pattern: /view$/,
              handler: () => ({
                status: 409,
                payload: { error: "another command is running" },
              }),
            },
          ],
          [],
        ),
      ),
    );
    await failing.open("whatever");
    expect(failing.state.error).toEqual({
      status: 409,
      message: "another command is running",
    });
    expect(failing.render()).toContain("error 409");
    expect(failing.render()).toContain("another command is running");
  });

  it("unknown sessions render a 404 banner", async () => {
    const missing = new TraceExplorer(
      new ApiClient("", makeFetch([], [])),
    );
    await missing.open("ghost");
    expect(missing.state.error?.status).toBe(404);
  });
});
