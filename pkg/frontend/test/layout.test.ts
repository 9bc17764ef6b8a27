import { describe, expect, it } from "vitest";

import { layoutGraph } from "../src/layout";
import type { GraphData, SessionView } from "../src/types";
import { fixture } from "./helpers";

function chain(n: number): GraphData {
  return {
    atoms: Array.from({ length: n }, () => ({ element: "C", hydrogens: 2 })),
    bonds: Array.from({ length: n - 1 }, (_, i) => [i, i + 1, 1]),
  };
}

describe("force layout", () => {
  it("is deterministic for the same graph", () => {
    const graph = fixture<SessionView>("view").steps[0].graph;
    expect(layoutGraph(graph)).toEqual(layoutGraph(graph));
  });

  it("keeps every atom inside the viewbox", () => {
    for (const graph of [chain(2), chain(8), fixture<SessionView>("view").steps[2].graph]) {
      for (const point of layoutGraph(graph, 120)) {
        expect(point.x).toBeGreaterThanOrEqual(0);
        expect(point.x).toBeLessThanOrEqual(120);
        expect(point.y).toBeGreaterThanOrEqual(0);
        expect(point.y).toBeLessThanOrEqual(120);
      }
    }
  });

  it("separates atoms of a chain", () => {
    const points = layoutGraph(chain(6), 120);
    for (let i = 0; i < points.length; i++) {
      for (let j = i + 1; j < points.length; j++) {
        const dist = Math.hypot(points[i].x - points[j].x, points[i].y - points[j].y);
        expect(dist).toBeGreaterThan(4);
      }
    }
  });

  it("handles empty and single-atom graphs", () => {
    expect(layoutGraph({ atoms: [], bonds: [] })).toEqual([]);
    const single = layoutGraph({ atoms: [{ element: "C", hydrogens: 4 }], bonds: [] });
    expect(single).toHaveLength(1);
  });
});
