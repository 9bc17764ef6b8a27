// Deterministic force-directed 2D layout for small molecular graphs.
// Atoms start on a circle (index order), then a fixed number of
// spring-electrical iterations settle the shape; no randomness, so the
// same graph always renders the same sketch.

import type { GraphData } from "./types";

export interface Point {
  x: number;
  y: number;
}

const ITERATIONS = 220;

export function layoutGraph(graph: GraphData, size = 120): Point[] {
  const n = graph.atoms.length;
  if (n === 0) return [];
  if (n === 1) return [{ x: size / 2, y: size / 2 }];

  const ideal = 1.0;
  const xs = new Array<number>(n);
  const ys = new Array<number>(n);
  for (let i = 0; i < n; i++) {
    const angle = (2 * Math.PI * i) / n;
    xs[i] = Math.cos(angle) * (1 + 0.05 * i);
    ys[i] = Math.sin(angle) * (1 + 0.05 * i);
  }

  const neighbors: number[][] = Array.from({ length: n }, () => []);
  for (const [a, b] of graph.bonds) {
    neighbors[a].push(b);
    neighbors[b].push(a);
  }

  for (let step = 0; step < ITERATIONS; step++) {
    const temperature = 0.12 * (1 - step / ITERATIONS) + 0.005;
    const fx = new Array<number>(n).fill(0);
    const fy = new Array<number>(n).fill(0);
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let dx = xs[i] - xs[j];
        let dy = ys[i] - ys[j];
        let dist = Math.hypot(dx, dy);
        if (dist < 1e-6) {
          // deterministic nudge for coincident points
          dx = 1e-3 * (i + 1);
          dy = 1e-3 * (j + 1);
          dist = Math.hypot(dx, dy);
        }
        const repulse = (ideal * ideal) / (dist * dist);
        fx[i] += (dx / dist) * repulse;
        fy[i] += (dy / dist) * repulse;
        fx[j] -= (dx / dist) * repulse;
        fy[j] -= (dy / dist) * repulse;
      }
    }
    for (const [a, b] of graph.bonds) {
      const dx = xs[a] - xs[b];
      const dy = ys[a] - ys[b];
      const dist = Math.max(Math.hypot(dx, dy), 1e-6);
      const attract = (dist - ideal) * 0.5;
      fx[a] -= (dx / dist) * attract;
      fy[a] -= (dy / dist) * attract;
      fx[b] += (dx / dist) * attract;
      fy[b] += (dy / dist) * attract;
    }
    for (let i = 0; i < n; i++) {
      const magnitude = Math.hypot(fx[i], fy[i]);
      if (magnitude > 0) {
        const scale = Math.min(magnitude, temperature) / magnitude;
        xs[i] += fx[i] * scale;
        ys[i] += fy[i] * scale;
      }
    }
  }

  // normalize into the viewbox with a margin
  const pad = 14;
  const minX = Math.min(...xs);
  const maxX = Math.max(...xs);
  const minY = Math.min(...ys);
  const maxY = Math.max(...ys);
  const span = Math.max(maxX - minX, maxY - minY, 1e-6);
  const scale = (size - 2 * pad) / span;
  const offsetX = (size - (maxX - minX) * scale) / 2;
  const offsetY = (size - (maxY - minY) * scale) / 2;
  return xs.map((x, i) => ({
    x: (x - minX) * scale + offsetX,
    y: (ys[i] - minY) * scale + offsetY,
  }));
}
