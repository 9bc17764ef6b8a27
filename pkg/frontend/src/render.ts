// Pure HTML/SVG builders: state in, markup out. Interactive elements
// carry data-* attributes the controller wires by event delegation, and
// every table cell keeps its exact service value in data-value so what
// is shown is provably what the service sent.

import { layoutGraph } from "./layout";
import type {
  AlternativesStep,
  ArchiveBranch,
  GraphData,
  ReportData,
  SeriesPoint,
  SessionView,
  ViewStep,
} from "./types";

export type SortKey = "objective" | "qed" | "molecular-weight" | "sim-previous";
export type SortDir = 1 | -1;

export const PANEL_COLUMNS: { key: SortKey; label: string }[] = [
  { key: "objective", label: "objective" },
  { key: "qed", label: "drug-likeness" },
  { key: "molecular-weight", label: "mol. weight" },
  { key: "sim-previous", label: "sim. to source" },
];

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function fmt(value: number): string {
  return Number.isInteger(value) ? String(value) : value.toFixed(3);
}

// --- molecule sketches -------------------------------------------------------

export function moleculeSvg(graph: GraphData, size = 120): string {
  const points = layoutGraph(graph, size);
  const parts: string[] = [
    `<svg class="molecule" viewBox="0 0 ${size} ${size}" width="${size}" height="${size}">`,
  ];
  for (const [a, b, order] of graph.bonds) {
    const p = points[a];
    const q = points[b];
    const dx = q.x - p.x;
    const dy = q.y - p.y;
    const len = Math.max(Math.hypot(dx, dy), 1e-6);
    const nx = (-dy / len) * 2.2;
    const ny = (dx / len) * 2.2;
    const offsets = order === 1 ? [0] : order === 2 ? [-1, 1] : [-1, 0, 1];
    for (const o of offsets) {
      parts.push(
        `<line x1="${(p.x + nx * o).toFixed(1)}" y1="${(p.y + ny * o).toFixed(1)}"` +
          ` x2="${(q.x + nx * o).toFixed(1)}" y2="${(q.y + ny * o).toFixed(1)}"/>`,
      );
    }
  }
  graph.atoms.forEach((atom, i) => {
    const p = points[i];
    if (atom.element === "C") {
      parts.push(
        `<circle cx="${p.x.toFixed(1)}" cy="${p.y.toFixed(1)}" r="2.6"/>`,
      );
    } else {
      parts.push(
        `<circle class="hetero" cx="${p.x.toFixed(1)}" cy="${p.y.toFixed(1)}" r="7"/>` +
          `<text x="${p.x.toFixed(1)}" y="${(p.y + 2.6).toFixed(1)}">${escapeHtml(atom.element)}</text>`,
      );
    }
  });
  parts.push("</svg>");
  return parts.join("");
}

// --- trace timeline ----------------------------------------------------------

const BADGES: { key: string; label: string }[] = [
  { key: "objective", label: "objective" },
  { key: "qed", label: "drug-likeness" },
  { key: "molecular-weight", label: "mol. weight" },
  { key: "sim-initial", label: "sim. to seed" },
];

function badgeHtml(properties: Record<string, number>): string {
  const cells = BADGES.map(
    ({ key, label }) =>
      `<span class="badge" data-prop="${key}" data-value="${properties[key]}">` +
      `${label} ${fmt(properties[key])}</span>`,
  );
  return `<div class="badges">${cells.join("")}</div>`;
}

function stepCardHtml(step: ViewStep): string {
  const marker =
    step.provenance === "user-override"
      ? `<span class="provenance override" title="winner chosen by you">override</span>`
      : `<span class="provenance auto" title="winner chosen by the scoring function">auto</span>`;
  return (
    `<article class="step" data-iteration="${step.iteration}">` +
    `<header>step ${step.iteration + 1} ${marker}</header>` +
    moleculeSvg(step.graph) +
    `<div class="edge" data-value="${step.properties["sim-previous"]}">` +
    `sim. to previous ${fmt(step.properties["sim-previous"])}</div>` +
    badgeHtml(step.properties) +
    `<code class="tokens">${escapeHtml(step.chosen)}</code>` +
    `<button class="inspect" data-inspect="${step.iteration}">` +
    `alternatives (${step.alternatives})</button>` +
    `</article>`
  );
}

function archiveHtml(branch: ArchiveBranch): string {
  const steps = branch.steps
    .map(
      (step) =>
        `<article class="step archived" data-iteration="${step.iteration}">` +
        `<header>step ${step.iteration + 1} (archived)</header>` +
        moleculeSvg(step.graph, 84) +
        badgeHtml(step.properties) +
        `</article>`,
    )
    .join("");
  return (
    `<details class="archive" data-overridden="${branch.overridden_iteration}">` +
    `<summary>archived branch from step ${branch.overridden_iteration + 1}</summary>` +
    `<div class="timeline dimmed">${steps}</div></details>`
  );
}

export function traceTimelineHtml(view: SessionView): string {
  const seed =
    `<article class="step seed"><header>seed</header>` +
    moleculeSvg(view.seed.graph) +
    `<code class="tokens">${escapeHtml(view.seed.tokens)}</code></article>`;
  const steps = view.steps.map(stepCardHtml).join("");
  const archives = view.archives.map(archiveHtml).join("");
  const empty =
    view.steps.length === 0
      ? `<p class="empty">no steps yet; advance the session to translate the seed</p>`
      : "";
  return `<section class="timeline">${seed}${steps}</section>${empty}${archives}`;
}

// --- breakpoint panel --------------------------------------------------------

export interface PanelRow {
  index: number;
  tokens: string;
  isWinner: boolean;
  values: Record<SortKey, number>;
}

export function panelRows(
  step: AlternativesStep,
  sortKey: SortKey,
  sortDir: SortDir,
): PanelRow[] {
  const rows = step.candidates.map((candidate, index) => ({
    index,
    tokens: candidate.tokens,
    isWinner: index === step.chosen_index,
    values: {
      "objective": candidate.properties["objective"],
      "qed": candidate.properties["qed"],
      "molecular-weight": candidate.properties["molecular-weight"],
      "sim-previous": candidate.properties["sim-previous"],
    } as Record<SortKey, number>,
  }));
  rows.sort((a, b) => {
    const diff = (a.values[sortKey] - b.values[sortKey]) * sortDir;
    return diff !== 0 ? diff : a.index - b.index;
  });
  return rows;
}

export function breakpointPanelHtml(
  step: AlternativesStep,
  sortKey: SortKey,
  sortDir: SortDir,
): string {
  const headers = PANEL_COLUMNS.map(
    ({ key, label }) =>
      `<th data-sort="${key}" class="${key === sortKey ? "sorted" : ""}">` +
      `${label}${key === sortKey ? (sortDir === 1 ? " ↑" : " ↓") : ""}</th>`,
  ).join("");
  const body = panelRows(step, sortKey, sortDir)
    .map((row) => {
      const cells = PANEL_COLUMNS.map(
        ({ key }) =>
          `<td data-prop="${key}" data-value="${row.values[key]}">` +
          `${fmt(row.values[key])}</td>`,
      ).join("");
      return (
        `<tr class="${row.isWinner ? "winner" : ""}" data-candidate="${row.index}">` +
        `<td><code>${escapeHtml(row.tokens)}</code></td>${cells}` +
        `<td><button data-choose="${row.index}">` +
        `${row.isWinner ? "keep" : "choose"}</button></td></tr>`
      );
    })
    .join("");
  return (
    `<section class="breakpoint" data-iteration="${step.iteration}">` +
    `<header>breakpoint at step ${step.iteration + 1}: ${step.candidates.length} alternatives</header>` +
    `<table><thead><tr><th>sequence</th>${headers}<th></th></tr></thead>` +
    `<tbody>${body}</tbody></table>` +
    `<button data-close-panel="1">close</button></section>`
  );
}

// --- series charts -----------------------------------------------------------

function lineChartSvg(
  points: { x: number; y: number }[],
  title: string,
  yDomain: [number, number] | null,
  width = 320,
  height = 180,
): string {
  const pad = 34;
  const xs = points.map((p) => p.x);
  const ys = points.map((p) => p.y);
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs, xMin + 1e-9);
  const [yMin, yMax] = yDomain ?? [
    Math.min(...ys),
    Math.max(...ys, Math.min(...ys) + 1e-9),
  ];
  const toX = (x: number) =>
    pad + ((x - xMin) / (xMax - xMin)) * (width - 2 * pad);
  const toY = (y: number) =>
    height - pad - ((y - yMin) / (yMax - yMin || 1e-9)) * (height - 2 * pad);
  const path = points
    .map((p, i) => `${i === 0 ? "M" : "L"}${toX(p.x).toFixed(1)},${toY(p.y).toFixed(1)}`)
    .join(" ");
  const markers = points
    .map(
      (p) =>
        `<circle class="pt" data-x="${p.x}" data-y="${p.y}" ` +
        `cx="${toX(p.x).toFixed(1)}" cy="${toY(p.y).toFixed(1)}" r="2.5"/>`,
    )
    .join("");
  return (
    `<svg class="chart" viewBox="0 0 ${width} ${height}" width="${width}" height="${height}">` +
    `<text class="title" x="${width / 2}" y="14">${escapeHtml(title)}</text>` +
    `<line class="axis" x1="${pad}" y1="${height - pad}" x2="${width - pad}" y2="${height - pad}"/>` +
    `<line class="axis" x1="${pad}" y1="${pad}" x2="${pad}" y2="${height - pad}"/>` +
    `<text class="axis-label" x="${width / 2}" y="${height - 6}">iteration</text>` +
    `<text class="axis-label y" x="10" y="${height / 2}" transform="rotate(-90 10 ${height / 2})">${escapeHtml(title)}</text>` +
    `<text class="tick" x="${pad}" y="${height - pad + 12}">${points[0]?.x ?? ""}</text>` +
    `<text class="tick" x="${width - pad}" y="${height - pad + 12}">${points[points.length - 1]?.x ?? ""}</text>` +
    `<text class="tick" x="${pad - 4}" y="${toY(yMax).toFixed(1)}">${fmt(yMax)}</text>` +
    `<text class="tick" x="${pad - 4}" y="${toY(yMin).toFixed(1)}">${fmt(yMin)}</text>` +
    `<path d="${path}"/>${markers}</svg>`
  );
}

export function seriesChartsHtml(series: SeriesPoint[]): string {
  if (series.length === 0) {
    return `<p class="empty">no iterations recorded yet</p>`;
  }
  const mean = lineChartSvg(
    series.map((s) => ({ x: s.iteration, y: s.mean })),
    "mean objective",
    null,
  );
  const diversity = lineChartSvg(
    series.map((s) => ({ x: s.iteration, y: s.diversity })),
    "diversity",
    [0, 1],
  );
  return `<section class="charts">${mean}${diversity}</section>`;
}

// --- page shell --------------------------------------------------------------

export function errorBannerHtml(status: number | null, message: string): string {
  const label = status === null ? "error" : `error ${status}`;
  return `<div class="error-banner">${label}: ${escapeHtml(message)}</div>`;
}

export function sessionHeaderHtml(view: SessionView): string {
  const s = view.session;
  return (
    `<header class="session">` +
    `<h1>${escapeHtml(s.id)}</h1>` +
    `<span class="status ${s.status}">${s.status}</span>` +
    `<span>${s.executed}/${s.iterations} iterations</span>` +
    `<span>scoring: ${escapeHtml(s.scoring)}</span>` +
    `<button data-advance="1">advance 1</button>` +
    `<button data-advance="${Math.max(s.iterations - s.executed, 1)}">run to end</button>` +
    `<button data-pause="1">pause</button>` +
    `</header>`
  );
}

export function reportTableHtml(report: ReportData): string {
  const rows = report.top
    .map(
      (entry, rank) =>
        `<tr><td>${rank + 1}</td>` +
        `<td data-value="${entry.objective}">${fmt(entry.objective)}</td>` +
        `<td><code>${escapeHtml(entry.tokens)}</code></td></tr>`,
    )
    .join("");
  const baseline = report.non_recursive_baseline
    ? `<p class="baseline">non-recursive baseline (single pass)</p>`
    : "";
  return (
    `<section class="report">${baseline}` +
    `<table><thead><tr><th>rank</th><th>objective</th><th>sequence</th></tr></thead>` +
    `<tbody>${rows}</tbody></table></section>`
  );
}
