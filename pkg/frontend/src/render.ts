// Pure string renderers. Every mathematical string (polynomials, vectors,
// variables) is inserted verbatim from the server document; the renderer
// only escapes and arranges.

import { GraphDoc, QuiverDoc, StateDoc } from "./api.js";
import { Banner, Toggles } from "./state.js";

export const escapeHtml = (s: string): string =>
  s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");

export interface Layout {
  positions: Map<number, { x: number; y: number }>;
}

/** Mutable vertices on an inner circle, frozen vertices on an outer ring. */
export function defaultLayout(quiver: QuiverDoc, size = 420): Layout {
  const positions = new Map<number, { x: number; y: number }>();
  const cx = size / 2;
  const cy = size / 2;
  for (let i = 0; i < quiver.n; i++) {
    const angle = (2 * Math.PI * i) / Math.max(quiver.n, 1) - Math.PI / 2;
    positions.set(i + 1, {
      x: cx + 0.45 * size * 0.55 * Math.cos(angle),
      y: cy + 0.45 * size * 0.55 * Math.sin(angle),
    });
  }
  for (let j = 0; j < quiver.m; j++) {
    const angle = (2 * Math.PI * j) / Math.max(quiver.m, 1) + Math.PI / 2;
    positions.set(quiver.n + j + 1, {
      x: cx + 0.45 * size * Math.cos(angle),
      y: cy + 0.45 * size * Math.sin(angle),
    });
  }
  return { positions };
}

function arrowSvg(
  from: { x: number; y: number },
  to: { x: number; y: number },
  label: string,
): string {
  const dx = to.x - from.x;
  const dy = to.y - from.y;
  const len = Math.hypot(dx, dy) || 1;
  const ux = dx / len;
  const uy = dy / len;
  const start = { x: from.x + 18 * ux, y: from.y + 18 * uy };
  const end = { x: to.x - 18 * ux, y: to.y - 18 * uy };
  const mid = { x: (start.x + end.x) / 2 - 8 * uy, y: (start.y + end.y) / 2 + 8 * ux };
  const text = label
    ? `<text class="arrow-label" x="${mid.x.toFixed(1)}" y="${mid.y.toFixed(1)}">${label}</text>`
    : "";
  return (
    `<line x1="${start.x.toFixed(1)}" y1="${start.y.toFixed(1)}" ` +
    `x2="${end.x.toFixed(1)}" y2="${end.y.toFixed(1)}" marker-end="url(#arrowhead)"/>` +
    text
  );
}

export function renderQuiverSvg(quiver: QuiverDoc, layout: Layout, size = 420): string {
  const parts: string[] = [
    `<svg class="quiver" viewBox="0 0 ${size} ${size}" width="${size}" height="${size}">`,
    `<defs><marker id="arrowhead" markerWidth="9" markerHeight="7" refX="8" refY="3.5" orient="auto">` +
      `<polygon points="0 0, 9 3.5, 0 7"/></marker></defs>`,
  ];
  for (const [from, to, mult] of quiver.arrows) {
    const a = layout.positions.get(from);
    const b = layout.positions.get(to);
    if (!a || !b) continue;
    parts.push(arrowSvg(a, b, mult > 1 ? String(mult) : ""));
  }
  const frozen = new Set(quiver.frozen);
  for (const [v, pos] of layout.positions) {
    const isFrozen = frozen.has(v);
    const label = isFrozen ? `u${v - quiver.n}` : String(v);
    if (isFrozen) {
      parts.push(
        `<rect class="vertex frozen" x="${(pos.x - 14).toFixed(1)}" y="${(pos.y - 14).toFixed(1)}" ` +
          `width="28" height="28" data-vertex="${v}"/>`,
      );
    } else {
      parts.push(
        `<circle class="vertex mutable" cx="${pos.x.toFixed(1)}" cy="${pos.y.toFixed(1)}" r="16" ` +
          `data-vertex="${v}"/>`,
      );
    }
    parts.push(
      `<text class="vertex-label" x="${pos.x.toFixed(1)}" y="${(pos.y + 4).toFixed(1)}">` +
        `${escapeHtml(label)}</text>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}

const vectorText = (v: number[]): string => `(${v.join(", ")})`;

function listSection(title: string, lines: string[]): string {
  const items = lines.map((s) => `<li><code>${escapeHtml(s)}</code></li>`).join("");
  return `<section><h3>${escapeHtml(title)}</h3><ol>${items}</ol></section>`;
}

export function renderPanel(doc: StateDoc, toggles: Toggles): string {
  const parts: string[] = [];
  parts.push(
    `<p class="badges">` +
      `<span class="badge">type: ${escapeHtml(doc.finite_type)}</span>` +
      `<span class="badge ${doc.invariants.ok ? "ok" : "bad"}">` +
      `invariants: ${doc.invariants.ok ? "ok" : "VIOLATED"}</span>` +
      `<span class="badge">path: ${doc.path.length ? doc.path.join("") : "(initial)"}</span>` +
      `</p>`,
  );
  if (toggles.showF && doc.f_polynomials) {
    parts.push(listSection("Exchange polynomials", doc.f_polynomials));
  }
  if (toggles.showVectors && doc.c_vectors && doc.g_vectors) {
    parts.push(listSection("c-vectors", doc.c_vectors.map(vectorText)));
    parts.push(listSection("g-vectors", doc.g_vectors.map(vectorText)));
  }
  if (toggles.showDVectors && doc.d_vectors) {
    parts.push(listSection("d-vectors", doc.d_vectors.map(vectorText)));
  }
  if (toggles.showVariables && doc.cluster_variables) {
    parts.push(listSection("Cluster variables", doc.cluster_variables));
  }
  return parts.join("");
}

export function renderBanner(banner: Banner): string {
  if (banner.kind === "none") return "";
  const cls = banner.kind === "error" ? "banner error" : "banner info";
  return `<div class="${cls}">${escapeHtml(banner.text)}</div>`;
}

export function renderHistory(graph: GraphDoc): string {
  const children = new Map<number, number[]>();
  for (const node of graph.nodes) {
    if (node.parent !== null) {
      const list = children.get(node.parent) ?? [];
      list.push(node.id);
      children.set(node.parent, list);
    }
  }
  const label = (id: number): string => {
    const node = graph.nodes[id];
    return node.direction === null ? "root" : `&mu;${node.direction}`;
  };
  const renderNode = (id: number): string => {
    const cls = id === graph.cursor ? "hnode cursor" : "hnode";
    const kids = (children.get(id) ?? []).map(renderNode).join("");
    return (
      `<li><button class="${cls}" data-node="${id}">${label(id)}</button>` +
      (kids ? `<ul>${kids}</ul>` : "") +
      `</li>`
    );
  };
  return `<ul class="history">${renderNode(graph.root)}</ul>`;
}
