/** Pure HTML renderers: every function maps view state to markup strings. */

import { CloudEntry } from "./api.js";
import { ViewState } from "./state.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

/**
 * Log-scaled size bucket in 1..5, monotone in the count; the most present
 * tag always lands in bucket 5 and count 1 in bucket 1.
 */
export function sizeBucket(count: number, maxCount: number): number {
  if (maxCount <= 1 || count <= 1) return count >= maxCount ? 5 : 1;
  const bucket = 1 + Math.floor((4 * Math.log(count)) / Math.log(maxCount));
  return Math.max(1, Math.min(5, bucket));
}

export function renderCloud(entries: CloudEntry[]): string {
  if (entries.length === 0) {
    return `<p class="terminal-notice">No further refinement is possible.</p>`;
  }
  const max = Math.max(...entries.map((e) => e.count));
  const tags = entries
    .map((entry) => {
      const bucket = sizeBucket(entry.count, max);
      const label = escapeHtml(entry.tag);
      return (
        `<button class="tag size-${bucket}" data-tag="${label}">` +
        `${label}<span class="count">${entry.count}</span></button>`
      );
    })
    .join("\n");
  return `<div class="cloud">${tags}</div>`;
}

export function renderBreadcrumb(breadcrumb: string[]): string {
  const crumbs = [`<button class="crumb" data-index="0">All resources</button>`];
  breadcrumb.forEach((tag, i) => {
    const last = i === breadcrumb.length - 1;
    const label = escapeHtml(tag);
    crumbs.push(
      last
        ? `<span class="crumb current">${label}</span>`
        : `<button class="crumb" data-index="${i + 1}">${label}</button>`,
    );
  });
  return `<nav class="breadcrumb">${crumbs.join(`<span class="sep">&rsaquo;</span>`)}</nav>`;
}

export function renderResources(resources: string[]): string {
  if (resources.length === 0) {
    return `<p class="empty">No resources selected.</p>`;
  }
  const cards = resources
    .map(
      (id) =>
        `<div class="resource" data-resource="${escapeHtml(id)}">` +
        `<div class="thumb">no preview</div>` +
        `<div class="rid">${escapeHtml(id)}</div></div>`,
    )
    .join("\n");
  return `<div class="grid" data-count="${resources.length}">${cards}</div>`;
}

export function renderApp(state: ViewState): string {
  if (state.sessionId === null) {
    return `<div class="app"><p class="empty">Loading…</p></div>`;
  }
  const notice = state.notice
    ? `<div class="toast">${escapeHtml(state.notice)}</div>`
    : "";
  const pending = state.pending ? ` aria-busy="true"` : "";
  return (
    `<div class="app"${pending}>` +
    notice +
    renderBreadcrumb(state.breadcrumb) +
    `<section class="cloud-pane">${renderCloud(state.cloud)}</section>` +
    `<section class="result-pane">` +
    `<header>${state.resources.length} resource${state.resources.length === 1 ? "" : "s"}` +
    `<button id="reset">reset</button></header>` +
    renderResources(state.resources) +
    `</section></div>`
  );
}
