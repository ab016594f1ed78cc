/** DOM rendering. Every number shown is taken verbatim from a service
 * snapshot; the client does no probability math of its own. */
import type { SessionBody, Snapshot } from "./types";

export interface ChatMessage {
  role: "system" | "user";
  text: string;
}

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderMessages(container: HTMLElement, messages: ChatMessage[]): void {
  const doc = container.ownerDocument;
  container.replaceChildren();
  for (const message of messages) {
    const row = el(doc, "div", `message ${message.role}`);
    row.appendChild(el(doc, "span", "bubble", message.text));
    container.appendChild(row);
  }
}

export function renderBeliefPanel(container: HTMLElement, snapshot: Snapshot): void {
  const doc = container.ownerDocument;
  container.replaceChildren();
  container.appendChild(
    el(doc, "div", "panel-title",
       `Belief — ${snapshot.support_size} goals, ${snapshot.entropy.toFixed(3)} bits`),
  );
  for (const goal of snapshot.top_goals) {
    const row = el(doc, "div", "belief-row");
    row.dataset.goalId = String(goal.goal_id);
    row.appendChild(el(doc, "span", "label", goal.label));
    const bar = el(doc, "span", "bar");
    bar.style.width = `${(goal.probability * 100).toFixed(2)}%`;
    row.appendChild(bar);
    row.appendChild(el(doc, "span", "value", goal.probability.toFixed(4)));
    container.appendChild(row);
  }
}

export function renderEntropyPanel(container: HTMLElement, snapshot: Snapshot): void {
  const doc = container.ownerDocument;
  container.replaceChildren();
  container.appendChild(el(doc, "div", "panel-title", "Attribute entropies"));
  const max = Math.max(...snapshot.attribute_entropies.map((a) => a.entropy), 1e-12);
  for (const attr of snapshot.attribute_entropies) {
    const row = el(doc, "div", "entropy-row");
    row.dataset.attribute = String(attr.attribute);
    if (snapshot.asked.includes(attr.attribute)) row.classList.add("asked");
    row.appendChild(el(doc, "span", "label", attr.name));
    const bar = el(doc, "span", "bar");
    bar.style.width = `${((attr.entropy / max) * 100).toFixed(2)}%`;
    row.appendChild(bar);
    row.appendChild(el(doc, "span", "value", attr.entropy.toFixed(3)));
    container.appendChild(row);
  }
}

export function renderResultCard(container: HTMLElement, body: SessionBody): void {
  const doc = container.ownerDocument;
  container.replaceChildren();
  if (!body.finished || body.result === null) return;
  const card = el(doc, "div", `result-card status-${body.result.status}`);
  const heading =
    body.result.returned_goals.length === 0
      ? "No goal matches your answers"
      : body.result.returned_goals.length === 1
        ? "Found it"
        : `Narrowed to ${body.result.returned_goals.length} goals`;
  card.appendChild(el(doc, "div", "result-heading", heading));
  card.appendChild(el(doc, "div", "result-status", body.result.status));
  const list = el(doc, "ul", "result-goals");
  for (const goal of body.result.returned_goals) {
    const item = el(doc, "li", "result-goal", goal.label);
    item.dataset.goalId = String(goal.goal_id);
    list.appendChild(item);
  }
  card.appendChild(list);
  container.appendChild(card);
}

export function renderErrorBanner(container: HTMLElement, message: string | null): void {
  const doc = container.ownerDocument;
  container.replaceChildren();
  if (message === null) return;
  container.appendChild(el(doc, "div", "error-banner", message));
}
