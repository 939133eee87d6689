// DOM rendering for the quiz screens. All data lands in the page via
// textContent, never markup.

import {
  CompletionPayload,
  ConceptView,
  ExamAck,
  LearningFeedback,
  PublicQuestion,
  Response,
  mappingColumns,
} from "./api.js";

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  text?: string,
  testId?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (text !== undefined) node.textContent = text;
  if (testId) node.setAttribute("data-testid", testId);
  return node;
}

function clear(container: HTMLElement): Document {
  container.textContent = "";
  return container.ownerDocument;
}

export function renderProgress(container: HTMLElement, answered: number, total: number): void {
  const doc = clear(container);
  container.appendChild(el(doc, "span", `${answered} of ${total} answered`, "progress"));
}

export function renderQuestion(container: HTMLElement, question: PublicQuestion): void {
  const doc = clear(container);
  container.appendChild(el(doc, "p", question.stem, "stem"));
  const meta = `${question.qtype} · difficulty ${question.difficulty} · ${question.weight} pt`;
  container.appendChild(el(doc, "p", meta, "question-meta"));

  if (question.qtype === "TF") {
    for (const value of ["true", "false"]) {
      const label = el(doc, "label", value === "true" ? "True" : "False");
      const input = el(doc, "input");
      input.type = "radio";
      input.name = "response";
      input.value = value;
      label.prepend(input);
      container.appendChild(label);
    }
    return;
  }

  if (question.qtype === "SA" || question.qtype === "MA") {
    question.options.forEach((option, index) => {
      const label = el(doc, "label", option);
      const input = el(doc, "input");
      input.type = question.qtype === "SA" ? "radio" : "checkbox";
      input.name = "response";
      input.value = String(index);
      label.prepend(input);
      container.appendChild(label);
    });
    return;
  }

  const { left, right } = mappingColumns(question);
  left.forEach((rowLabel, rowIndex) => {
    const row = el(doc, "div");
    row.setAttribute("data-row", String(rowIndex));
    row.appendChild(el(doc, "span", rowLabel));
    const select = el(doc, "select");
    select.name = "response";
    const placeholder = el(doc, "option", "choose...");
    placeholder.value = "";
    select.appendChild(placeholder);
    right.forEach((value, valueIndex) => {
      const option = el(doc, "option", value);
      option.value = String(valueIndex);
      select.appendChild(option);
    });
    row.appendChild(select);
    container.appendChild(row);
  });
}

// Pull the response out of the rendered inputs; null means incomplete
// (nothing picked, or a mapping that is not a permutation yet).
export function readResponse(container: HTMLElement, question: PublicQuestion): Response | null {
  if (question.qtype === "TF") {
    const checked = container.querySelector<HTMLInputElement>("input[name=response]:checked");
    return checked ? checked.value === "true" : null;
  }
  if (question.qtype === "SA") {
    const checked = container.querySelector<HTMLInputElement>("input[name=response]:checked");
    return checked ? Number(checked.value) : null;
  }
  if (question.qtype === "MA") {
    const checked = container.querySelectorAll<HTMLInputElement>("input[name=response]:checked");
    if (checked.length === 0) return null;
    return Array.from(checked, (input) => Number(input.value));
  }
  const selects = container.querySelectorAll<HTMLSelectElement>("select[name=response]");
  const picks: number[] = [];
  for (const select of Array.from(selects)) {
    if (select.value === "") return null;
    picks.push(Number(select.value));
  }
  return new Set(picks).size === picks.length ? picks : null;
}

export function renderFeedback(container: HTMLElement, feedback: LearningFeedback | ExamAck): void {
  const doc = clear(container);
  if ("acknowledged" in feedback) {
    container.appendChild(el(doc, "p", "Answer recorded.", "feedback"));
    return;
  }
  const note = feedback.correct ? "Correct." : `Wrong. Concept ${feedback.dci} needs another look.`;
  const node = el(doc, "p", note, "feedback");
  node.className = feedback.correct ? "correct" : "wrong";
  container.appendChild(node);
}

export function renderReviewPane(container: HTMLElement, view: ConceptView): void {
  const doc = clear(container);
  container.appendChild(el(doc, "h2", `Concept ${view.dci}`, "review-title"));
  for (const chunk of view.chunks) {
    const section = el(doc, "section");
    section.setAttribute("data-chunk", chunk.chunk_id);
    section.appendChild(el(doc, "h3", chunk.label));
    const objects = el(doc, "ul");
    for (const object of chunk.objects) {
      const item = el(doc, "li", `${object.label} (${object.category})`);
      const attrs = el(doc, "ul");
      for (const attribute of object.attributes) {
        const unit = attribute.unit ? ` ${attribute.unit}` : "";
        attrs.appendChild(el(doc, "li", `${attribute.name}: ${attribute.value}${unit}`));
      }
      item.appendChild(attrs);
      objects.appendChild(item);
    }
    section.appendChild(objects);
    const materials = el(doc, "ul");
    materials.setAttribute("data-testid", "materials");
    for (const material of chunk.materials) {
      materials.appendChild(el(doc, "li", `${material.content_kind}: ${material.content_ref}`));
    }
    section.appendChild(materials);
    container.appendChild(section);
  }
}

export function renderReport(container: HTMLElement, payload: CompletionPayload): void {
  const doc = clear(container);
  const { report } = payload;
  container.appendChild(el(doc, "h2", "Result"));
  container.appendChild(el(doc, "p", String(report.total), "total"));
  container.appendChild(el(doc, "p", report.passed ? "passed" : "not passed", "passed"));
  container.appendChild(el(doc, "p", report.ceiling, "ceiling"));

  const groups = el(doc, "table");
  groups.setAttribute("data-testid", "groups");
  for (const [dci, score] of Object.entries(report.group_scores)) {
    const row = el(doc, "tr");
    row.setAttribute("data-dci", dci);
    row.appendChild(el(doc, "td", dci));
    const cell = el(doc, "td", String(score));
    cell.setAttribute("data-testid", "group-score");
    row.appendChild(cell);
    groups.appendChild(row);
  }
  container.appendChild(groups);

  const failed = el(doc, "ul");
  failed.setAttribute("data-testid", "failed");
  for (const dci of report.failed_dcis) {
    failed.appendChild(el(doc, "li", dci));
  }
  container.appendChild(failed);

  if (payload.recommendations.length > 0) {
    container.appendChild(el(doc, "h3", "Where to go next"));
    const list = el(doc, "ol");
    list.setAttribute("data-testid", "recommendations");
    for (const rec of payload.recommendations) {
      const item = el(doc, "li", `${rec.label} (${rec.discipline_id}, concept ${rec.reason})`);
      item.setAttribute("data-chunk", rec.chunk_id);
      list.appendChild(item);
    }
    container.appendChild(list);
  }
}

export function setReviewControl(button: HTMLButtonElement, allowed: boolean): void {
  button.disabled = !allowed;
  button.title = allowed ? "Show the concepts behind this question" : "Review is not available in exam mode";
}
