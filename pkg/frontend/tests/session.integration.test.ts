// Scripted browser session against the real backend. The suite boots the
// Python service on sampledata, walks a learning session through the DOM
// the way a user would, and checks the rendered report against the
// server's own numbers.

import { ChildProcess, spawn } from "node:child_process";
import { cpSync, mkdtempSync, rmSync } from "node:fs";
import { connect, createServer } from "node:net";
import { tmpdir } from "node:os";
import { join, resolve } from "node:path";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiError, QuizApi } from "../src/api.js";
import { SessionController } from "../src/session.js";
import {
  readResponse,
  renderFeedback,
  renderQuestion,
  renderReport,
  renderReviewPane,
  setReviewControl,
} from "../src/view.js";

// vitest runs with the package root as cwd; the backend lives one level up
const repoRoot = resolve(process.cwd(), "..");

let server: ChildProcess;
let dataDir: string;
let api: QuizApi;

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const probe = createServer();
    probe.once("error", reject);
    probe.listen(0, "127.0.0.1", () => {
      const address = probe.address();
      if (address === null || typeof address === "string") {
        reject(new Error("no port assigned"));
        return;
      }
      probe.close(() => resolve(address.port));
    });
  });
}

function tcpProbe(port: number): Promise<boolean> {
  return new Promise((resolve) => {
    const socket = connect({ port, host: "127.0.0.1" }, () => {
      socket.destroy();
      resolve(true);
    });
    socket.once("error", () => resolve(false));
  });
}

async function waitForServer(port: number): Promise<void> {
  const deadline = Date.now() + 20000;
  while (!(await tcpProbe(port))) {
    if (Date.now() > deadline) throw new Error("backend did not come up");
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
}

beforeAll(async () => {
  dataDir = mkdtempSync(join(tmpdir(), "quiz-ui-"));
  cpSync(join(repoRoot, "sampledata", "ontologies"), join(dataDir, "ontologies"), { recursive: true });
  cpSync(join(repoRoot, "sampledata", "banks"), join(dataDir, "banks"), { recursive: true });

  const port = await freePort();
  const base = `http://127.0.0.1:${port}`;
  server = spawn("python3", ["-m", "ontoquiz.cli", "serve", "--data-dir", dataDir, "--port", String(port)],
    { cwd: repoRoot, stdio: "ignore" });
  await waitForServer(port);
  api = new QuizApi(base);
});

afterAll(() => {
  server?.kill();
  rmSync(dataDir, { recursive: true, force: true });
});

// Answer through the rendered inputs, like a user clicking around: True
// for true/false, the first option for single answer, the first box for
// multi answer, and the identity assignment for mapping.
function fillAnswer(form: HTMLElement): void {
  const radio = form.querySelector<HTMLInputElement>("input[type=radio]");
  if (radio) {
    radio.checked = true;
    return;
  }
  const box = form.querySelector<HTMLInputElement>("input[type=checkbox]");
  if (box) {
    box.checked = true;
    return;
  }
  const selects = form.querySelectorAll<HTMLSelectElement>("select");
  selects.forEach((select, index) => {
    select.value = String(index);
  });
}

describe("learning session", () => {
  it("answers all five questions, reviews a concept, and renders the server's report", async () => {
    const banks = await api.listBanks();
    const demo = banks.find((bank) => bank.bank_ref === "graphics_demo");
    expect(demo?.questions).toBe(5);

    const session = await SessionController.start(api, "graphics_demo", "learning", 42);
    expect(session.total).toBe(5);
    expect(session.reviewAllowed).toBe(true);

    const form = document.createElement("form");
    const feedbackBox = document.createElement("div");
    let lastDci = "";
    let steps = 0;
    while (session.current) {
      const current = session.current;
      lastDci = current.dci;
      renderQuestion(form, current);
      expect(form.querySelector("[data-testid=stem]")?.textContent).toBe(current.stem);
      fillAnswer(form);
      const response = readResponse(form, current);
      expect(response).not.toBeNull();
      const feedback = await session.answer(response!);
      renderFeedback(feedbackBox, feedback);
      expect("correct" in feedback).toBe(true);
      if ("correct" in feedback) {
        expect(feedback.dci).toBe(current.dci);
      }
      expect(feedbackBox.querySelector("[data-testid=feedback]")).not.toBeNull();
      steps += 1;
    }
    expect(steps).toBe(5);
    expect(session.answered).toBe(5);

    // review pane, while the session is still active
    const pane = document.createElement("aside");
    const view = await session.review(lastDci);
    renderReviewPane(pane, view);
    expect(pane.querySelector("[data-testid=review-title]")?.textContent).toBe(`Concept ${lastDci}`);
    expect(pane.querySelectorAll("section[data-chunk]").length).toBeGreaterThan(0);
    expect(pane.querySelector("[data-testid=materials]")?.textContent).not.toBe("");

    const payload = await session.finish();
    const reportBox = document.createElement("div");
    renderReport(reportBox, payload);

    // completing again returns the stored result: the server's numbers,
    // fetched independently of what the controller kept in memory
    const authoritative = await api.complete(session.info.id);
    expect(reportBox.querySelector("[data-testid=total]")?.textContent)
      .toBe(String(authoritative.report.total));
    expect(reportBox.querySelector("[data-testid=ceiling]")?.textContent)
      .toBe(authoritative.report.ceiling);
    expect(reportBox.querySelector("[data-testid=passed]")?.textContent)
      .toBe(authoritative.report.passed ? "passed" : "not passed");
    for (const [dci, score] of Object.entries(authoritative.report.group_scores)) {
      const cell = reportBox.querySelector(`tr[data-dci='${dci}'] [data-testid=group-score]`);
      expect(cell?.textContent).toBe(String(score));
    }
    const failedItems = Array.from(
      reportBox.querySelectorAll("[data-testid=failed] li"),
      (item) => item.textContent,
    );
    expect(failedItems).toEqual(authoritative.report.failed_dcis);

    // the session is sealed now, so the review control goes dark
    expect(session.reviewAllowed).toBe(false);
    const button = document.createElement("button");
    setReviewControl(button, session.reviewAllowed);
    expect(button.disabled).toBe(true);
  });
});

describe("exam session", () => {
  it("disables the review pane and keeps correctness hidden", async () => {
    const session = await SessionController.start(api, "graphics_demo", "exam", 42);
    expect(session.reviewAllowed).toBe(false);

    const button = document.createElement("button");
    setReviewControl(button, session.reviewAllowed);
    expect(button.disabled).toBe(true);

    // the controller refuses locally...
    await expect(session.review("1.1")).rejects.toThrow("not available");

    // ...and the server refuses even a direct call
    const refusal = await api.reviewConcept(session.info.id, "1.1").catch((e: unknown) => e);
    expect(refusal).toBeInstanceOf(ApiError);
    expect((refusal as ApiError).status).toBe(403);
    expect((refusal as ApiError).code).toBe("ModeForbidden");

    const form = document.createElement("form");
    const current = session.current!;
    renderQuestion(form, current);
    fillAnswer(form);
    const feedback = await session.answer(readResponse(form, current)!);
    expect(feedback).toEqual({ acknowledged: true });
    const feedbackBox = document.createElement("div");
    renderFeedback(feedbackBox, feedback);
    expect(feedbackBox.textContent).not.toContain("orrect");
  });
});
