// Browser entry point. Expects to be served from the same origin as the
// session service (for example behind one reverse proxy). Query
// parameters pick the bank and mode: ?bank=graphics_demo&mode=learning

import { QuizApi } from "./api.js";
import { SessionController } from "./session.js";
import {
  readResponse,
  renderFeedback,
  renderProgress,
  renderQuestion,
  renderReport,
  renderReviewPane,
  setReviewControl,
} from "./view.js";

async function boot(root: HTMLElement): Promise<void> {
  const doc = root.ownerDocument;
  const params = new URLSearchParams(doc.defaultView!.location.search);
  const bank = params.get("bank") ?? "graphics_demo";
  const mode = params.get("mode") === "exam" ? "exam" : "learning";
  const seed = Number(params.get("seed") ?? Date.now() % 100000);

  const progress = doc.createElement("div");
  const questionBox = doc.createElement("form");
  const feedbackBox = doc.createElement("div");
  const reviewPane = doc.createElement("aside");
  const reportBox = doc.createElement("div");
  const controls = doc.createElement("div");
  const submit = doc.createElement("button");
  submit.textContent = "Answer";
  const review = doc.createElement("button");
  review.textContent = "Review concept";
  review.setAttribute("data-testid", "review-button");
  const finish = doc.createElement("button");
  finish.textContent = "Finish";
  controls.append(submit, review, finish);
  root.append(progress, questionBox, controls, feedbackBox, reviewPane, reportBox);

  const api = new QuizApi("");
  const session = await SessionController.start(api, bank, mode, seed);
  setReviewControl(review, session.reviewAllowed);

  const refresh = () => {
    renderProgress(progress, session.answered, session.total);
    if (session.current) {
      renderQuestion(questionBox, session.current);
    } else {
      questionBox.textContent = "All questions answered.";
    }
  };
  refresh();

  submit.addEventListener("click", async (event) => {
    event.preventDefault();
    if (!session.current) return;
    const response = readResponse(questionBox, session.current);
    if (response === null) return;
    const feedback = await session.answer(response);
    renderFeedback(feedbackBox, feedback);
    refresh();
  });

  review.addEventListener("click", async (event) => {
    event.preventDefault();
    if (!session.reviewAllowed) return;
    const dci = session.current?.dci;
    if (!dci) return;
    renderReviewPane(reviewPane, await session.review(dci));
  });

  finish.addEventListener("click", async (event) => {
    event.preventDefault();
    renderReport(reportBox, await session.finish());
    setReviewControl(review, session.reviewAllowed);
  });
}

const root = document.getElementById("app");
if (root) {
  boot(root).catch((error) => {
    root.textContent = `Could not start the session: ${error}`;
  });
}
