// Drives one test session against the service: fetch a question, submit
// an answer, repeat, then complete. Holds no DOM knowledge.

import {
  CompletionOptions,
  CompletionPayload,
  ConceptView,
  ExamAck,
  LearningFeedback,
  Mode,
  OrderPolicy,
  PublicQuestion,
  QuizApi,
  Response,
  SessionInfo,
} from "./api.js";

export class SessionController {
  current: PublicQuestion | null = null;
  answered = 0;
  total = 0;
  completion: CompletionPayload | null = null;

  private constructor(
    private readonly api: QuizApi,
    readonly info: SessionInfo,
  ) {
    this.total = info.total;
  }

  static async start(
    api: QuizApi,
    bankRef: string,
    mode: Mode,
    seed: number,
    order?: OrderPolicy,
  ): Promise<SessionController> {
    const info = await api.createSession(bankRef, mode, seed, order);
    const controller = new SessionController(api, info);
    await controller.advance();
    return controller;
  }

  get mode(): Mode {
    return this.info.mode;
  }

  get finished(): boolean {
    return this.completion !== null;
  }

  // Review is a learning-mode feature on a running session; the button
  // in the UI mirrors this flag.
  get reviewAllowed(): boolean {
    return this.info.mode === "learning" && !this.finished;
  }

  async advance(): Promise<PublicQuestion | null> {
    const payload = await this.api.nextQuestion(this.info.id);
    this.current = payload.question;
    this.answered = payload.answered;
    this.total = payload.total;
    return this.current;
  }

  async answer(response: Response): Promise<LearningFeedback | ExamAck> {
    if (!this.current) {
      throw new Error("no question to answer");
    }
    const feedback = await this.api.submitAnswer(this.info.id, this.current.id, response);
    await this.advance();
    return feedback;
  }

  review(dci: string): Promise<ConceptView> {
    if (!this.reviewAllowed) {
      return Promise.reject(new Error("review is not available in this session"));
    }
    return this.api.reviewConcept(this.info.id, dci);
  }

  async finish(options: CompletionOptions = {}): Promise<CompletionPayload> {
    this.completion = await this.api.complete(this.info.id, options);
    return this.completion;
  }
}
