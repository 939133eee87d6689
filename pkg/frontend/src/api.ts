// Typed client for the quiz session service. Everything the UI knows
// about the backend goes through this file.

export type Mode = "learning" | "exam";
export type OrderPolicy = "shuffle" | "difficulty";
export type QuestionType = "TF" | "SA" | "MA" | "Mapping";

export interface PublicQuestion {
  id: string;
  dci: string;
  qtype: QuestionType;
  competence: string;
  difficulty: "I" | "II" | "III";
  stem: string;
  options: string[];
  weight: number;
}

export type Response = boolean | number | number[];

export interface SessionInfo {
  id: string;
  bank_ref: string;
  mode: Mode;
  state: string;
  created_at: string;
  total: number;
}

export interface NextPayload {
  question: PublicQuestion | null;
  answered: number;
  total: number;
  state: string;
}

export interface LearningFeedback {
  correct: boolean;
  dci: string;
}

export interface ExamAck {
  acknowledged: true;
}

export interface AttributeView {
  name: string;
  value: string;
  unit?: string;
}

export interface ObjectView {
  id: string;
  category: string;
  label: string;
  attributes: AttributeView[];
}

export interface MaterialView {
  chunk_id: string;
  content_kind: string;
  content_ref: string;
  discipline_id: string;
}

export interface ChunkView {
  chunk_id: string;
  label: string;
  objects: ObjectView[];
  materials: MaterialView[];
}

export interface ConceptView {
  dci: string;
  chunks: ChunkView[];
}

export interface Report {
  group_scores: Record<string, number>;
  total: number;
  failed_dcis: string[];
  passed: boolean;
  ceiling: "Fail" | "Satisfactory" | "Good" | "Excellent";
}

export interface RecommendationView {
  discipline_id: string;
  chunk_id: string;
  label: string;
  content: MaterialView[];
  reason: string;
  rank: number;
  no_materials: boolean;
}

export interface CompletionPayload {
  report: Report;
  recommendations: RecommendationView[];
}

export interface CompletionOptions {
  pass_mark?: number;
  entry_thresholds?: Record<string, number>;
  unanswered_penalty?: boolean;
  deep?: boolean;
}

export interface BankSummary {
  bank_ref: string;
  discipline_id: string;
  questions: number;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    public readonly detail: string,
  ) {
    super(`${code}: ${detail}`);
    this.name = "ApiError";
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<globalThis.Response>;

export class QuizApi {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, init);
    const body = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, body.error ?? "Unknown", body.detail ?? "");
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  async listBanks(): Promise<BankSummary[]> {
    const payload = await this.request<{ banks: BankSummary[] }>("/banks");
    return payload.banks;
  }

  createSession(bankRef: string, mode: Mode, seed: number, order?: OrderPolicy): Promise<SessionInfo> {
    const body: Record<string, unknown> = { bank_ref: bankRef, mode, seed };
    if (order) body.order = order;
    return this.post<SessionInfo>("/sessions", body);
  }

  nextQuestion(sessionId: string): Promise<NextPayload> {
    return this.request<NextPayload>(`/sessions/${sessionId}/next`);
  }

  submitAnswer(sessionId: string, questionId: string, response: Response): Promise<LearningFeedback | ExamAck> {
    return this.post<LearningFeedback | ExamAck>(`/sessions/${sessionId}/answers`, {
      question_id: questionId,
      response,
    });
  }

  reviewConcept(sessionId: string, dci: string): Promise<ConceptView> {
    return this.request<ConceptView>(`/sessions/${sessionId}/concepts/${encodeURIComponent(dci)}`);
  }

  complete(sessionId: string, options: CompletionOptions = {}): Promise<CompletionPayload> {
    return this.post<CompletionPayload>(`/sessions/${sessionId}/complete`, options);
  }
}

// Left/right halves of a mapping question's option list. The first half
// names the rows, the second half holds the values to assign.
export function mappingColumns(question: PublicQuestion): { left: string[]; right: string[] } {
  const half = question.options.length / 2;
  return { left: question.options.slice(0, half), right: question.options.slice(half) };
}
