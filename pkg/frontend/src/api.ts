/** Thin typed client for the session service; every method returns the
 * service payload verbatim. */
import type {
  AnswerRequest,
  CatalogInfo,
  CreateSessionRequest,
  SessionBody,
} from "./types";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: string,
  ) {
    super(`${status}: ${detail}`);
  }
}

async function parseError(response: Response): Promise<never> {
  let detail = response.statusText;
  try {
    const body = (await response.json()) as { detail?: unknown };
    if (typeof body.detail === "string") detail = body.detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(response.status, detail);
}

export class GoalsiftClient {
  constructor(private readonly baseUrl: string) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(`${this.baseUrl}${path}`, {
      headers: { "Content-Type": "application/json" },
      ...init,
    });
    if (!response.ok) await parseError(response);
    return (await response.json()) as T;
  }

  health(): Promise<{ version: number; status: string; catalogs: string[] }> {
    return this.request("/health");
  }

  listCatalogs(): Promise<{ catalogs: CatalogInfo[] }> {
    return this.request("/catalogs");
  }

  attributeValues(
    catalog: string,
    attribute: number,
  ): Promise<{ values: string[] }> {
    return this.request(
      `/catalogs/${encodeURIComponent(catalog)}/attributes/${attribute}/values`,
    );
  }

  createSession(req: CreateSessionRequest): Promise<SessionBody> {
    return this.request("/sessions", {
      method: "POST",
      body: JSON.stringify(req),
    });
  }

  postAnswer(sessionId: string, answer: AnswerRequest): Promise<SessionBody> {
    return this.request(`/sessions/${sessionId}/answer`, {
      method: "POST",
      body: JSON.stringify(answer),
    });
  }

  getQuestion(sessionId: string): Promise<SessionBody> {
    return this.request(`/sessions/${sessionId}/question`);
  }

  getState(sessionId: string): Promise<SessionBody> {
    return this.request(`/sessions/${sessionId}/state`);
  }

  async deleteSession(sessionId: string): Promise<void> {
    const response = await fetch(`${this.baseUrl}/sessions/${sessionId}`, {
      method: "DELETE",
    });
    if (!response.ok && response.status !== 404) await parseError(response);
  }
}
