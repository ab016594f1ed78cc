/** Session controller: one active dialog per tab, wired to the DOM ids in
 * index.html. */
import { ApiError, GoalsiftClient } from "./api";
import { suggest } from "./typeahead";
import type { SessionBody } from "./types";
import {
  ChatMessage,
  renderBeliefPanel,
  renderEntropyPanel,
  renderErrorBanner,
  renderMessages,
  renderResultCard,
} from "./view";

export interface AppElements {
  catalogSelect: HTMLSelectElement;
  strategySelect: HTMLSelectElement;
  startButton: HTMLButtonElement;
  chat: HTMLElement;
  answerInput: HTMLInputElement;
  suggestions: HTMLDataListElement;
  answerButton: HTMLButtonElement;
  unknownButton: HTMLButtonElement;
  belief: HTMLElement;
  entropy: HTMLElement;
  result: HTMLElement;
  error: HTMLElement;
}

export class App {
  private sessionId: string | null = null;
  private messages: ChatMessage[] = [];
  private values: string[] = [];

  constructor(
    private readonly client: GoalsiftClient,
    private readonly els: AppElements,
  ) {
    els.startButton.addEventListener("click", () => void this.start());
    els.answerButton.addEventListener("click", () => void this.answer());
    els.unknownButton.addEventListener("click", () => void this.answerUnknown());
    els.answerInput.addEventListener("input", () => this.refreshSuggestions());
    els.answerInput.addEventListener("keydown", (event) => {
      if (event.key === "Enter") void this.answer();
    });
  }

  async loadCatalogs(): Promise<void> {
    try {
      const { catalogs } = await this.client.listCatalogs();
      this.els.catalogSelect.replaceChildren();
      for (const cat of catalogs) {
        const option = this.els.catalogSelect.ownerDocument.createElement("option");
        option.value = cat.name;
        option.textContent = `${cat.name} (${cat.num_goals} goals)`;
        this.els.catalogSelect.appendChild(option);
      }
      renderErrorBanner(this.els.error, null);
    } catch (err) {
      this.showError(err, "Service unreachable — retry");
    }
  }

  async start(): Promise<void> {
    if (this.sessionId !== null) {
      await this.client.deleteSession(this.sessionId);
      this.sessionId = null;
    }
    this.messages = [];
    try {
      const body = await this.client.createSession({
        catalog: this.els.catalogSelect.value,
        strategy: this.els.strategySelect.value,
      });
      this.sessionId = body.session_id;
      await this.applyTurn(body);
    } catch (err) {
      this.showError(err, "Could not start a session");
    }
  }

  async answer(): Promise<void> {
    const text = this.els.answerInput.value.trim();
    if (this.sessionId === null || text === "") return;
    this.messages.push({ role: "user", text });
    this.els.answerInput.value = "";
    try {
      const body = await this.client.postAnswer(this.sessionId, { value: text });
      await this.applyTurn(body);
    } catch (err) {
      this.messages.pop();
      this.showError(err, "Answer rejected");
    }
  }

  async answerUnknown(): Promise<void> {
    if (this.sessionId === null) return;
    this.messages.push({ role: "user", text: "(don't know)" });
    try {
      const body = await this.client.postAnswer(this.sessionId, { unknown: true });
      await this.applyTurn(body);
    } catch (err) {
      this.messages.pop();
      this.showError(err, "Answer rejected");
    }
  }

  private async applyTurn(body: SessionBody): Promise<void> {
    renderErrorBanner(this.els.error, null);
    if (body.question !== null) {
      this.messages.push({ role: "system", text: body.question.text });
      const { values } = await this.client.attributeValues(
        body.catalog,
        body.question.attribute,
      );
      this.values = values;
    } else {
      this.values = [];
    }
    this.refreshSuggestions();
    renderMessages(this.els.chat, this.messages);
    renderBeliefPanel(this.els.belief, body.snapshot);
    renderEntropyPanel(this.els.entropy, body.snapshot);
    renderResultCard(this.els.result, body);
    if (body.finished) this.sessionId = null;
  }

  private refreshSuggestions(): void {
    const doc = this.els.suggestions.ownerDocument;
    this.els.suggestions.replaceChildren();
    for (const value of suggest(this.values, this.els.answerInput.value)) {
      const option = doc.createElement("option");
      option.value = value;
      this.els.suggestions.appendChild(option);
    }
  }

  private showError(err: unknown, fallback: string): void {
    const message = err instanceof ApiError ? err.detail : fallback;
    renderErrorBanner(this.els.error, message);
    renderMessages(this.els.chat, this.messages);
  }
}

export function mount(doc: Document, baseUrl: string): App {
  const byId = <T extends HTMLElement>(id: string): T => {
    const node = doc.getElementById(id);
    if (node === null) throw new Error(`missing element #${id}`);
    return node as T;
  };
  const app = new App(new GoalsiftClient(baseUrl), {
    catalogSelect: byId<HTMLSelectElement>("catalog"),
    strategySelect: byId<HTMLSelectElement>("strategy"),
    startButton: byId<HTMLButtonElement>("start"),
    chat: byId("chat"),
    answerInput: byId<HTMLInputElement>("answer"),
    suggestions: byId<HTMLDataListElement>("suggestions"),
    answerButton: byId<HTMLButtonElement>("send"),
    unknownButton: byId<HTMLButtonElement>("unknown"),
    belief: byId("belief"),
    entropy: byId("entropy"),
    result: byId("result"),
    error: byId("error"),
  });
  void app.loadCatalogs();
  return app;
}
