/** End-to-end round trip against a live service process: start an EMDM
 * session on the four-goal demo catalog, answer two questions, and check
 * that the terminal card and panels reflect the service snapshots. */
import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { GoalsiftClient } from "../src/api";
import {
  renderBeliefPanel,
  renderEntropyPanel,
  renderResultCard,
} from "../src/view";
import type { SessionBody } from "../src/types";

const PORT = 8931;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

async function waitForHealth(client: GoalsiftClient): Promise<void> {
  const deadline = Date.now() + 30_000;
  for (;;) {
    try {
      const body = await client.health();
      if (body.status === "ok") return;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) throw new Error("service did not come up");
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
}

beforeAll(async () => {
  server = spawn(
    "python3",
    [
      "-c",
      "from goalsift.service import create_app; import uvicorn; " +
        `uvicorn.run(create_app(), host='127.0.0.1', port=${PORT}, log_level='warning')`,
    ],
    { stdio: "ignore" },
  );
  await waitForHealth(new GoalsiftClient(BASE));
});

afterAll(() => {
  server.kill();
});

describe("live EMDM session on the demo catalog", () => {
  it("resolves g3/g4 after two questions and renders the snapshots", async () => {
    const client = new GoalsiftClient(BASE);

    const opening = await client.createSession({ catalog: "f1", strategy: "emdm" });
    expect(opening.finished).toBe(false);
    expect(opening.question?.name).toBe("B");
    expect(opening.snapshot.support_size).toBe(4);

    // The client offers type-ahead from the fetched value list.
    const values = await client.attributeValues("f1", opening.question!.attribute);
    expect(values.values.sort()).toEqual(["p", "q", "r"]);

    const afterUnknown = await client.postAnswer(opening.session_id, {
      unknown: true,
    });
    expect(afterUnknown.finished).toBe(false);
    expect(afterUnknown.question?.name).toBe("A");
    expect(afterUnknown.snapshot.support_size).toBe(4);
    expect(afterUnknown.snapshot.asked).toContain(opening.question!.attribute);

    const final = await client.postAnswer(afterUnknown.session_id, { value: "y" });
    expect(final.finished).toBe(true);
    expect(final.result?.status).toBe("zero_entropy_set");
    expect(final.result?.returned_goals.map((g) => g.label).sort()).toEqual([
      "g3",
      "g4",
    ]);
    expect(final.snapshot.support_size).toBe(2);
    expect(final.snapshot.entropy).toBeCloseTo(1.0, 9);

    assertPanelsMatchSnapshot(final);

    const state = await client.getState(final.session_id);
    expect(state.finished).toBe(true);
    await client.deleteSession(final.session_id);
  }, 60_000);
});

function assertPanelsMatchSnapshot(body: SessionBody): void {
  const belief = document.createElement("div");
  renderBeliefPanel(belief, body.snapshot);
  const beliefValues = Array.from(belief.querySelectorAll(".belief-row .value")).map(
    (node) => node.textContent,
  );
  expect(beliefValues).toEqual(
    body.snapshot.top_goals.map((g) => g.probability.toFixed(4)),
  );

  const entropy = document.createElement("div");
  renderEntropyPanel(entropy, body.snapshot);
  const entropyValues = Array.from(
    entropy.querySelectorAll(".entropy-row .value"),
  ).map((node) => node.textContent);
  expect(entropyValues).toEqual(
    body.snapshot.attribute_entropies.map((a) => a.entropy.toFixed(3)),
  );
  for (const attr of body.snapshot.asked) {
    const row = entropy.querySelector(`[data-attribute="${attr}"]`);
    expect(row?.classList.contains("asked")).toBe(true);
  }

  const resultBox = document.createElement("div");
  renderResultCard(resultBox, body);
  const labels = Array.from(resultBox.querySelectorAll(".result-goal")).map(
    (node) => node.textContent,
  );
  expect(labels).toEqual(body.result!.returned_goals.map((g) => g.label));
}
