import type { ApiError, ArcDoc, StatePayload } from "./types.js";

async function asJson(response: Response): Promise<StatePayload> {
  const payload = (await response.json()) as Record<string, unknown>;
  if (!response.ok) {
    const error: ApiError = { status: response.status, payload };
    throw error;
  }
  return payload as unknown as StatePayload;
}

/** Thin typed client for the session endpoints; no caching, no retries. */
export class ApiClient {
  constructor(private readonly baseUrl: string) {}

  async getState(): Promise<StatePayload> {
    return asJson(await fetch(`${this.baseUrl}/state`));
  }

  async mutate(pointId: string, revision?: number): Promise<StatePayload> {
    return asJson(
      await fetch(`${this.baseUrl}/mutate`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ point: pointId, revision }),
      }),
    );
  }

  async flipArc(arc: ArcDoc, revision?: number): Promise<StatePayload> {
    return asJson(
      await fetch(`${this.baseUrl}/flip`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ arc, revision }),
      }),
    );
  }

  async undo(revision?: number): Promise<StatePayload> {
    return asJson(
      await fetch(`${this.baseUrl}/undo`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ revision }),
      }),
    );
  }

  async reset(body: { fixture?: string; tuple?: unknown }): Promise<StatePayload> {
    return asJson(
      await fetch(`${this.baseUrl}/reset`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(body),
      }),
    );
  }

  async graph(depth: number): Promise<unknown> {
    const response = await fetch(`${this.baseUrl}/graph?depth=${depth}`);
    return response.json();
  }
}
