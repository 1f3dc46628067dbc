// Session controller: forwards clicks to the server and re-renders from the
// response.  No optimistic updates; one mutation in flight at a time, gated
// on the revision counter the server echoes back.

import type { ApiClient } from "./api.js";
import { isApiError, type StatePayload } from "./types.js";
import { clickableIds, renderState, type Scene } from "./view.js";

export interface Toast {
  kind: "immutable" | "conflict" | "error";
  message: string;
}

export class SessionController {
  private payload: StatePayload | null = null;
  private inFlight = false;
  readonly toasts: Toast[] = [];

  constructor(private readonly api: ApiClient) {}

  get scene(): Scene {
    if (this.payload === null) {
      throw new Error("session not loaded");
    }
    return renderState(this.payload);
  }

  get revision(): number {
    if (this.payload === null) {
      throw new Error("session not loaded");
    }
    return this.payload.revision;
  }

  get busy(): boolean {
    return this.inFlight;
  }

  async load(fixture?: string): Promise<Scene> {
    this.payload = fixture
      ? await this.api.reset({ fixture })
      : await this.api.getState();
    return this.scene;
  }

  /** Click a rendered element; only server-reported mutable points mutate. */
  async clickPoint(id: string): Promise<Scene> {
    if (this.payload === null) {
      throw new Error("session not loaded");
    }
    if (this.inFlight) {
      return this.scene;
    }
    if (!clickableIds(this.scene).includes(id)) {
      this.toasts.push({ kind: "immutable", message: `${id} is not mutable` });
      return this.scene;
    }
    this.inFlight = true;
    try {
      this.payload = await this.api.mutate(id, this.payload.revision);
    } catch (error) {
      this.recordError(error);
    } finally {
      this.inFlight = false;
    }
    return this.scene;
  }

  /** Send a raw point id without the client-side mutability filter. */
  async forcePoint(id: string): Promise<Scene> {
    if (this.payload === null) {
      throw new Error("session not loaded");
    }
    this.inFlight = true;
    try {
      this.payload = await this.api.mutate(id, this.payload.revision);
    } catch (error) {
      this.recordError(error);
    } finally {
      this.inFlight = false;
    }
    return this.scene;
  }

  async clickUndo(): Promise<Scene> {
    if (this.payload === null) {
      throw new Error("session not loaded");
    }
    if (this.inFlight || !this.scene.undoEnabled) {
      return this.scene;
    }
    this.inFlight = true;
    try {
      this.payload = await this.api.undo(this.payload.revision);
    } catch (error) {
      this.recordError(error);
    } finally {
      this.inFlight = false;
    }
    return this.scene;
  }

  private recordError(error: unknown): void {
    if (isApiError(error)) {
      if (error.payload["error"] === "immutable") {
        this.toasts.push({
          kind: "immutable",
          message: `point ${String(error.payload["point"])} is immutable`,
        });
        return;
      }
      if (error.status === 409) {
        this.toasts.push({ kind: "conflict", message: "state changed; reload" });
        return;
      }
      this.toasts.push({ kind: "error", message: JSON.stringify(error.payload) });
      return;
    }
    throw error;
  }
}
