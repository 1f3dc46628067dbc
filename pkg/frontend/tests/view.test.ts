import { describe, expect, it } from "vitest";

import type { StatePayload } from "../src/types.js";
import { clickableIds, renderState } from "../src/view.js";

const BASE = "http://127.0.0.1:8031";

async function fetchFixture(name: "finite" | "asymptotic"): Promise<StatePayload> {
  const response = await fetch(`${BASE}/reset`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ fixture: name }),
  });
  expect(response.ok).toBe(true);
  return (await response.json()) as StatePayload;
}

describe("renderState on the finite scenario", () => {
  it("shows five clickable string arcs and two injective badges", async () => {
    const payload = await fetchFixture("finite");
    const scene = renderState(payload);
    const strings = scene.arcs.filter((a) => a.clickable && !a.inBase);
    expect(strings).toHaveLength(5);
    expect(scene.injectiveBadges.map((b) => b.vertex)).toEqual([3, 7]);
    expect(scene.gBadge.present).toBe(false);
    expect(scene.chips).toHaveLength(0);
    expect(scene.caseKind).toBe("finite");
  });

  it("disables undo on an empty history", async () => {
    const payload = await fetchFixture("finite");
    const scene = renderState(payload);
    expect(scene.historyLen).toBe(0);
    expect(scene.undoEnabled).toBe(false);
  });

  it("is a pure function of the payload", async () => {
    const payload = await fetchFixture("finite");
    const first = renderState(payload);
    const second = renderState(JSON.parse(JSON.stringify(payload)) as StatePayload);
    expect(second).toEqual(first);
  });
});

describe("renderState on the asymptotic scenario", () => {
  it("shows spiral glyphs, parameter chips and the generic badge", async () => {
    const payload = await fetchFixture("asymptotic");
    const scene = renderState(payload);
    const spirals = scene.arcs.filter((a) => a.spiral);
    expect(spirals.length).toBe(6);
    expect(scene.chips.map((c) => [c.label, c.side])).toEqual([
      ["λ1", "prufer"],
      ["λ2", "prufer"],
    ]);
    expect(scene.gBadge.present).toBe(true);
    expect(scene.gBadge.clickable).toBe(false);
    expect(scene.restBadge).toEqual({ present: true, side: "prufer" });
    expect(scene.injectiveBadges.map((b) => b.vertex)).toEqual([2]);
  });

  it("only exposes server-reported mutable points as clickable", async () => {
    const payload = await fetchFixture("asymptotic");
    const scene = renderState(payload);
    const ids = clickableIds(scene);
    const mutableIds = payload.state.points.filter((p) => p.mutable).map((p) => p.id);
    expect(new Set(ids)).toEqual(new Set(mutableIds));
    expect(ids).not.toContain("G");
  });

  it("replaying recorded states reproduces identical scenes", async () => {
    const initial = await fetchFixture("asymptotic");
    const recorded: StatePayload[] = [initial];
    const mutate = await fetch(`${BASE}/mutate`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ point: "p:λ1", revision: initial.revision }),
    });
    recorded.push((await mutate.json()) as StatePayload);
    const scenesOnce = recorded.map(renderState);
    const scenesTwice = recorded.map(renderState);
    expect(scenesTwice).toEqual(scenesOnce);
    expect(scenesOnce[1]!.chips.find((c) => c.label === "λ1")!.side).toBe("adic");
  });
});
