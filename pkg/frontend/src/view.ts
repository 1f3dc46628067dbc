// Pure view layer: a scene is a function of the last server state, nothing
// else.  Replaying a recorded sequence of states reproduces identical
// scenes, which the tests assert structurally.

import {
  arcPaths,
  corePath,
  makeLayout,
  markedPoints,
  type MarkedPointGlyph,
} from "./geometry.js";
import type { ArcDoc, StatePayload, TupleState } from "./types.js";

export interface SceneArc {
  id: string;            // point id for clickable arcs, "gamma:<i>" otherwise
  arc: ArcDoc;
  paths: string[];
  inBase: boolean;
  spiral: boolean;
  clickable: boolean;
}

export interface SceneChip {
  id: string;
  label: string;
  side: "prufer" | "adic";
  clickable: boolean;
}

export interface SceneBadge {
  id: string;
  vertex: number;
  clickable: boolean;
}

export interface Scene {
  revision: number;
  caseKind: "finite" | "asymptotic";
  core: string;
  markedPoints: MarkedPointGlyph[];
  arcs: SceneArc[];
  chips: SceneChip[];
  injectiveBadges: SceneBadge[];
  gBadge: { present: boolean; clickable: false };
  restBadge: { present: boolean; side: "prufer" | "adic" | null };
  undoEnabled: boolean;
  historyLen: number;
}

function arcKey(arc: ArcDoc): string {
  return JSON.stringify(arc, Object.keys(arc).sort());
}

function pointIdOfArc(state: TupleState, arc: ArcDoc): string | null {
  const key = arcKey(arc);
  for (const point of state.points) {
    if (point.arc && arcKey(point.arc) === key) {
      return point.id;
    }
  }
  return null;
}

export function renderState(payload: StatePayload): Scene {
  const state = payload.state;
  const { outer, inner } = state.annulus;
  const layout = makeLayout(outer, inner);
  const baseKeys = new Set(state.gamma.map(arcKey));
  const collectionKeys = new Set(state.C.map(arcKey));

  const arcs: SceneArc[] = [];
  state.C.forEach((arc, position) => {
    const inBase = baseKeys.has(arcKey(arc));
    const pointId = inBase ? null : pointIdOfArc(state, arc);
    arcs.push({
      id: pointId ?? `member:${position}`,
      arc,
      paths: arcPaths(arc, outer, inner, layout),
      inBase,
      spiral: arc.kind === "asymptotic",
      clickable: pointId !== null,
    });
  });
  // base arcs not in C are drawn faintly for orientation; never clickable
  state.gamma.forEach((arc, index) => {
    if (!collectionKeys.has(arcKey(arc))) {
      arcs.push({
        id: `gamma:${index + 1}`,
        arc,
        paths: arcPaths(arc, outer, inner, layout),
        inBase: true,
        spiral: false,
        clickable: false,
      });
    }
  });

  const chips: SceneChip[] = [];
  for (const point of state.points) {
    if (point.kind === "PruferPoint" && point.label) {
      chips.push({ id: point.id, label: point.label, side: "prufer", clickable: true });
    }
    if (point.kind === "AdicPoint" && point.label) {
      chips.push({ id: point.id, label: point.label, side: "adic", clickable: true });
    }
  }
  chips.sort((a, b) => a.label.localeCompare(b.label));

  const injectiveBadges: SceneBadge[] = state.points
    .filter((p) => p.kind === "ShiftedInjective" && p.vertex !== undefined)
    .map((p) => ({ id: p.id, vertex: p.vertex as number, clickable: true }))
    .sort((a, b) => a.vertex - b.vertex);

  const hasG = state.points.some((p) => p.kind === "GenericPoint");
  const rest = state.points.find((p) => p.kind === "RestBucketPoint");

  return {
    revision: payload.revision,
    caseKind: state.case,
    core: corePath(layout),
    markedPoints: markedPoints(layout, outer, inner),
    arcs,
    chips,
    injectiveBadges,
    gBadge: { present: hasG, clickable: false },
    restBadge: {
      present: rest !== undefined,
      side: rest ? (rest.id.endsWith("adic") ? "adic" : "prufer") : null,
    },
    undoEnabled: state.history_len > 0,
    historyLen: state.history_len,
  };
}

/** Ids of everything the scene allows to be clicked, in render order. */
export function clickableIds(scene: Scene): string[] {
  return [
    ...scene.arcs.filter((a) => a.clickable).map((a) => a.id),
    ...scene.injectiveBadges.map((b) => b.id),
    ...scene.chips.map((c) => c.id),
  ];
}
