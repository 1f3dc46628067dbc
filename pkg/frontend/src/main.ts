// Browser entry: renders the scene as SVG and wires clicks to the session
// controller.  All state lives on the server; this file only draws.

import { ApiClient } from "./api.js";
import { SessionController } from "./session.js";
import type { Scene, SceneArc } from "./view.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function el(tag: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

function arcColor(arc: SceneArc): string {
  if (arc.inBase) return "#888888";
  if (arc.spiral) return "#7b2d8b";
  return "#1f6f43";
}

function drawScene(svg: SVGSVGElement, scene: Scene,
                   onClick: (id: string) => void): void {
  svg.innerHTML = "";
  svg.appendChild(el("path", { d: scene.core, stroke: "#cccccc",
                               "stroke-dasharray": "6 4", fill: "none" }));
  for (const arc of scene.arcs) {
    for (const d of arc.paths) {
      const path = el("path", {
        d,
        stroke: arcColor(arc),
        "stroke-width": arc.inBase ? "1.5" : "2.5",
        fill: "none",
        opacity: arc.inBase && !arc.clickable ? "0.45" : "1",
      });
      if (arc.clickable) {
        path.addEventListener("click", () => onClick(arc.id));
        path.setAttribute("cursor", "pointer");
      }
      svg.appendChild(path);
    }
  }
  for (const point of scene.markedPoints) {
    svg.appendChild(el("circle", {
      cx: String(point.x), cy: String(point.y), r: "4",
      fill: point.boundary === "outer" ? "#333333" : "#0a5a9c",
    }));
  }
}

function drawPanel(panel: HTMLElement, scene: Scene,
                   onClick: (id: string) => void, onUndo: () => void): void {
  panel.innerHTML = "";
  const info = document.createElement("div");
  info.textContent = `case: ${scene.caseKind}  revision: ${scene.revision}`;
  panel.appendChild(info);
  for (const badge of scene.injectiveBadges) {
    const button = document.createElement("button");
    button.textContent = `I(${badge.vertex})`;
    button.addEventListener("click", () => onClick(badge.id));
    panel.appendChild(button);
  }
  for (const chip of scene.chips) {
    const button = document.createElement("button");
    button.textContent = `${chip.label} [${chip.side}]`;
    button.addEventListener("click", () => onClick(chip.id));
    panel.appendChild(button);
  }
  if (scene.gBadge.present) {
    const badge = document.createElement("span");
    badge.textContent = " G ";
    badge.className = "generic-badge";
    panel.appendChild(badge);
  }
  if (scene.restBadge.present) {
    const rest = document.createElement("span");
    rest.textContent = ` rest:${scene.restBadge.side} `;
    panel.appendChild(rest);
  }
  const undo = document.createElement("button");
  undo.textContent = "undo";
  undo.disabled = !scene.undoEnabled;
  undo.addEventListener("click", onUndo);
  panel.appendChild(undo);
}

export async function boot(baseUrl: string): Promise<void> {
  const svg = document.getElementById("strip") as unknown as SVGSVGElement;
  const panel = document.getElementById("panel") as HTMLElement;
  const session = new SessionController(new ApiClient(baseUrl));

  const refresh = (scene: Scene) => {
    drawScene(svg, scene, (id) => void handle(id));
    drawPanel(panel, scene, (id) => void handle(id), () => void undo());
  };
  const handle = async (id: string) => {
    refresh(await session.clickPoint(id));
  };
  const undo = async () => {
    refresh(await session.clickUndo());
  };
  refresh(await session.load());
}
