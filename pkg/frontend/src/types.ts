// Wire types mirroring the session service payloads.

export type BoundarySide = "outer" | "inner";

export interface BridgingArc {
  kind: "bridging";
  outer: number;
  inner: number;
  winding: number;
}

export interface PeripheralArc {
  kind: "peripheral";
  boundary: BoundarySide;
  start: number;
  span: number;
}

export interface AsymptoticArc {
  kind: "asymptotic";
  boundary: BoundarySide;
  index: number;
  spiral: "cw" | "ccw";
}

export type ArcDoc = BridgingArc | PeripheralArc | AsymptoticArc;

export interface PointView {
  id: string;
  kind: string;
  mutable: boolean;
  arc?: ArcDoc;
  vertex?: number;
  label?: string;
}

export interface TupleState {
  annulus: { outer: number; inner: number };
  C: ArcDoc[];
  P: string[];
  A: string[];
  star: "G" | "noG";
  rest_side: "prufer" | "adic";
  labels: string[];
  gamma: ArcDoc[];
  case: "finite" | "asymptotic";
  points: PointView[];
  injectives: number[];
  history_len: number;
}

export interface StatePayload {
  revision: number;
  state: TupleState;
}

export interface ApiError {
  status: number;
  payload: Record<string, unknown>;
}

export function isApiError(value: unknown): value is ApiError {
  return (
    typeof value === "object" &&
    value !== null &&
    "status" in value &&
    "payload" in value
  );
}
