import type {
  CreateGameBody,
  GameJson,
  HintJson,
  MoveBody,
  ReplayJson,
} from "./types";

/** Structured failure from the service: HTTP status plus the reason tag
 * the engine attached (CellOccupied, OverlapsOccupied, NotYourTurn, ...). */
export class ServiceError extends Error {
  constructor(
    public status: number,
    public reason: string,
    message: string,
  ) {
    super(message);
    this.name = "ServiceError";
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  let resp: Response;
  try {
    resp = await fetch(path, init);
  } catch (err) {
    throw new ServiceError(0, "Network", String(err));
  }
  if (path.endsWith("/record") && resp.ok) {
    return (await resp.text()) as unknown as T;
  }
  const body = await resp.json().catch(() => null);
  if (!resp.ok) {
    const detail = body?.detail;
    if (detail && typeof detail === "object") {
      throw new ServiceError(resp.status, detail.reason ?? "Error", detail.message ?? "");
    }
    throw new ServiceError(resp.status, "Error", typeof detail === "string" ? detail : resp.statusText);
  }
  return body as T;
}

function post(body: unknown): RequestInit {
  return {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
  };
}

export const api = {
  createGame: (body: CreateGameBody) => request<GameJson>("/v1/games", post(body)),
  getGame: (id: string) => request<GameJson>(`/v1/games/${id}`),
  postMove: (id: string, move: MoveBody) =>
    request<GameJson>(`/v1/games/${id}/moves`, post(move)),
  getRecord: (id: string) => request<string>(`/v1/games/${id}/record`),
  getHint: (id: string) => request<HintJson>(`/v1/games/${id}/hint`),
  replay: (record: string) => request<ReplayJson>("/v1/replay", post({ record })),
};
