import type { ActionName, ActionResponse, Manifest, SessionCreated, ViewSnapshot } from "./types.js";

/** Error body the service returns with 4xx statuses. */
export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    public detail: string,
    public extras: Record<string, unknown> = {},
  ) {
    super(`${code}: ${detail}`);
  }
}

async function parseError(res: Response): Promise<never> {
  let code = "HttpError";
  let detail = `${res.status} ${res.statusText}`;
  let extras: Record<string, unknown> = {};
  try {
    const body = await res.json();
    if (typeof body.code === "string") {
      const { code: c, detail: d, ...rest } = body;
      code = c;
      detail = typeof d === "string" ? d : detail;
      extras = rest;
    } else if (body.detail !== undefined) {
      // fastapi validation errors land here
      code = "BadRequest";
      detail = JSON.stringify(body.detail);
    }
  } catch {
    // non-JSON body; keep the status line
  }
  throw new ApiError(res.status, code, detail, extras);
}

/** Thin fetch wrapper over the dialog service endpoints. */
export class DialogApi {
  constructor(private base: string) {
    this.base = base.replace(/\/+$/, "");
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await fetch(this.base + path, init);
    if (!res.ok) await parseError(res);
    return (await res.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  getManifest(): Promise<Manifest> {
    return this.request<Manifest>("/manifest");
  }

  createSession(mode?: string): Promise<SessionCreated> {
    return this.post<SessionCreated>("/sessions", mode ? { mode } : {});
  }

  getView(sid: string): Promise<ViewSnapshot> {
    return this.request<ViewSnapshot>(`/sessions/${encodeURIComponent(sid)}/view`);
  }

  act(sid: string, action: ActionName, arg?: unknown): Promise<ActionResponse> {
    const body: Record<string, unknown> = { action };
    if (arg !== undefined) body.arg = arg;
    return this.post<ActionResponse>(`/sessions/${encodeURIComponent(sid)}/actions`, body);
  }
}
