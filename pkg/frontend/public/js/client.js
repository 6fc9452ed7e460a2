/** Error body the service returns with 4xx statuses. */
export class ApiError extends Error {
    status;
    code;
    detail;
    extras;
    constructor(status, code, detail, extras = {}) {
        super(`${code}: ${detail}`);
        this.status = status;
        this.code = code;
        this.detail = detail;
        this.extras = extras;
    }
}
async function parseError(res) {
    let code = "HttpError";
    let detail = `${res.status} ${res.statusText}`;
    let extras = {};
    try {
        const body = await res.json();
        if (typeof body.code === "string") {
            const { code: c, detail: d, ...rest } = body;
            code = c;
            detail = typeof d === "string" ? d : detail;
            extras = rest;
        }
        else if (body.detail !== undefined) {
            // fastapi validation errors land here
            code = "BadRequest";
            detail = JSON.stringify(body.detail);
        }
    }
    catch {
        // non-JSON body; keep the status line
    }
    throw new ApiError(res.status, code, detail, extras);
}
/** Thin fetch wrapper over the dialog service endpoints. */
export class DialogApi {
    base;
    constructor(base) {
        this.base = base;
        this.base = base.replace(/\/+$/, "");
    }
    async request(path, init) {
        const res = await fetch(this.base + path, init);
        if (!res.ok)
            await parseError(res);
        return (await res.json());
    }
    post(path, body) {
        return this.request(path, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(body),
        });
    }
    getManifest() {
        return this.request("/manifest");
    }
    createSession(mode) {
        return this.post("/sessions", mode ? { mode } : {});
    }
    getView(sid) {
        return this.request(`/sessions/${encodeURIComponent(sid)}/view`);
    }
    act(sid, action, arg) {
        const body = { action };
        if (arg !== undefined)
            body.arg = arg;
        return this.post(`/sessions/${encodeURIComponent(sid)}/actions`, body);
    }
}
