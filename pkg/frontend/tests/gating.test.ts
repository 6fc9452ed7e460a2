import { afterEach, describe, expect, it, vi } from "vitest";
import { DialogApp } from "../src/app.js";
import { DialogApi } from "../src/client.js";
import type { Manifest, ViewSnapshot } from "../src/types.js";
import { roles, waitFor } from "./helpers.js";

const WIDGETS = {
  oot_input: { label: "Out-of-turn input", placeholder: "Type a word", tooltip: "t1" },
  vocab_button: { label: "What may I say?", placeholder: "", tooltip: "t2" },
  collect_button: { label: "Collect results", placeholder: "", tooltip: "t3" },
  restructure_picker: { label: "Reorganize", placeholder: "", tooltip: "t4" },
};

function manifest(enabled: string[], facets: string[] = ["category", "author"]): Manifest {
  return {
    enabled_actions: enabled,
    facet_schema: facets,
    format_version: "1",
    mode: enabled.includes("generalized_oot") ? "generalized" : "basic",
    title: "Test Browser",
    widgets: WIDGETS,
  };
}

const INITIAL_VIEW: ViewSnapshot = {
  focus: [],
  children: [
    { label: "Hardware", purview: 1 },
    { label: "Information Systems", purview: 2 },
    { label: "Theory", purview: 1 },
  ],
  documents: [],
  status: "active",
  mode: "generalized",
  consumed: [],
  remaining: 4,
  results: null,
};

interface Recorded {
  url: string;
  body: unknown;
}

/** fetch stub answering the service contract with canned payloads. */
function stubFetch(responder: (url: string, body: unknown) => unknown) {
  const calls: Recorded[] = [];
  vi.stubGlobal("fetch", async (url: string, init?: RequestInit) => {
    const body = init?.body ? JSON.parse(init.body as string) : null;
    calls.push({ url, body });
    const payload = responder(url, body);
    const status =
      payload && typeof payload === "object" && "code" in (payload as object) ? 422 : 200;
    return new Response(JSON.stringify(payload), {
      status,
      headers: { "content-type": "application/json" },
    });
  });
  return calls;
}

function defaultResponder(url: string, body: unknown): unknown {
  if (url.endsWith("/sessions")) return { session_id: "s1", view: INITIAL_VIEW };
  const action = (body as { action?: string })?.action;
  if (action === "vocabulary") {
    return {
      view: INITIAL_VIEW,
      vocabulary: { labels: [["Hardware", 1]], terms: [["cache", 1]] },
    };
  }
  return { view: INITIAL_VIEW };
}

async function mount(m: Manifest, responder = defaultResponder) {
  const calls = stubFetch(responder);
  const root = document.createElement("div");
  document.body.append(root);
  const app = new DialogApp(root, new DialogApi("http://svc.test"), m);
  await app.start();
  return { root, app, calls };
}

afterEach(() => {
  vi.unstubAllGlobals();
  document.body.textContent = "";
});

describe("manifest gating", () => {
  it("renders every control under the full manifest", async () => {
    const { root } = await mount(
      manifest(["generalized_oot", "what_may_i_say", "collect", "restructure"]),
    );
    expect(roles(root, "oot-input")).toHaveLength(1);
    expect(roles(root, "vocab-button")).toHaveLength(1);
    expect(roles(root, "collect-button")).toHaveLength(1);
    expect(roles(root, "restructure")).toHaveLength(1);
    expect(roles(root, "reset-button")).toHaveLength(1);
  });

  it("omits disabled controls from the DOM entirely", async () => {
    const { root } = await mount(manifest(["basic_oot", "collect"]));
    expect(roles(root, "oot-input")).toHaveLength(1);
    expect(roles(root, "collect-button")).toHaveLength(1);
    expect(roles(root, "vocab-button")).toHaveLength(0);
    expect(roles(root, "vocab-panel")).toHaveLength(0);
    expect(roles(root, "restructure")).toHaveLength(0);
    expect(roles(root, "restructure-apply")).toHaveLength(0);
  });

  it("omits the restructure picker when the collection has no facets", async () => {
    const { root } = await mount(
      manifest(["generalized_oot", "restructure"], []),
    );
    expect(roles(root, "restructure")).toHaveLength(0);
  });

  it("navigation links and reset are present even with a minimal manifest", async () => {
    const { root } = await mount(manifest(["collect"]));
    expect(roles(root, "child-link").length).toBeGreaterThan(0);
    expect(roles(root, "reset-button")).toHaveLength(1);
    expect(roles(root, "oot-input")).toHaveLength(0);
  });
});

describe("rendering", () => {
  it("shows one link per child with the purview verbatim", async () => {
    const { root } = await mount(manifest(["generalized_oot"]));
    const labels = roles(root, "child-link").map((a) => a.textContent);
    expect(labels).toEqual(["Hardware (1)", "Information Systems (2)", "Theory (1)"]);
  });

  it("applies widget labels, placeholders, and tooltips from the manifest", async () => {
    const { root } = await mount(
      manifest(["generalized_oot", "what_may_i_say", "collect"]),
    );
    const input = roles(root, "oot-input")[0] as HTMLInputElement;
    expect(input.placeholder).toBe("Type a word");
    expect(input.title).toBe("t1");
    expect(roles(root, "vocab-button")[0]!.textContent).toBe("What may I say?");
    expect(roles(root, "collect-button")[0]!.textContent).toBe("Collect results");
  });

  it("renders the result list prominently when terminated", async () => {
    const terminated: ViewSnapshot = {
      ...INITIAL_VIEW,
      status: "terminated",
      children: [],
      results: [
        { id: "d2", title: "IR Models", uri: "urn:x:d2" },
        { id: "d3", title: "Hypertext Browsing", uri: "urn:x:d3" },
      ],
    };
    const { root } = await mount(
      manifest(["generalized_oot", "collect"]),
      (url) =>
        url.endsWith("/sessions")
          ? { session_id: "s1", view: terminated }
          : { view: terminated },
    );
    const resultsBox = roles(root, "results")[0]!;
    expect(resultsBox.hasAttribute("hidden")).toBe(false);
    const titles = roles(root, "result-link").map((a) => a.textContent);
    expect(titles).toEqual(["IR Models", "Hypertext Browsing"]);
  });
});

describe("out-of-turn input", () => {
  it("sends the typed text verbatim as the action arg", async () => {
    const { root, calls } = await mount(manifest(["generalized_oot"]));
    const input = roles(root, "oot-input")[0] as HTMLInputElement;
    input.value = "Information Retrieval";
    roles(root, "oot-submit")[0]!.click();
    await waitFor(() => calls.some((c) => (c.body as any)?.action === "out_of_turn"));
    const sent = calls.find((c) => (c.body as any)?.action === "out_of_turn")!;
    expect(sent.body).toEqual({ action: "out_of_turn", arg: "Information Retrieval" });
  });

  it("treats an empty utterance as a client-side no-op", async () => {
    const { root, calls } = await mount(manifest(["generalized_oot"]));
    const before = calls.length;
    const input = roles(root, "oot-input")[0] as HTMLInputElement;
    input.value = "   ";
    roles(root, "oot-submit")[0]!.click();
    await new Promise((r) => setTimeout(r, 50));
    expect(calls.length).toBe(before);
  });

  it("shows an inline banner on NoMatch and leaves the tree untouched", async () => {
    const { root } = await mount(manifest(["generalized_oot"]), (url, body) => {
      if (url.endsWith("/sessions")) return { session_id: "s1", view: INITIAL_VIEW };
      if ((body as any)?.action === "out_of_turn") {
        return { code: "NoMatch", detail: "no remaining label or term matches", token: "xyzzy" };
      }
      return { view: INITIAL_VIEW };
    });
    const input = roles(root, "oot-input")[0] as HTMLInputElement;
    input.value = "xyzzy";
    roles(root, "oot-submit")[0]!.click();
    await waitFor(() => !roles(root, "error-banner")[0]!.hasAttribute("hidden"));
    expect(roles(root, "error-banner")[0]!.textContent).toContain("NoMatch");
    const labels = roles(root, "child-link").map((a) => a.textContent);
    expect(labels).toEqual(["Hardware (1)", "Information Systems (2)", "Theory (1)"]);
  });
});

describe("vocabulary panel", () => {
  it("clicking an entry posts the same body as typing it", async () => {
    const { root, calls } = await mount(
      manifest(["generalized_oot", "what_may_i_say"]),
    );
    roles(root, "vocab-button")[0]!.click();
    await waitFor(() => roles(root, "vocab-entry").length > 0);
    roles(root, "vocab-entry")[0]!.click();
    await waitFor(
      () => calls.filter((c) => (c.body as any)?.action === "out_of_turn").length === 1,
    );
    const clicked = calls.find((c) => (c.body as any)?.action === "out_of_turn")!;
    // wait out the in-flight guard before the typed submission
    await waitFor(() => !(roles(root, "oot-submit")[0] as HTMLButtonElement).disabled);

    const input = roles(root, "oot-input")[0] as HTMLInputElement;
    input.value = "Hardware";
    roles(root, "oot-submit")[0]!.click();
    await waitFor(
      () => calls.filter((c) => (c.body as any)?.action === "out_of_turn").length === 2,
    );
    const typed = calls.filter((c) => (c.body as any)?.action === "out_of_turn")[1]!;
    expect(clicked.body).toEqual(typed.body);
    expect(clicked.url).toBe(typed.url);
  });

  it("omits the terms section in basic mode", async () => {
    const { root } = await mount(
      manifest(["basic_oot", "what_may_i_say"]),
      (url, body) => {
        if (url.endsWith("/sessions")) return { session_id: "s1", view: INITIAL_VIEW };
        if ((body as any)?.action === "vocabulary") {
          return { view: INITIAL_VIEW, vocabulary: { labels: [["Hardware", 1]], terms: [] } };
        }
        return { view: INITIAL_VIEW };
      },
    );
    roles(root, "vocab-button")[0]!.click();
    await waitFor(() => roles(root, "vocab-entry").length > 0);
    expect(roles(root, "vocab-labels")).toHaveLength(1);
    expect(roles(root, "vocab-terms")).toHaveLength(0);
  });
});
