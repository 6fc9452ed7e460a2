import { ApiError, DialogApi } from "./client.js";
import type { Manifest, ViewSnapshot, VocabularyListing, WidgetAttrs } from "./types.js";

const FALLBACK_WIDGETS: Record<string, WidgetAttrs> = {
  oot_input: { label: "Out-of-turn input", placeholder: "Type a word or phrase", tooltip: "" },
  vocab_button: { label: "What may I say?", placeholder: "", tooltip: "" },
  collect_button: { label: "Collect results", placeholder: "", tooltip: "" },
  restructure_picker: { label: "Reorganize by facet", placeholder: "", tooltip: "" },
};

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text) node.textContent = text;
  return node;
}

/**
 * Single-page dialog client. The server is the only source of truth: every
 * interaction posts an action and re-renders from the returned snapshot, and
 * a control only exists in the DOM when the manifest enables its action.
 */
export class DialogApp {
  private sid = "";
  private view: ViewSnapshot | null = null;
  private busy = false;

  private banner: HTMLElement;
  private breadcrumb: HTMLElement;
  private childList: HTMLUListElement;
  private docList: HTMLUListElement;
  private resultsBox: HTMLElement;
  private statusLine: HTMLElement;
  private consumedBox: HTMLElement;
  private resetButton: HTMLButtonElement;

  private ootInput: HTMLInputElement | null = null;
  private ootSubmit: HTMLButtonElement | null = null;
  private vocabButton: HTMLButtonElement | null = null;
  private vocabListing: HTMLElement | null = null;
  private collectButton: HTMLButtonElement | null = null;
  private restructureBox: HTMLElement | null = null;
  private facetOrder: string[] = [];

  constructor(
    private root: HTMLElement,
    private api: DialogApi,
    private manifest: Manifest,
  ) {
    root.textContent = "";
    root.classList.add("dlgen-app");

    const header = el("header");
    header.append(el("h1", { "data-role": "title" }, manifest.title));
    header.append(el("span", { "data-role": "mode-badge" }, manifest.mode));
    root.append(header);

    this.banner = el("div", { "data-role": "error-banner", hidden: "" });
    root.append(this.banner);

    if (this.ootEnabled()) this.buildToolbar();

    this.breadcrumb = el("nav", { "data-role": "breadcrumb" });
    root.append(this.breadcrumb);

    const tree = el("section", { "data-role": "tree" });
    this.childList = el("ul", { "data-role": "children" });
    this.docList = el("ul", { "data-role": "documents" });
    tree.append(this.childList, this.docList);
    root.append(tree);

    if (this.enabled("what_may_i_say")) this.buildVocabPanel();
    if (this.enabled("collect")) this.buildCollectControl();
    if (this.enabled("restructure") && manifest.facet_schema.length > 0) {
      this.buildRestructurePicker();
    }

    this.resultsBox = el("section", { "data-role": "results", hidden: "" });
    root.append(this.resultsBox);

    const footer = el("footer");
    this.statusLine = el("span", { "data-role": "status" });
    this.consumedBox = el("span", { "data-role": "consumed" });
    this.resetButton = el("button", { "data-role": "reset-button" }, "Start over");
    this.resetButton.addEventListener("click", () => void this.run("reset"));
    footer.append(this.statusLine, this.consumedBox, this.resetButton);
    root.append(footer);
  }

  async start(): Promise<void> {
    const created = await this.api.createSession();
    this.sid = created.session_id;
    this.render(created.view);
  }

  get sessionId(): string {
    return this.sid;
  }

  private enabled(technique: string): boolean {
    return this.manifest.enabled_actions.includes(technique);
  }

  private ootEnabled(): boolean {
    return this.enabled("basic_oot") || this.enabled("generalized_oot");
  }

  private widget(id: string): WidgetAttrs {
    return this.manifest.widgets[id] ?? FALLBACK_WIDGETS[id]!;
  }

  private buildToolbar(): void {
    const w = this.widget("oot_input");
    const bar = el("section", { "data-role": "toolbar" });
    bar.append(el("label", {}, w.label));
    this.ootInput = el("input", {
      "data-role": "oot-input",
      type: "text",
      placeholder: w.placeholder,
      title: w.tooltip,
    });
    this.ootInput.addEventListener("keydown", (e) => {
      if (e.key === "Enter") void this.submitUtterance(this.ootInput!.value);
    });
    this.ootSubmit = el("button", { "data-role": "oot-submit" }, "Say");
    this.ootSubmit.addEventListener("click", () => void this.submitUtterance(this.ootInput!.value));
    bar.append(this.ootInput, this.ootSubmit);
    this.root.append(bar);
  }

  private buildVocabPanel(): void {
    const w = this.widget("vocab_button");
    const panel = el("aside", { "data-role": "vocab-panel" });
    this.vocabButton = el("button", { "data-role": "vocab-button", title: w.tooltip }, w.label);
    this.vocabButton.addEventListener("click", () => void this.run("vocabulary"));
    this.vocabListing = el("div", { "data-role": "vocab-listing", hidden: "" });
    panel.append(this.vocabButton, this.vocabListing);
    this.root.append(panel);
  }

  private buildCollectControl(): void {
    const w = this.widget("collect_button");
    const box = el("section", { "data-role": "collect" });
    this.collectButton = el("button", { "data-role": "collect-button", title: w.tooltip }, w.label);
    this.collectButton.addEventListener("click", () => void this.run("collect"));
    box.append(this.collectButton);
    this.root.append(box);
  }

  private buildRestructurePicker(): void {
    const w = this.widget("restructure_picker");
    this.restructureBox = el("section", { "data-role": "restructure" });
    this.restructureBox.append(el("label", {}, w.label));
    const chips = el("div", { "data-role": "facet-chips" });
    for (const name of this.manifest.facet_schema) {
      const chip = el("button", { "data-role": "facet-chip", "data-facet": name }, name);
      chip.addEventListener("click", () => {
        // clicking facets in sequence builds the new top-to-bottom order
        if (!this.facetOrder.includes(name)) {
          this.facetOrder.push(name);
          this.renderFacetOrder();
        }
      });
      chips.append(chip);
    }
    const order = el("ol", { "data-role": "facet-order" });
    const apply = el("button", { "data-role": "restructure-apply", title: w.tooltip }, "Rebuild");
    apply.addEventListener("click", () => {
      if (this.facetOrder.length > 0) void this.run("restructure", [...this.facetOrder]);
    });
    const clear = el("button", { "data-role": "restructure-clear" }, "Clear");
    clear.addEventListener("click", () => {
      this.facetOrder = [];
      this.renderFacetOrder();
    });
    this.restructureBox.append(chips, order, apply, clear);
    this.root.append(this.restructureBox);
  }

  private renderFacetOrder(): void {
    const list = this.restructureBox?.querySelector('[data-role="facet-order"]');
    if (!list) return;
    list.textContent = "";
    for (const name of this.facetOrder) list.append(el("li", {}, name));
  }

  /** Out-of-turn submit; vocabulary clicks land here too so clicking an
   * entry and typing it produce the same request. */
  async submitUtterance(text: string): Promise<void> {
    if (text.trim() === "") return;
    await this.run("out_of_turn", text);
  }

  private async run(action: "navigate" | "out_of_turn" | "vocabulary" | "collect" | "restructure" | "reset", arg?: unknown): Promise<void> {
    if (this.busy || !this.sid) return;
    this.busy = true;
    this.applyBusyState();
    try {
      const res = await this.api.act(this.sid, action, arg);
      this.hideBanner();
      if (action === "out_of_turn" && this.ootInput) this.ootInput.value = "";
      if (action === "reset") this.facetOrder = [];
      this.render(res.view);
      if (res.vocabulary) this.renderVocabulary(res.vocabulary);
    } catch (err) {
      // rejected input never touches the rendered tree
      if (err instanceof ApiError) {
        this.showBanner(`${err.code}: ${err.detail}`);
      } else {
        this.showBanner(String(err));
      }
    } finally {
      this.busy = false;
      this.applyBusyState();
    }
  }

  private render(view: ViewSnapshot): void {
    this.view = view;

    this.breadcrumb.textContent = "";
    this.breadcrumb.append(el("span", { "data-role": "crumb" }, "⌂"));
    for (const part of view.focus) {
      this.breadcrumb.append(el("span", { "data-role": "crumb" }, part));
    }

    this.childList.textContent = "";
    for (const child of view.children) {
      const li = el("li");
      const link = el("a", { "data-role": "child-link", href: "#" },
        `${child.label} (${child.purview})`);
      link.addEventListener("click", (e) => {
        e.preventDefault();
        void this.run("navigate", child.label);
      });
      li.append(link);
      this.childList.append(li);
    }

    this.docList.textContent = "";
    for (const doc of view.documents) {
      const li = el("li");
      li.append(el("a", { "data-role": "doc-link", href: doc.uri }, doc.title));
      this.docList.append(li);
    }

    this.resultsBox.textContent = "";
    if (view.status === "terminated" && view.results) {
      this.resultsBox.removeAttribute("hidden");
      this.resultsBox.append(el("h2", {}, `Results (${view.results.length})`));
      const list = el("ol", { "data-role": "result-list" });
      for (const doc of view.results) {
        const li = el("li");
        li.append(el("a", { "data-role": "result-link", href: doc.uri }, doc.title));
        list.append(li);
      }
      this.resultsBox.append(list);
    } else {
      this.resultsBox.setAttribute("hidden", "");
    }

    this.statusLine.textContent = `${view.status} · ${view.remaining} remaining`;
    this.consumedBox.textContent = view.consumed.length
      ? "said: " + view.consumed.map((c) => c.token).join(", ")
      : "";

    // stale after any tree change; the button fetches a fresh listing
    if (this.vocabListing) {
      this.vocabListing.textContent = "";
      this.vocabListing.setAttribute("hidden", "");
    }
    this.applyBusyState();
  }

  private renderVocabulary(vocab: VocabularyListing): void {
    if (!this.vocabListing) return;
    this.vocabListing.textContent = "";
    this.vocabListing.removeAttribute("hidden");

    const labels = el("section", { "data-role": "vocab-labels" });
    labels.append(el("h3", {}, "Categories"));
    for (const [label, count] of vocab.labels) {
      labels.append(this.vocabEntry(label, count));
    }
    this.vocabListing.append(labels);

    if (this.manifest.mode === "generalized") {
      const terms = el("section", { "data-role": "vocab-terms" });
      terms.append(el("h3", {}, "Terms"));
      for (const [term, count] of vocab.terms) {
        terms.append(this.vocabEntry(term, count));
      }
      this.vocabListing.append(terms);
    }
  }

  private vocabEntry(text: string, count: number): HTMLElement {
    const a = el("a", { "data-role": "vocab-entry", href: "#" }, `${text} (${count})`);
    a.addEventListener("click", (e) => {
      e.preventDefault();
      void this.submitUtterance(text);
    });
    return a;
  }

  private showBanner(message: string): void {
    this.banner.textContent = message;
    this.banner.removeAttribute("hidden");
  }

  private hideBanner(): void {
    this.banner.textContent = "";
    this.banner.setAttribute("hidden", "");
  }

  private applyBusyState(): void {
    const terminated = this.view?.status === "terminated";
    const off = this.busy || terminated;
    if (this.ootInput) this.ootInput.disabled = off;
    if (this.ootSubmit) this.ootSubmit.disabled = off;
    if (this.vocabButton) this.vocabButton.disabled = off;
    if (this.collectButton) this.collectButton.disabled = off;
    if (this.restructureBox) {
      for (const b of this.restructureBox.querySelectorAll("button")) b.disabled = off;
    }
    this.resetButton.disabled = this.busy;
  }
}
