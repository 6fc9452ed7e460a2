/** Poll until `check` stops throwing (or returns true), for async DOM updates. */
export async function waitFor(check: () => unknown, timeoutMs = 5000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  let lastErr: unknown = new Error("condition never became true");
  while (Date.now() < deadline) {
    try {
      const result = check();
      if (result !== false) return;
      lastErr = new Error("check returned false");
    } catch (err) {
      lastErr = err;
    }
    await new Promise((r) => setTimeout(r, 25));
  }
  throw lastErr;
}

export function childLabels(root: HTMLElement): string[] {
  return [...root.querySelectorAll('[data-role="child-link"]')].map(
    (a) => a.textContent ?? "",
  );
}

export function roles(root: HTMLElement, role: string): HTMLElement[] {
  return [...root.querySelectorAll(`[data-role="${role}"]`)] as HTMLElement[];
}
