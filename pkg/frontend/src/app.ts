// DOM wiring for the login form. All state lives in LoginApp so tests can
// instantiate it against a happy-dom document with a spied fetch.

import { FetchLike, requestChallenge, submitLogin, submitLogout } from "./api.js";
import {
  ChallengePayload,
  GridViewModel,
  buildViewModel,
  countdownSeconds,
  digitsOnly,
  loginRequestBody,
} from "./gridview.js";

const COUNTDOWN_TICK_MS = 500;

type BannerKind = "error" | "warning" | "info";

export class LoginApp {
  private vm: GridViewModel | null = null;
  private pending = false;
  private session: string | null = null;
  private timer: ReturnType<typeof setInterval> | null = null;

  constructor(
    private doc: Document,
    private baseUrl = "",
    private fetchImpl: FetchLike = fetch,
  ) {}

  // -- element lookups ----------------------------------------------

  private el<T extends HTMLElement>(id: string): T {
    const found = this.doc.getElementById(id);
    if (!found) throw new Error(`missing #${id} in page`);
    return found as T;
  }

  get challengeId(): string | null {
    return this.vm ? this.vm.challengeId : null;
  }

  get isPending(): boolean {
    return this.pending;
  }

  // -- lifecycle ------------------------------------------------------

  async start(): Promise<void> {
    const digitsInput = this.el<HTMLInputElement>("digits");
    digitsInput.addEventListener("input", () => {
      // block anything that is not a digit, as typed
      digitsInput.value = digitsOnly(digitsInput.value);
    });
    this.el<HTMLFormElement>("login-form").addEventListener("submit", (event) => {
      event.preventDefault();
      void this.onSubmit();
    });
    this.el<HTMLButtonElement>("cancel-btn").addEventListener("click", () => {
      void this.onCancel();
    });
    this.el<HTMLButtonElement>("logout-btn").addEventListener("click", () => {
      void this.onLogout();
    });
    await this.refreshChallenge();
  }

  async refreshChallenge(): Promise<void> {
    try {
      const payload = await requestChallenge(this.baseUrl, this.fetchImpl);
      this.clearBanner();
      this.renderChallenge(payload);
    } catch (err) {
      this.showBanner("error", `Could not fetch a challenge: ${String(err)}`, true);
    }
  }

  renderChallenge(payload: ChallengePayload): void {
    const vm = buildViewModel(payload);
    this.vm = vm;
    const gridEl = this.el<HTMLDivElement>("grid");
    gridEl.textContent = "";
    for (const row of vm.rows) {
      const rowEl = this.doc.createElement("div");
      rowEl.className = "grid-row";
      for (const cell of row) {
        const cellEl = this.doc.createElement("span");
        cellEl.className = "cell";
        cellEl.setAttribute("data-ch", cell.ch);
        const chEl = this.doc.createElement("span");
        chEl.className = "cell-ch";
        chEl.textContent = cell.ch;
        const codeEl = this.doc.createElement("span");
        codeEl.className = "cell-code";
        codeEl.textContent = String(cell.code);
        cellEl.append(chEl, codeEl);
        rowEl.append(cellEl);
      }
      gridEl.append(rowEl);
    }
    if (vm.integrityWarning) {
      this.showBanner("warning", `Grid integrity check failed: ${vm.integrityWarning}`);
    }
    this.startCountdown();
  }

  private startCountdown(): void {
    this.stopCountdown();
    this.updateCountdown();
    this.timer = setInterval(() => this.updateCountdown(), COUNTDOWN_TICK_MS);
  }

  private stopCountdown(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }

  private updateCountdown(): void {
    if (!this.vm) return;
    const remaining = countdownSeconds(this.vm.expiresAt, Date.now());
    this.el("countdown").textContent = `Grid expires in ${remaining}s`;
    if (remaining <= 0) {
      // a dead grid is useless; fetch a fresh one immediately
      this.stopCountdown();
      void this.refreshChallenge();
    }
  }

  // -- actions ----------------------------------------------------------

  async onSubmit(): Promise<void> {
    if (this.pending || !this.vm) return;
    const digits = this.el<HTMLInputElement>("digits").value;
    if (digits.length === 0) {
      this.showBanner("info", "Type the digits shown under your password characters.");
      return;
    }
    const username = this.el<HTMLInputElement>("username").value.trim();
    const body = loginRequestBody(this.vm.challengeId, digits, username || undefined);
    this.pending = true;
    this.el<HTMLButtonElement>("login-btn").disabled = true;
    try {
      const result = await submitLogin(body, this.baseUrl, this.fetchImpl);
      if (result.kind === "success") {
        this.session = result.session;
        this.stopCountdown();
        this.showSessionView();
        return;
      }
      if (result.kind === "throttled") {
        this.showBanner("error", "Too many attempts; wait a minute and try again.");
        return;
      }
      // uniform failure wording; the reason code is not surfaced verbatim
      this.showBanner("error", "Login failed. A new grid has been issued — try again.");
      this.el<HTMLInputElement>("digits").value = "";
      if (result.nextChallenge) {
        this.renderChallenge(result.nextChallenge);
      } else {
        await this.refreshChallenge();
      }
    } catch (err) {
      this.showBanner("error", `Network problem: ${String(err)}`, true);
    } finally {
      this.pending = false;
      this.el<HTMLButtonElement>("login-btn").disabled = false;
    }
  }

  async onCancel(): Promise<void> {
    // clear the typed digits and start over with a fresh grid
    this.el<HTMLInputElement>("digits").value = "";
    await this.refreshChallenge();
  }

  async onLogout(): Promise<void> {
    if (this.session) {
      await submitLogout(this.session, this.baseUrl, this.fetchImpl);
      this.session = null;
    }
    this.el("session-view").hidden = true;
    this.el("login-form").hidden = false;
    await this.refreshChallenge();
  }

  // -- presentation ------------------------------------------------------

  private showSessionView(): void {
    this.clearBanner();
    this.el("login-form").hidden = true;
    const view = this.el("session-view");
    view.hidden = false;
  }

  private showBanner(kind: BannerKind, message: string, retry = false): void {
    const banner = this.el<HTMLDivElement>("banner");
    banner.hidden = false;
    banner.className = `banner banner--${kind}`;
    banner.textContent = message;
    if (retry) {
      const button = this.doc.createElement("button");
      button.type = "button";
      button.textContent = "Retry";
      button.addEventListener("click", () => void this.refreshChallenge());
      banner.append(" ");
      banner.append(button);
    }
  }

  private clearBanner(): void {
    const banner = this.el<HTMLDivElement>("banner");
    banner.hidden = true;
    banner.textContent = "";
  }
}
