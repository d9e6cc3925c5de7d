// Thin typed client for the authentication service. Every function accepts
// an injectable fetch so tests can spy on exactly what goes over the wire.

import { ChallengePayload, LoginRequestBody, validatePayload } from "./gridview.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export interface LoginSuccess {
  ok: true;
  session: string;
}

export interface LoginFailure {
  ok: false;
  reason: string;
  next_challenge?: ChallengePayload;
}

export type LoginResult =
  | { kind: "success"; session: string }
  | { kind: "failure"; reason: string; nextChallenge: ChallengePayload | null }
  | { kind: "throttled" };

export async function requestChallenge(
  baseUrl = "",
  fetchImpl: FetchLike = fetch,
): Promise<ChallengePayload> {
  const resp = await fetchImpl(`${baseUrl}/api/challenge`, { method: "POST" });
  if (!resp.ok) {
    throw new Error(`challenge request failed: HTTP ${resp.status}`);
  }
  return validatePayload(await resp.json());
}

export async function submitLogin(
  body: LoginRequestBody,
  baseUrl = "",
  fetchImpl: FetchLike = fetch,
): Promise<LoginResult> {
  const resp = await fetchImpl(`${baseUrl}/api/login`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  if (resp.status === 429) return { kind: "throttled" };
  const data = (await resp.json()) as LoginSuccess | LoginFailure;
  if (resp.ok && data.ok) {
    return { kind: "success", session: data.session };
  }
  const failure = data as LoginFailure;
  let next: ChallengePayload | null = null;
  if (failure.next_challenge) {
    next = validatePayload(failure.next_challenge);
  }
  return { kind: "failure", reason: failure.reason ?? "unknown", nextChallenge: next };
}

export async function submitLogout(
  session: string,
  baseUrl = "",
  fetchImpl: FetchLike = fetch,
): Promise<void> {
  await fetchImpl(`${baseUrl}/api/logout`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ session }),
  });
}
