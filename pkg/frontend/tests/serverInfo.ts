// Shared between the global setup (which starts the seeded test server) and
// the end-to-end tests that talk to it.

export const E2E_PORT = 8943;
export const E2E_BASE_URL = `http://127.0.0.1:${E2E_PORT}`;
export const SEEDED_PASSWORD = "Lagos(2006)";
