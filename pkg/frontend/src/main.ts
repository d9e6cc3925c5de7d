// Browser entry point: boot the app against the page it was served from.

import { LoginApp } from "./app.js";

new LoginApp(document).start().catch((err) => {
  console.error("login app failed to start", err);
});
