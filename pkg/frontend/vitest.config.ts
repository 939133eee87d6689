import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "happy-dom",
    environmentOptions: {
      happyDOM: {
        // the integration suite talks to a local backend on a random port
        settings: { fetch: { disableSameOriginPolicy: true } },
      },
    },
    testTimeout: 30000,
    hookTimeout: 30000,
  },
});
