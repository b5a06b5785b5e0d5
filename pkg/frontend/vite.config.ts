/// <reference types="vitest" />
import { defineConfig } from "vite";

// The dev server proxies API calls to a locally running game service:
//   cannibal serve --port 8000
export default defineConfig({
  server: {
    proxy: {
      "/v1": "http://127.0.0.1:8000",
    },
  },
  preview: {
    proxy: {
      "/v1": "http://127.0.0.1:8000",
    },
  },
  build: {
    outDir: "dist",
  },
  test: {
    environment: "node",
  },
});
