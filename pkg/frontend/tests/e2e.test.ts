/** Live end-to-end walkthrough against a running server.
 *
 * Skipped unless SERVER_URL points at a tagbrowse server, e.g.
 *   tagbrowse serve --collection fixtures/fig1.json --port 8000 &
 *   SERVER_URL=http://127.0.0.1:8000 npm test
 */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { HttpTransport } from "../src/api.js";
import { BrowseController } from "../src/state.js";
import { loadWalkthrough } from "./mock_transport.js";

const SERVER_URL = process.env.SERVER_URL;
const here = dirname(fileURLToPath(import.meta.url));

describe.skipIf(!SERVER_URL)("live server walkthrough", () => {
  it("matches the recorded payloads step for step", async () => {
    const doc = JSON.parse(
      readFileSync(join(here, "..", "..", "fixtures", "fig1.json"), "utf-8"),
    );
    const created = await fetch(`${SERVER_URL}/collections`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(doc),
    });
    expect(created.status).toBe(201);
    const { collection_id } = await created.json();

    const controller = new BrowseController(new HttpTransport(SERVER_URL));
    const steps = loadWalkthrough();
    for (const step of steps) {
      if (step.action === "open") await controller.open(collection_id);
      else if (step.action === "select") await controller.selectTag(step.tag!);
      else if (step.action === "back") await controller.back();
      else if (step.action === "reset") await controller.reset();
      expect(controller.view.breadcrumb).toEqual(step.payload.breadcrumb);
      expect(controller.view.resources).toEqual(step.payload.resources);
      expect(controller.view.cloud).toEqual(step.payload.cloud);
      expect(controller.view.terminal).toBe(step.payload.terminal);
    }
  });
});
