import { ChildProcess, spawn } from "node:child_process";
import { createServer } from "node:net";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import {
  arcLength,
  cellWidth,
  distance,
  planPolyline,
  Point,
} from "../src/geometry.js";
import { StrokeCapture } from "../src/stroke.js";

const CANVAS = { width: 600, height: 400 };

let proc: ChildProcess;
let api: ApiClient;

async function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const srv = createServer();
    srv.listen(0, "127.0.0.1", () => {
      const address = srv.address();
      if (address && typeof address === "object") {
        const port = address.port;
        srv.close(() => resolve(port));
      } else {
        reject(new Error("no port"));
      }
    });
  });
}

async function waitForHealthy(base: string, timeoutMs = 45_000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const resp = await fetch(`${base}/healthz`);
      if (resp.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 200));
  }
  throw new Error("service did not become healthy");
}

/** Emulates pointer motion: dense samples every few pixels along the plan. */
function densify(points: Point[], step = 3): Point[] {
  const out: Point[] = [points[0]!];
  for (let i = 1; i < points.length; i++) {
    const a = points[i - 1]!;
    const b = points[i]!;
    const seg = distance(a, b);
    const steps = Math.max(1, Math.ceil(seg / step));
    for (let s = 1; s <= steps; s++) {
      out.push({
        x: a.x + ((b.x - a.x) * s) / steps,
        y: a.y + ((b.y - a.y) * s) / steps,
      });
    }
  }
  return out;
}

beforeAll(async () => {
  const port = await freePort();
  proc = spawn(
    "python3",
    ["-m", "curvepass.cli", "serve", "--port", String(port)],
    {
      env: { ...process.env, CURVEPASS_TEST_SEED: "4242" },
      stdio: "ignore",
    },
  );
  api = new ApiClient(`http://127.0.0.1:${port}`);
  await waitForHealthy(api.baseUrl);
}, 60_000);

afterAll(() => {
  proc?.kill("SIGTERM");
});

describe("end-to-end against the live service", () => {
  const user = "e2e-user";
  let passImages: string[];

  it("enrolls from the catalog listing", async () => {
    const listing = await api.catalog();
    expect(listing.images).toHaveLength(24);
    expect(listing.password_length).toBe(5);
    passImages = listing.images.slice(3, 8).map((img) => img.id);
    await api.enroll(user, passImages);
  });

  it("draws through the capture pipeline and gets accepted", async () => {
    const payload = await api.challenge(user);
    expect(payload.placement).toHaveLength(24);

    const plan = densify(planPolyline(payload, passImages, CANVAS));
    const budget = cellWidth(payload.grid, CANVAS) / 2;
    const frameLengths: number[] = [];

    const outcome = await new Promise<{ accepted: boolean; reason: string }>(
      (resolve, reject) => {
        const capture = new StrokeCapture(CANVAS, budget, {
          onFrame: (tail) => frameLengths.push(arcLength(tail)),
          onAbort: (msg) => reject(new Error(`aborted: ${msg}`)),
          onSubmit: (polyline) => {
            api.login(payload.challenge_id, polyline, CANVAS).then(resolve, reject);
          },
        });
        capture.begin(plan[0]!);
        for (const p of plan.slice(1)) capture.move(p);
        capture.end();
      },
    );

    expect(outcome).toEqual({ accepted: true, reason: "ok" });
    // trace erasure held on every frame of the scripted drag
    expect(frameLengths.length).toBeGreaterThan(100);
    for (const len of frameLengths) expect(len).toBeLessThanOrEqual(budget + 1e-9);
  });

  it("sees single-use challenges: a replayed drawing is consumed", async () => {
    const payload = await api.challenge(user);
    const plan = densify(planPolyline(payload, passImages, CANVAS));
    const first = await api.login(payload.challenge_id, plan, CANVAS);
    expect(first.accepted).toBe(true);
    const replay = await api.login(payload.challenge_id, plan, CANVAS);
    expect(replay).toEqual({ accepted: false, reason: "consumed" });
  });

  it("fetches only degraded, challenge-scoped rasters", async () => {
    const payload = await api.challenge(user);
    const imageId = payload.placement[0]!.image_id;
    const resp = await fetch(api.degradedImageUrl(payload.challenge_id, imageId));
    expect(resp.status).toBe(200);
    expect(resp.headers.get("content-type")).toBe("image/png");
    const bytes = new Uint8Array(await resp.arrayBuffer());
    expect(bytes.length).toBeGreaterThan(0);
    // no challenge-less raster route exists
    const bare = await fetch(`${api.baseUrl}/images/${imageId}`);
    expect(bare.status).toBe(404);
  });

  it("aborting on canvas exit sends nothing to the service", async () => {
    const realFetch = globalThis.fetch;
    let requests = 0;
    globalThis.fetch = ((...args: Parameters<typeof fetch>) => {
      requests += 1;
      return realFetch(...args);
    }) as typeof fetch;
    try {
      let submitted = 0;
      const capture = new StrokeCapture(CANVAS, 50, {
        onSubmit: (polyline) => {
          submitted += 1;
          void api.login("irrelevant", polyline, CANVAS);
        },
        onAbort: () => {},
      });
      capture.begin({ x: 120, y: 80 });
      capture.move({ x: 160, y: 90 });
      capture.move({ x: 650, y: 90 }); // leaves the canvas
      capture.end();
      expect(submitted).toBe(0);
      expect(requests).toBe(0);
    } finally {
      globalThis.fetch = realFetch;
    }
  });
});
