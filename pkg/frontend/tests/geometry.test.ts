import { describe, expect, it } from "vitest";

import {
  arcLength,
  cellCenter,
  ChallengePayload,
  inCanvas,
  kingPath,
  placementMap,
  planPolyline,
} from "../src/geometry.js";

const GRID = { rows: 4, cols: 6 };
const CANVAS = { width: 600, height: 400 };

function fakePayload(): ChallengePayload {
  const placement = [];
  let i = 0;
  for (let row = 0; row < 4; row++) {
    for (let col = 0; col < 6; col++) {
      placement.push({ cell: [row, col] as [number, number], image_id: `img${String(i++).padStart(3, "0")}` });
    }
  }
  return {
    challenge_id: "ch1",
    grid: GRID,
    placement,
    head_image: "img000",
    tail_image: "img023",
    expires_at: Date.now() / 1000 + 120,
  };
}

describe("geometry", () => {
  it("cell centers are mid-cell", () => {
    expect(cellCenter({ row: 0, col: 0 }, GRID, CANVAS)).toEqual({ x: 50, y: 50 });
    expect(cellCenter({ row: 3, col: 5 }, GRID, CANVAS)).toEqual({ x: 550, y: 350 });
  });

  it("canvas bounds are closed", () => {
    expect(inCanvas({ x: 0, y: 0 }, CANVAS)).toBe(true);
    expect(inCanvas({ x: 600, y: 400 }, CANVAS)).toBe(true);
    expect(inCanvas({ x: 600.1, y: 10 }, CANVAS)).toBe(false);
    expect(inCanvas({ x: -0.1, y: 10 }, CANVAS)).toBe(false);
  });

  it("king path takes the diagonal first and has minimal length", () => {
    const path = kingPath({ row: 0, col: 0 }, { row: 3, col: 5 });
    expect(path[0]).toEqual({ row: 0, col: 0 });
    expect(path[path.length - 1]).toEqual({ row: 3, col: 5 });
    expect(path).toHaveLength(6); // 1 + chebyshev distance 5
  });

  it("resizing scales centers proportionally, preserving the cell mapping", () => {
    const small = cellCenter({ row: 2, col: 3 }, GRID, CANVAS);
    const big = cellCenter({ row: 2, col: 3 }, GRID, { width: 1200, height: 800 });
    expect(big.x / small.x).toBeCloseTo(2);
    expect(big.y / small.y).toBeCloseTo(2);
  });

  it("planPolyline starts at the head center and ends at the tail center", () => {
    const payload = fakePayload();
    const points = planPolyline(payload, ["img007", "img010"], CANVAS);
    const placed = placementMap(payload);
    expect(points[0]).toEqual(cellCenter(placed.get("img000")!, GRID, CANVAS));
    expect(points[points.length - 1]).toEqual(
      cellCenter(placed.get("img023")!, GRID, CANVAS),
    );
    expect(arcLength(points)).toBeGreaterThan(0);
  });

  it("planPolyline rejects ids missing from the placement", () => {
    expect(() => planPolyline(fakePayload(), ["nope"], CANVAS)).toThrow();
  });
});
