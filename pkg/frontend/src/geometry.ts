/**
 * Grid geometry shared by the renderer, the stroke capture and test
 * drivers.  Mirrors the server's conventions: the canvas is the closed
 * region [0, width] x [0, height] and cells are equal rectangles in
 * row-major order.
 */

export interface GridDims {
  rows: number;
  cols: number;
}

export interface CanvasSize {
  width: number;
  height: number;
}

export interface Point {
  x: number;
  y: number;
}

export interface Cell {
  row: number;
  col: number;
}

export interface PlacementEntry {
  cell: [number, number];
  image_id: string;
}

export interface ChallengePayload {
  challenge_id: string;
  grid: GridDims;
  placement: PlacementEntry[];
  head_image: string;
  tail_image: string;
  expires_at: number;
}

export function cellWidth(grid: GridDims, canvas: CanvasSize): number {
  return canvas.width / grid.cols;
}

export function cellHeight(grid: GridDims, canvas: CanvasSize): number {
  return canvas.height / grid.rows;
}

export function cellCenter(cell: Cell, grid: GridDims, canvas: CanvasSize): Point {
  return {
    x: (cell.col + 0.5) * cellWidth(grid, canvas),
    y: (cell.row + 0.5) * cellHeight(grid, canvas),
  };
}

export function inCanvas(p: Point, canvas: CanvasSize): boolean {
  return p.x >= 0 && p.x <= canvas.width && p.y >= 0 && p.y <= canvas.height;
}

export function distance(a: Point, b: Point): number {
  return Math.hypot(a.x - b.x, a.y - b.y);
}

export function arcLength(points: readonly Point[]): number {
  let total = 0;
  for (let i = 1; i < points.length; i++) {
    total += distance(points[i - 1]!, points[i]!);
  }
  return total;
}

export function placementMap(payload: ChallengePayload): Map<string, Cell> {
  const map = new Map<string, Cell>();
  for (const entry of payload.placement) {
    map.set(entry.image_id, { row: entry.cell[0], col: entry.cell[1] });
  }
  return map;
}

/** Shortest king-move path, inclusive of both endpoints (diagonal first). */
export function kingPath(a: Cell, b: Cell): Cell[] {
  const path: Cell[] = [a];
  let { row, col } = a;
  while (row !== b.row || col !== b.col) {
    row += Math.sign(b.row - row);
    col += Math.sign(b.col - col);
    path.push({ row, col });
  }
  return path;
}

/**
 * Polyline through the cells a valid login must visit: head image, the
 * pass-images in order, then the tail image.  Used by scripted drivers and
 * the enrollment practice hint; interactive logins use raw pointer samples.
 */
export function planPolyline(
  payload: ChallengePayload,
  passImages: readonly string[],
  canvas: CanvasSize,
): Point[] {
  const placed = placementMap(payload);
  const want = [payload.head_image, ...passImages, payload.tail_image];
  const cells: Cell[] = want.map((id) => {
    const cell = placed.get(id);
    if (!cell) throw new Error(`image ${id} missing from placement`);
    return cell;
  });
  const chain: Cell[] = [cells[0]!];
  for (let i = 1; i < cells.length; i++) {
    const hop = kingPath(chain[chain.length - 1]!, cells[i]!);
    chain.push(...hop.slice(1));
  }
  return chain.map((cell) => cellCenter(cell, payload.grid, canvas));
}
