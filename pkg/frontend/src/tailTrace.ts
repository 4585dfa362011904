import { Point, distance } from "./geometry.js";

/**
 * Trailing window of the live stroke.  Only this much of the curve is ever
 * rendered; older segments are erased as the pointer moves on.  The budget
 * is an arc length (half of one cell width in the login view), and the
 * window is trimmed from the back so its arc length never exceeds it --
 * the boundary segment is shortened by interpolation rather than dropped
 * whole.
 */
export class TailBuffer {
  private points: Point[] = [];
  private length = 0;

  constructor(readonly budget: number) {
    if (!(budget >= 0)) throw new Error("tail budget must be >= 0");
  }

  reset(): void {
    this.points = [];
    this.length = 0;
  }

  push(p: Point): void {
    const last = this.points[this.points.length - 1];
    this.points.push({ x: p.x, y: p.y });
    if (last) this.length += distance(last, p);
    this.trim();
  }

  private trim(): void {
    while (this.length > this.budget && this.points.length > 1) {
      const first = this.points[0]!;
      const second = this.points[1]!;
      const seg = distance(first, second);
      if (this.length - seg >= this.budget) {
        this.points.shift();
        this.length -= seg;
      } else {
        const excess = this.length - this.budget;
        const t = seg > 0 ? excess / seg : 1;
        this.points[0] = {
          x: first.x + (second.x - first.x) * t,
          y: first.y + (second.y - first.y) * t,
        };
        this.length = this.budget;
      }
    }
  }

  tail(): readonly Point[] {
    return this.points;
  }

  arcLength(): number {
    return this.length;
  }
}
