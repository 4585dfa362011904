import { CanvasSize, Point, inCanvas } from "./geometry.js";
import { TailBuffer } from "./tailTrace.js";

export interface StrokeCallbacks {
  /** Fired once on pointer release with every raw sample, in order. */
  onSubmit: (polyline: Point[]) => void;
  /** Fired when the stroke is discarded (pointer left the canvas). */
  onAbort: (message: string) => void;
  /** Fired after every accepted sample with the visible tail segment. */
  onFrame?: (tail: readonly Point[]) => void;
}

/**
 * State machine for one continuous stroke: press inside the canvas, drag,
 * release.  Leaving the canvas mid-stroke discards everything -- no
 * submission happens.  Samples are kept exactly as received; no cell
 * mapping is done on the client.
 */
export class StrokeCapture {
  private samples: Point[] = [];
  private tailBuffer: TailBuffer;
  private active = false;

  constructor(
    private readonly canvas: CanvasSize,
    tailBudget: number,
    private readonly callbacks: StrokeCallbacks,
  ) {
    this.tailBuffer = new TailBuffer(tailBudget);
  }

  get drawing(): boolean {
    return this.active;
  }

  tail(): readonly Point[] {
    return this.tailBuffer.tail();
  }

  tailArcLength(): number {
    return this.tailBuffer.arcLength();
  }

  begin(p: Point): boolean {
    if (this.active || !inCanvas(p, this.canvas)) return false;
    this.active = true;
    this.samples = [{ x: p.x, y: p.y }];
    this.tailBuffer.reset();
    this.tailBuffer.push(p);
    this.callbacks.onFrame?.(this.tailBuffer.tail());
    return true;
  }

  move(p: Point): void {
    if (!this.active) return;
    if (!inCanvas(p, this.canvas)) {
      this.discard("draw inside the grid");
      return;
    }
    this.samples.push({ x: p.x, y: p.y });
    this.tailBuffer.push(p);
    this.callbacks.onFrame?.(this.tailBuffer.tail());
  }

  /** Pointer released inside the canvas: submit the full stroke. */
  end(): void {
    if (!this.active) return;
    const polyline = this.samples;
    this.active = false;
    this.samples = [];
    this.tailBuffer.reset();
    this.callbacks.onSubmit(polyline);
  }

  /** Pointer left the canvas or capture was lost: discard, never submit. */
  leave(): void {
    if (!this.active) return;
    this.discard("draw inside the grid");
  }

  private discard(message: string): void {
    this.active = false;
    this.samples = [];
    this.tailBuffer.reset();
    this.callbacks.onAbort(message);
  }
}
