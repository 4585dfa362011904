import { ApiClient, ApiError, LoginOutcome } from "./api.js";
import {
  CanvasSize,
  ChallengePayload,
  cellHeight,
  cellWidth,
  Point,
} from "./geometry.js";
import { StrokeCapture } from "./stroke.js";

const REASON_TEXT: Record<string, string> = {
  ok: "Accepted. You are in.",
  wrong_head: "Start on the highlighted head image.",
  wrong_tail: "End on the highlighted tail image.",
  sequence_mismatch: "The curve must cross your images in order.",
  too_long: "The curve was too long. Try a shorter path.",
  expired: "The challenge expired. Get a new one.",
  consumed: "This challenge was already used. Get a new one.",
};

export function reasonText(reason: string): string {
  return REASON_TEXT[reason] ?? `Rejected (${reason}).`;
}

/** Deterministic tile color for enrollment, where no rasters are shown. */
export function labelColor(id: string): string {
  let hash = 7;
  for (const ch of id) hash = (hash * 31 + ch.charCodeAt(0)) >>> 0;
  return `hsl(${hash % 360}, 55%, ${45 + (hash % 25)}%)`;
}

export interface ChallengeViewOptions {
  canvas: CanvasSize;
  onOutcome: (outcome: LoginOutcome) => void;
  onError: (err: unknown) => void;
  onNotice?: (message: string) => void;
}

export interface ChallengeView {
  element: HTMLElement;
  capture: StrokeCapture;
  resize(size: CanvasSize): void;
  dispose(): void;
}

function makeTile(
  doc: Document,
  api: ApiClient,
  payload: ChallengePayload,
  imageId: string,
): HTMLElement {
  const tile = doc.createElement("div");
  tile.className = "cp-tile";
  if (imageId === payload.head_image) tile.classList.add("cp-head");
  if (imageId === payload.tail_image) tile.classList.add("cp-tail");
  tile.dataset.imageId = imageId;

  const attachImage = () => {
    tile.textContent = "";
    const img = doc.createElement("img");
    img.alt = "";
    img.draggable = false;
    img.src = api.degradedImageUrl(payload.challenge_id, imageId);
    img.onerror = () => {
      tile.textContent = "";
      const retry = doc.createElement("button");
      retry.className = "cp-retry";
      retry.textContent = "retry";
      retry.onclick = attachImage;
      tile.appendChild(retry);
    };
    tile.appendChild(img);
  };
  attachImage();
  return tile;
}

/**
 * Degraded image grid with a drawing overlay.  The overlay renders only
 * the trailing stroke segment (arc length capped at half a cell width);
 * releasing the pointer submits the raw samples, leaving the canvas
 * discards them.
 */
export function renderChallenge(
  root: HTMLElement,
  payload: ChallengePayload,
  api: ApiClient,
  opts: ChallengeViewOptions,
): ChallengeView {
  const doc = root.ownerDocument;
  let size = { ...opts.canvas };
  let busy = false;

  const wrap = doc.createElement("div");
  wrap.className = "cp-challenge";
  wrap.style.position = "relative";

  const gridEl = doc.createElement("div");
  gridEl.className = "cp-grid";
  gridEl.style.display = "grid";

  const ordered = [...payload.placement].sort(
    (a, b) => a.cell[0] - b.cell[0] || a.cell[1] - b.cell[1],
  );
  for (const entry of ordered) {
    gridEl.appendChild(makeTile(doc, api, payload, entry.image_id));
  }

  const overlay = doc.createElement("canvas");
  overlay.className = "cp-overlay";
  overlay.style.position = "absolute";
  overlay.style.inset = "0";
  overlay.style.touchAction = "none";

  const notice = doc.createElement("div");
  notice.className = "cp-notice";

  wrap.appendChild(gridEl);
  wrap.appendChild(overlay);
  wrap.appendChild(notice);
  root.appendChild(wrap);

  const tailBudget = () => cellWidth(payload.grid, size) / 2;

  const drawTail = (tail: readonly Point[]) => {
    const ctx = overlay.getContext && overlay.getContext("2d");
    if (!ctx) return;
    ctx.clearRect(0, 0, overlay.width, overlay.height);
    if (tail.length < 1) return;
    ctx.beginPath();
    ctx.lineWidth = 3;
    ctx.lineCap = "round";
    ctx.strokeStyle = "#1c4fd6";
    ctx.moveTo(tail[0]!.x, tail[0]!.y);
    for (const p of tail.slice(1)) ctx.lineTo(p.x, p.y);
    ctx.stroke();
  };

  const makeCapture = () =>
    new StrokeCapture(size, tailBudget(), {
      onFrame: drawTail,
      onAbort: (message) => {
        drawTail([]);
        notice.textContent = message;
        opts.onNotice?.(message);
      },
      onSubmit: (polyline) => {
        drawTail([]);
        busy = true;
        api
          .login(payload.challenge_id, polyline, size)
          .then((outcome) => opts.onOutcome(outcome))
          .catch((err) => opts.onError(err))
          .finally(() => {
            busy = false;
          });
      },
    });

  let capture = makeCapture();

  const layout = () => {
    wrap.style.width = `${size.width}px`;
    wrap.style.height = `${size.height}px`;
    gridEl.style.width = `${size.width}px`;
    gridEl.style.height = `${size.height}px`;
    gridEl.style.gridTemplateRows = `repeat(${payload.grid.rows}, ${cellHeight(payload.grid, size)}px)`;
    gridEl.style.gridTemplateColumns = `repeat(${payload.grid.cols}, ${cellWidth(payload.grid, size)}px)`;
    overlay.width = size.width;
    overlay.height = size.height;
  };
  layout();

  const local = (ev: PointerEvent): Point => ({ x: ev.offsetX, y: ev.offsetY });

  const onDown = (ev: PointerEvent) => {
    if (busy) return;
    ev.preventDefault();
    notice.textContent = "";
    capture.begin(local(ev));
  };
  const onMove = (ev: PointerEvent) => {
    if (busy) return;
    capture.move(local(ev));
  };
  const onUp = () => {
    if (busy) return;
    capture.end();
  };
  const onLeave = () => {
    if (busy) return;
    capture.leave();
  };

  overlay.addEventListener("pointerdown", onDown);
  overlay.addEventListener("pointermove", onMove);
  overlay.addEventListener("pointerup", onUp);
  overlay.addEventListener("pointerleave", onLeave);
  overlay.addEventListener("pointercancel", onLeave);

  const view: ChallengeView = {
    element: wrap,
    capture,
    resize(next: CanvasSize) {
      // mid-stroke resizes would skew coordinates: drop the stroke
      capture.leave();
      size = { ...next };
      capture = makeCapture();
      view.capture = capture;
      layout();
    },
    dispose() {
      overlay.removeEventListener("pointerdown", onDown);
      overlay.removeEventListener("pointermove", onMove);
      overlay.removeEventListener("pointerup", onUp);
      overlay.removeEventListener("pointerleave", onLeave);
      overlay.removeEventListener("pointercancel", onLeave);
      wrap.remove();
    },
  };
  return view;
}

export interface OutcomeHandlers {
  onNewChallenge: () => void;
}

/** Accept/reject banner; on rejection offers a fresh challenge. */
export function showOutcome(
  root: HTMLElement,
  result: LoginOutcome | ApiError,
  handlers: OutcomeHandlers,
): void {
  const doc = root.ownerDocument;
  root.textContent = "";
  const box = doc.createElement("div");

  if (result instanceof ApiError) {
    box.className = "cp-outcome cp-error";
    if (result.status === 423) {
      box.textContent = "Locked out after repeated failures. Try again later.";
      const btn = doc.createElement("button");
      btn.textContent = "new challenge";
      btn.disabled = true;
      box.appendChild(btn);
    } else {
      box.textContent = `Service error (${result.status}: ${result.code}).`;
      const btn = doc.createElement("button");
      btn.textContent = "new challenge";
      btn.onclick = handlers.onNewChallenge;
      box.appendChild(btn);
    }
  } else if (result.accepted) {
    box.className = "cp-outcome cp-success";
    box.textContent = reasonText(result.reason);
  } else {
    box.className = "cp-outcome cp-rejected";
    box.textContent = reasonText(result.reason);
    const btn = doc.createElement("button");
    btn.textContent = "new challenge";
    btn.onclick = handlers.onNewChallenge;
    box.appendChild(btn);
  }
  root.appendChild(box);
}

export interface EnrollmentHandlers {
  onEnrolled: (passImages: string[]) => void;
  onError: (err: unknown) => void;
}

/**
 * Enrollment picker.  The service never exposes original rasters, so the
 * choices are labeled color tiles; users see the real (degraded) images
 * during the practice drawing that follows.
 */
export async function renderEnrollment(
  root: HTMLElement,
  api: ApiClient,
  userId: string,
  handlers: EnrollmentHandlers,
): Promise<void> {
  const doc = root.ownerDocument;
  const listing = await api.catalog();
  const needed = listing.password_length;
  const chosen: string[] = [];

  root.textContent = "";
  const info = doc.createElement("p");
  info.className = "cp-enroll-info";
  const grid = doc.createElement("div");
  grid.className = "cp-enroll-grid";
  const submit = doc.createElement("button");
  submit.className = "cp-enroll-submit";
  submit.textContent = "enroll";

  const update = () => {
    info.textContent = `Pick ${needed} images in the order you will draw them (${chosen.length}/${needed}).`;
    submit.disabled = chosen.length !== needed;
    for (const tile of Array.from(grid.children) as HTMLElement[]) {
      const id = tile.dataset.imageId!;
      const idx = chosen.indexOf(id);
      tile.classList.toggle("cp-chosen", idx >= 0);
      const badge = tile.querySelector(".cp-order") as HTMLElement;
      badge.textContent = idx >= 0 ? String(idx + 1) : "";
    }
  };

  for (const entry of listing.images) {
    const tile = doc.createElement("div");
    tile.className = "cp-tile cp-enroll-tile";
    tile.dataset.imageId = entry.id;
    tile.style.background = labelColor(entry.id);
    const label = doc.createElement("span");
    label.textContent = entry.label;
    const badge = doc.createElement("span");
    badge.className = "cp-order";
    tile.appendChild(label);
    tile.appendChild(badge);
    tile.onclick = () => {
      const idx = chosen.indexOf(entry.id);
      if (idx >= 0) chosen.splice(idx, 1);
      else if (chosen.length < needed) chosen.push(entry.id);
      update();
    };
    grid.appendChild(tile);
  }

  submit.onclick = async () => {
    try {
      await api.enroll(userId, [...chosen]);
      handlers.onEnrolled([...chosen]);
    } catch (err) {
      handlers.onError(err);
    }
  };

  root.appendChild(info);
  root.appendChild(grid);
  root.appendChild(submit);
  update();
}
