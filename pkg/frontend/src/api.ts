import { CanvasSize, ChallengePayload, Point } from "./geometry.js";

export interface CatalogEntry {
  id: string;
  label: string;
}

export interface CatalogListing {
  images: CatalogEntry[];
  grid: { rows: number; cols: number };
  password_length: number;
}

export interface LoginOutcome {
  accepted: boolean;
  reason: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
  ) {
    super(`${status}: ${code}`);
  }
}

/**
 * Thin fetch wrapper over the service endpoints.  Image rasters are only
 * ever addressed through the challenge-scoped degraded route; there is no
 * way to request an original from here.
 */
export class ApiClient {
  constructor(readonly baseUrl: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await fetch(this.baseUrl + path, init);
    const body = await resp.json().catch(() => ({}));
    if (!resp.ok) {
      throw new ApiError(resp.status, (body as { detail?: string }).detail ?? "error");
    }
    return body as T;
  }

  catalog(): Promise<CatalogListing> {
    return this.request<CatalogListing>("/catalog");
  }

  async enroll(userId: string, imageIds: string[]): Promise<void> {
    await this.request(`/users/${encodeURIComponent(userId)}/enroll`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ image_ids: imageIds }),
    });
  }

  challenge(userId: string): Promise<ChallengePayload> {
    return this.request<ChallengePayload>(
      `/users/${encodeURIComponent(userId)}/challenge`,
      { method: "POST" },
    );
  }

  login(
    challengeId: string,
    polyline: readonly Point[],
    canvas: CanvasSize,
  ): Promise<LoginOutcome> {
    return this.request<LoginOutcome>("/login", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({
        challenge_id: challengeId,
        polyline: polyline.map((p) => [p.x, p.y]),
        canvas: { width: canvas.width, height: canvas.height },
      }),
    });
  }

  degradedImageUrl(challengeId: string, imageId: string): string {
    return `${this.baseUrl}/images/${encodeURIComponent(challengeId)}/${encodeURIComponent(imageId)}`;
  }
}
