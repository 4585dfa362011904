import { ApiClient, ApiError } from "./api.js";
import { CanvasSize } from "./geometry.js";
import { renderChallenge, renderEnrollment, showOutcome } from "./ui.js";

const params = new URLSearchParams(window.location.search);
const api = new ApiClient(params.get("api") ?? "http://127.0.0.1:8000");

const app = document.getElementById("app")!;
const status = document.getElementById("status")!;

function canvasSize(): CanvasSize {
  const width = Math.max(360, Math.min(900, window.innerWidth - 48));
  return { width, height: Math.round((width * 2) / 3) };
}

function setStatus(text: string) {
  status.textContent = text;
}

async function loginFlow(user: string) {
  app.textContent = "";
  setStatus("fetching challenge...");
  let payload;
  try {
    payload = await api.challenge(user);
  } catch (err) {
    if (err instanceof ApiError && err.status === 423) {
      setStatus("locked out after repeated failures");
    } else if (err instanceof ApiError && err.status === 404) {
      setStatus("unknown user; enroll first");
    } else {
      setStatus("service unreachable");
    }
    return;
  }
  setStatus("draw from the red head image across your images to the green tail");
  const view = renderChallenge(app, payload, api, {
    canvas: canvasSize(),
    onNotice: setStatus,
    onOutcome: (outcome) => {
      view.dispose();
      showOutcome(app, outcome, { onNewChallenge: () => loginFlow(user) });
    },
    onError: (err) => {
      view.dispose();
      if (err instanceof ApiError) {
        showOutcome(app, err, { onNewChallenge: () => loginFlow(user) });
      } else {
        setStatus("network failure; try again");
      }
    },
  });
  const onResize = () => view.resize(canvasSize());
  window.addEventListener("resize", onResize);
}

async function enrollFlow(user: string) {
  app.textContent = "";
  setStatus("pick your pass images in order");
  try {
    await renderEnrollment(app, api, user, {
      onEnrolled: () => {
        setStatus("enrolled; this practice round confirms your drawing");
        loginFlow(user);
      },
      onError: (err) => {
        if (err instanceof ApiError && err.status === 409) {
          setStatus("already enrolled; switching to login");
          loginFlow(user);
        } else if (err instanceof ApiError) {
          setStatus(`enrollment rejected (${err.code})`);
        } else {
          setStatus("service unreachable");
        }
      },
    });
  } catch {
    setStatus("service unreachable");
  }
}

function boot() {
  const form = document.getElementById("user-form") as HTMLFormElement;
  const input = document.getElementById("user-id") as HTMLInputElement;
  form.onsubmit = (ev) => {
    ev.preventDefault();
    const user = input.value.trim();
    if (!user) return;
    const mode = (document.querySelector('input[name="mode"]:checked') as HTMLInputElement).value;
    if (mode === "enroll") enrollFlow(user);
    else loginFlow(user);
  };
}

boot();
