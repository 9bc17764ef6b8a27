// Browser entry point: pick a session, poll it at 1 Hz, and delegate
// clicks on the rendered controls to the explorer.

import { ApiClient } from "./api";
import { TraceExplorer } from "./app";
import type { SortKey } from "./render";

const POLL_MS = 1000;

async function boot(): Promise<void> {
  const mount = document.getElementById("app");
  if (!mount) throw new Error("missing #app mount point");
  const api = new ApiClient("", (url, init) => fetch(url, init));
  const explorer = new TraceExplorer(api);

  const draw = (): void => {
    mount.innerHTML = explorer.render();
  };

  const params = new URLSearchParams(window.location.search);
  let sessionId = params.get("session");
  if (!sessionId) {
    const sessions = await api.listSessions();
    sessionId = sessions.length > 0 ? sessions[sessions.length - 1].id : null;
  }
  if (!sessionId) {
    mount.innerHTML = `<p class="empty">no sessions in the store; create one over the API</p>`;
    return;
  }
  await explorer.open(sessionId);
  draw();

  mount.addEventListener("click", (event) => {
    const target = (event.target as HTMLElement).closest(
      "[data-inspect],[data-choose],[data-sort],[data-advance],[data-pause],[data-close-panel]",
    ) as HTMLElement | null;
    if (!target) return;
    const run = async (): Promise<void> => {
      if (target.dataset.inspect !== undefined) {
        await explorer.openPanel(Number(target.dataset.inspect));
      } else if (target.dataset.choose !== undefined) {
        await explorer.choose(Number(target.dataset.choose));
      } else if (target.dataset.sort !== undefined) {
        explorer.sortPanel(target.dataset.sort as SortKey);
      } else if (target.dataset.advance !== undefined) {
        await explorer.advance(Number(target.dataset.advance));
      } else if (target.dataset.pause !== undefined) {
        await explorer.pause();
      } else if (target.dataset.closePanel !== undefined) {
        explorer.closePanel();
      }
      draw();
    };
    void run();
  });

  // human-paced sessions: plain polling keeps the trace alive
  setInterval(() => {
    void explorer.refresh().then(draw);
  }, POLL_MS);
}

void boot();
