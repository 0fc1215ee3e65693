/** Browser bootstrap: mount the controller onto #app and route clicks. */

import { HttpTransport } from "./api.js";
import { renderApp } from "./render.js";
import { BrowseController } from "./state.js";

async function boot(): Promise<void> {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app mount point");

  const transport = new HttpTransport("");
  const controller = new BrowseController(transport);
  controller.subscribe((state) => {
    root.innerHTML = renderApp(state);
  });

  root.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    const tagButton = target.closest<HTMLElement>("button.tag");
    if (tagButton?.dataset.tag) {
      void controller.selectTag(tagButton.dataset.tag);
      return;
    }
    const crumb = target.closest<HTMLElement>("button.crumb");
    if (crumb?.dataset.index !== undefined) {
      void controller.backTo(Number(crumb.dataset.index));
      return;
    }
    if (target.closest("#reset")) {
      void controller.reset();
    }
  });

  const fromHash = window.location.hash.slice(1);
  if (fromHash) {
    await controller.open(fromHash);
    return;
  }
  const collections = await transport.listCollections();
  if (collections.length === 0) {
    root.innerHTML = `<p class="empty">No collections loaded on this server.</p>`;
    return;
  }
  await controller.open(collections[0].collection_id);
}

void boot();
