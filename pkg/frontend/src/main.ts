import { HubClient } from "./api.js";
import { el } from "./dom.js";
import { renderRoute } from "./router.js";

const KEY_STORAGE = "hub_api_key";

function apiBase(): string {
  // served at /ui/ by the hub itself; same-origin API
  return "";
}

function boot(): void {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app container");

  const client = new HubClient(apiBase(), localStorage.getItem(KEY_STORAGE));

  const keyInput = el("input", {
    type: "password",
    placeholder: "API key (optional)",
    class: "key-input",
  });
  const saveButton = el("button", { class: "key-save" }, ["Save key"]);
  saveButton.addEventListener("click", () => {
    const value = keyInput.value.trim();
    if (value) {
      localStorage.setItem(KEY_STORAGE, value);
      client.setApiKey(value);
    } else {
      localStorage.removeItem(KEY_STORAGE);
      client.setApiKey(null);
    }
    keyInput.value = "";
    void renderRoute(root, client, window.location.hash);
  });
  const header = document.getElementById("auth");
  header?.append(keyInput, saveButton);

  const rerender = () => void renderRoute(root, client, window.location.hash);
  window.addEventListener("hashchange", rerender);
  rerender();
}

boot();
