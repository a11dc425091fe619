import { ApiClient } from "./api.js";
import { App } from "./app.js";

const root = document.getElementById("app");
if (root === null) {
  throw new Error("missing #app container");
}
// served from the same origin as the API (service mounts the UI at /ui)
const app = new App(root, new ApiClient(""));
void app.start();
