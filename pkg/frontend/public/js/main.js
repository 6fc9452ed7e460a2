import { DialogApi } from "./client.js";
import { DialogApp } from "./app.js";
// Served from the dialog service's --static-dir, the API is same-origin;
// ?api=http://host:port points the page at a service running elsewhere.
const params = new URLSearchParams(window.location.search);
const base = params.get("api") ?? "";
const mount = document.getElementById("app");
if (!mount)
    throw new Error("missing #app mount point");
const api = new DialogApi(base);
api
    .getManifest()
    .then(async (manifest) => {
    document.title = manifest.title;
    const app = new DialogApp(mount, api, manifest);
    await app.start();
})
    .catch((err) => {
    mount.textContent = `Could not reach the dialog service: ${err}`;
});
