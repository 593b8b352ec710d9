// End-to-end: start the real Python session API and drive the view model
// through it, checking the secondary acceptance behaviors: the pentagon
// click sequence shows the return banner with panel strings that byte-match
// the server, and mutate-then-undo restores a deep-equal snapshot.

import { ChildProcess, spawn } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { SessionApi, StateDoc } from "../src/api.js";
import { escapeHtml, renderPanel } from "../src/render.js";
import { ViewModel } from "../src/state.js";

const PORT = 8961;
const BASE = `http://127.0.0.1:${PORT}`;
let server: ChildProcess;

async function waitForServer(): Promise<void> {
  for (let i = 0; i < 100; i++) {
    try {
      const resp = await fetch(`${BASE}/v1/session/none`);
      if (resp.status === 404) return;
    } catch {
      /* not up yet */
    }
    await new Promise((r) => setTimeout(r, 100));
  }
  throw new Error("session API did not come up");
}

beforeAll(async () => {
  server = spawn("python3", ["-m", "clusterkit.cli", "serve", "--port", String(PORT)], {
    cwd: new URL("../..", import.meta.url).pathname,
    stdio: "ignore",
  });
  await waitForServer();
}, 30_000);

afterAll(() => {
  server.kill();
});

describe("explorer against the live API", () => {
  it("pentagon clicks show the return banner and panel strings byte-match the server", async () => {
    const api = new SessionApi(BASE);
    const vm = new ViewModel(api);
    await vm.create({ b: [[0, -1], [1, 0]] });
    expect(vm.state.doc?.f_polynomials).toEqual(["1", "1"]);
    for (const k of [1, 2, 1, 2, 1]) {
      await vm.clickMutate(k);
    }
    expect(vm.state.banner).toEqual({
      kind: "return",
      text: "returned to start (up to relabeling)",
    });
    // the rendered panel carries the server's strings byte-for-byte
    const doc = vm.state.doc!;
    const fresh = await api.state(doc.id);
    expect(doc.f_polynomials).toEqual(fresh.f_polynomials);
    expect(doc.cluster_variables).toEqual(fresh.cluster_variables);
    const html = renderPanel(doc, vm.state.toggles);
    for (const s of [...fresh.f_polynomials!, ...fresh.cluster_variables!]) {
      expect(html).toContain(`<code>${escapeHtml(s)}</code>`);
    }
  }, 30_000);

  it("mutate then undo restores a deep-equal snapshot", async () => {
    const vm = new ViewModel(new SessionApi(BASE));
    await vm.create({ b: [[0, -1], [2, 0]] });
    await vm.clickMutate(1);
    const snapshot: StateDoc = JSON.parse(JSON.stringify(vm.state.doc));
    await vm.clickMutate(2);
    expect(vm.state.doc).not.toEqual(snapshot);
    await vm.undo();
    expect(vm.state.doc).toEqual(snapshot);
  }, 30_000);

  it("clicking the same vertex twice walks back and says so", async () => {
    const vm = new ViewModel(new SessionApi(BASE));
    await vm.create({ b: [[0, -1], [3, 0]] });
    await vm.clickMutate(2);
    await vm.clickMutate(2);
    expect(vm.state.banner).toEqual({ kind: "back", text: "back to previous seed" });
    expect(vm.state.doc?.path).toEqual([]);
  }, 30_000);

  it("navigates the history tree through undo/replay", async () => {
    const vm = new ViewModel(new SessionApi(BASE));
    await vm.create({ b: [[0, -1], [1, 0]] });
    await vm.clickMutate(1);
    await vm.clickMutate(2);
    await vm.undo();
    await vm.undo();
    await vm.clickMutate(2); // fork at the root
    const graph = vm.state.graph!;
    expect(graph.nodes).toHaveLength(4);
    // jump from the fork back to the deep node
    const deep = graph.nodes.find((n) => n.direction === 2 && n.parent === 1)!;
    await vm.navigateTo(deep.id);
    expect(vm.state.doc?.path).toEqual([1, 2]);
    // and back to the root
    await vm.navigateTo(0);
    expect(vm.state.doc?.path).toEqual([]);
  }, 30_000);

  it("renders frozen vertices for the pentagon structure", async () => {
    const vm = new ViewModel(new SessionApi(BASE));
    await vm.create({
      bt: [[0, -1], [1, 0], [-1, 0], [1, 0], [-1, 1], [0, -1], [0, 1]],
      n: 2,
    });
    expect(vm.state.doc?.quiver.frozen).toEqual([3, 4, 5, 6, 7]);
    await vm.clickMutate(3); // frozen: no server call, no state change
    expect(vm.state.doc?.path).toEqual([]);
  }, 30_000);
});
