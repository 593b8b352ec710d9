// Entry point: wires the view model to the DOM. All math lives on the
// server; this file only routes clicks and re-renders strings.

import { SessionApi } from "./api.js";
import { defaultLayout, renderBanner, renderHistory, renderPanel, renderQuiverSvg } from "./render.js";
import { Toggles, ViewModel } from "./state.js";

const API_BASE = (window as unknown as { CLUSTERKIT_API?: string }).CLUSTERKIT_API
  ?? "http://127.0.0.1:8787";

const PRESETS: Record<string, unknown> = {
  a2: { b: [[0, -1], [1, 0]] },
  b2: { b: [[0, -1], [2, 0]] },
  g2: { b: [[0, -1], [3, 0]] },
  a3: { b: [[0, 1, 0], [-1, 0, 1], [0, -1, 0]] },
  gr25: {
    bt: [[0, -1], [1, 0], [-1, 0], [1, 0], [-1, 1], [0, -1], [0, 1]],
    n: 2,
  },
  "gca-b2": { gca: { b: [[0, -1], [1, 0]], r: [2, 1], z: [[1, "z", 1], [1, 1]] } },
};

function start(): void {
  const app = document.getElementById("app");
  if (!app) return;
  const vm = new ViewModel(new SessionApi(API_BASE));

  const render = (): void => {
    const { doc, graph, banner, toggles, busy } = vm.state;
    const presetOptions = Object.keys(PRESETS)
      .map((name) => `<option value="${name}">${name}</option>`)
      .join("");
    const toggleBox = (name: keyof Toggles, label: string): string =>
      `<label><input type="checkbox" data-toggle="${name}" ${
        toggles[name] ? "checked" : ""
      }/> ${label}</label>`;
    app.innerHTML = `
      <header>
        <select id="preset">${presetOptions}</select>
        <button id="load">load</button>
        <button id="undo" ${doc && doc.can_undo && !busy ? "" : "disabled"}>undo</button>
        ${toggleBox("showF", "F")}
        ${toggleBox("showVectors", "c/g")}
        ${toggleBox("showDVectors", "d")}
        ${toggleBox("showVariables", "variables")}
      </header>
      ${renderBanner(banner)}
      <main>
        <div id="quiver-pane">
          ${doc ? renderQuiverSvg(doc.quiver, defaultLayout(doc.quiver)) : "<p>load a preset</p>"}
        </div>
        <div id="panel">${doc ? renderPanel(doc, toggles) : ""}</div>
        <div id="history">${graph ? renderHistory(graph) : ""}</div>
      </main>`;
  };

  vm.onChange(render);

  app.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    if (target.id === "load") {
      const select = document.getElementById("preset") as HTMLSelectElement;
      void vm.create(PRESETS[select.value] as Parameters<ViewModel["create"]>[0]);
    } else if (target.id === "undo") {
      void vm.undo();
    } else if (target.dataset.vertex) {
      void vm.clickMutate(Number(target.dataset.vertex));
    } else if (target.dataset.node) {
      void vm.navigateTo(Number(target.dataset.node));
    }
  });

  app.addEventListener("change", (event) => {
    const target = event.target as HTMLElement;
    const name = target.dataset.toggle as keyof Toggles | undefined;
    if (name) vm.toggle(name);
  });

  render();
}

start();
