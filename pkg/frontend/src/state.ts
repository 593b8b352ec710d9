// View model: the view is a pure function of the last server response.
// The model never computes anything mathematical; it only records server
// documents, drives navigation, and derives banners by comparing documents.

import { GraphDoc, SessionApi, StateDoc } from "./api.js";

export interface Toggles {
  showF: boolean;
  showVectors: boolean;
  showVariables: boolean;
  showDVectors: boolean;
}

export type Banner =
  | { kind: "none" }
  | { kind: "back"; text: string }
  | { kind: "return"; text: string }
  | { kind: "error"; text: string };

export interface ViewState {
  doc: StateDoc | null;
  graph: GraphDoc | null;
  banner: Banner;
  toggles: Toggles;
  busy: boolean;
}

const deepEqual = (a: unknown, b: unknown): boolean =>
  JSON.stringify(a) === JSON.stringify(b);

export class ViewModel {
  state: ViewState = {
    doc: null,
    graph: null,
    banner: { kind: "none" },
    toggles: { showF: true, showVectors: true, showVariables: true, showDVectors: true },
    busy: false,
  };
  private history: StateDoc[] = [];
  private listeners: (() => void)[] = [];

  constructor(private api: SessionApi) {}

  onChange(fn: () => void): void {
    this.listeners.push(fn);
  }

  private emit(): void {
    for (const fn of this.listeners) fn();
  }

  private async refreshGraph(): Promise<void> {
    if (this.state.doc) {
      this.state.graph = await this.api.graph(this.state.doc.id);
    }
  }

  private banners(next: StateDoc): Banner {
    // `next` is already in the history; "previous" is the document that was
    // on display before the click before this one
    const prev = this.history.length >= 3 ? this.history[this.history.length - 3] : null;
    if (prev !== null && deepEqual(prev, next)) {
      return { kind: "back", text: "back to previous seed" };
    }
    if (next.path.length > 0 && next.same_as_root_labeled) {
      return { kind: "return", text: "returned to start" };
    }
    if (next.path.length > 0 && next.same_as_root_unlabeled) {
      return { kind: "return", text: "returned to start (up to relabeling)" };
    }
    return { kind: "none" };
  }

  private accept(doc: StateDoc): void {
    this.history.push(doc);
    this.state.doc = doc;
    this.state.banner = this.banners(doc);
  }

  async create(payload: Parameters<SessionApi["create"]>[0]): Promise<void> {
    this.state.busy = true;
    this.emit();
    try {
      const doc = await this.api.create(payload);
      this.history = [];
      this.accept(doc);
      await this.refreshGraph();
      this.state.banner = { kind: "none" };
    } catch (e) {
      this.state.banner = { kind: "error", text: String(e) };
    } finally {
      this.state.busy = false;
      this.emit();
    }
  }

  async clickMutate(k: number): Promise<void> {
    const doc = this.state.doc;
    if (!doc || this.state.busy) return;
    if (doc.quiver.frozen.includes(k)) return; // frozen vertices are not clickable
    this.state.busy = true;
    this.emit();
    try {
      this.accept(await this.api.mutate(doc.id, k));
      await this.refreshGraph();
    } catch (e) {
      this.state.banner = { kind: "error", text: String(e) };
    } finally {
      this.state.busy = false;
      this.emit();
    }
  }

  async undo(): Promise<void> {
    const doc = this.state.doc;
    if (!doc || !doc.can_undo || this.state.busy) return;
    this.state.busy = true;
    this.emit();
    try {
      this.accept(await this.api.undo(doc.id));
      await this.refreshGraph();
    } catch (e) {
      this.state.banner = { kind: "error", text: String(e) };
    } finally {
      this.state.busy = false;
      this.emit();
    }
  }

  /** Steps from the cursor to the target history node: undos up to the
   * common ancestor, then replays the recorded directions downward. */
  navigationPlan(target: number): { undos: number; replay: number[] } | null {
    const graph = this.state.graph;
    if (!graph) return null;
    const parents = new Map<number, { parent: number | null; direction: number | null }>();
    for (const node of graph.nodes) {
      parents.set(node.id, { parent: node.parent, direction: node.direction });
    }
    if (!parents.has(target)) return null;
    const lineage = (id: number): number[] => {
      const out = [id];
      while (true) {
        const p = parents.get(id)!.parent;
        if (p === null) break;
        out.push(p);
        id = p;
      }
      return out; // id, ..., root
    };
    const fromCursor = lineage(graph.cursor);
    const toTarget = lineage(target);
    const ancestors = new Set(fromCursor);
    let meet = target;
    while (!ancestors.has(meet)) {
      meet = parents.get(meet)!.parent!;
    }
    const undos = fromCursor.indexOf(meet);
    const replay: number[] = [];
    for (const id of toTarget) {
      if (id === meet) break;
      replay.push(parents.get(id)!.direction!);
    }
    replay.reverse();
    return { undos, replay };
  }

  async navigateTo(target: number): Promise<void> {
    const doc = this.state.doc;
    const plan = this.navigationPlan(target);
    if (!doc || !plan || this.state.busy) return;
    this.state.busy = true;
    this.emit();
    try {
      let current = doc;
      for (let i = 0; i < plan.undos; i++) {
        current = await this.api.undo(current.id);
      }
      for (const k of plan.replay) {
        current = await this.api.mutate(current.id, k);
      }
      this.accept(current);
      await this.refreshGraph();
    } catch (e) {
      this.state.banner = { kind: "error", text: String(e) };
    } finally {
      this.state.busy = false;
      this.emit();
    }
  }

  toggle(name: keyof Toggles): void {
    this.state.toggles[name] = !this.state.toggles[name];
    this.emit();
  }
}
