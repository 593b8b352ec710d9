// Typed client for the /v1 session API. The client performs no math: it
// moves server documents around verbatim.

export interface QuiverDoc {
  n: number;
  m: number;
  frozen: number[];
  // [from, to, multiplicity, reverse multiplicity]
  arrows: [number, number, number, number][];
}

export interface InvariantReport {
  ok: boolean;
  [check: string]: boolean;
}

export interface StateDoc {
  id: string;
  kind: "principal" | "geometric" | "gca";
  cursor: number;
  can_undo: boolean;
  path: number[];
  n: number;
  quiver: QuiverDoc;
  finite_type: string;
  invariants: InvariantReport;
  same_as_root_labeled: boolean;
  same_as_root_unlabeled: boolean;
  f_polynomials?: string[];
  cluster_variables?: string[];
  c_vectors?: number[][];
  g_vectors?: number[][];
  d_vectors?: number[][];
  [extra: string]: unknown;
}

export interface GraphNode {
  id: number;
  parent: number | null;
  direction: number | null;
}

export interface GraphDoc {
  root: number;
  cursor: number;
  nodes: GraphNode[];
}

export type CreatePayload =
  | { b: number[][] }
  | { bt: number[][]; n: number }
  | { gca: { b: number[][]; r: number[]; z?: (string | number)[][] } };

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class SessionApi {
  constructor(private baseUrl: string) {}

  private async call<T>(method: string, path: string, body?: unknown): Promise<T> {
    const resp = await fetch(`${this.baseUrl}${path}`, {
      method,
      headers: { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const doc = await resp.json();
    if (!resp.ok) {
      throw new ApiError(resp.status, (doc as { error?: string }).error ?? resp.statusText);
    }
    return doc as T;
  }

  create(payload: CreatePayload): Promise<StateDoc> {
    return this.call("POST", "/v1/session", payload);
  }

  state(id: string): Promise<StateDoc> {
    return this.call("GET", `/v1/session/${id}`);
  }

  mutate(id: string, k: number): Promise<StateDoc> {
    return this.call("POST", `/v1/session/${id}/mutate`, { k });
  }

  undo(id: string): Promise<StateDoc> {
    return this.call("POST", `/v1/session/${id}/undo`);
  }

  graph(id: string): Promise<GraphDoc> {
    return this.call("GET", `/v1/session/${id}/graph`);
  }
}
