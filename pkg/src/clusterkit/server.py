"""JSON-over-HTTP session API for interactive mutation exploration.

Endpoints (all under /v1):

    POST /v1/session                  {"b": [[...]]} | {"bt": {...}} | {"gca": {...}}
    GET  /v1/session/{id}             full state document
    POST /v1/session/{id}/mutate      {"k": <direction>}
    POST /v1/session/{id}/undo
    GET  /v1/session/{id}/graph       explored history tree

The server adds no semantics of its own: every state transition is a
library call, the history is a tree whose cursor moves (nodes are never
deleted), and all polynomial/vector content is rendered through the same
canonical text forms the library uses everywhere.
"""

from __future__ import annotations

import itertools
import json
import re
import secrets
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .exchange import (
    BudgetExceeded,
    ExchangeMatrix,
    ExtendedExchangeMatrix,
    classify_blocks,
)
from .gca import (
    gca_duality_check,
    gca_initial,
    gca_seed_to_json,
    gca_step_work_bound,
    mutate_gca,
    validate_data,
)
from .pattern import (
    canonical_seed,
    cluster_variable,
    d_vector,
    geometric_initial,
    geometric_step_work_bound,
    initial_seed,
    mutate,
    mutate_geometric,
    principal_step_work_bound,
    seed_to_json,
    verify_invariants,
)
from .polyring import poly_to_json, to_text


class ApiError(Exception):
    def __init__(self, status, message):
        super().__init__(message)
        self.status = status
        self.message = message


STEP_WORK_LIMIT = 2_000_000  # keeps interactive mutations at sub-second cost


class Session:
    """History tree of seeds with a cursor; single-writer via its own lock."""

    def __init__(self, sid, kind, root_seed):
        self.id = sid
        self.kind = kind  # "principal" | "geometric" | "gca"
        self.nodes = [{"seed": root_seed, "parent": None, "direction": None, "children": {}}]
        self.cursor = 0
        self.lock = threading.Lock()

    @property
    def seed(self):
        return self.nodes[self.cursor]["seed"]

    def mutate(self, k):
        node = self.nodes[self.cursor]
        if node["direction"] == k and node["parent"] is not None:
            # mutation is involutive: re-mutating the arriving direction walks
            # back up the same tree edge instead of forking a duplicate node
            self.cursor = node["parent"]
            return
        if k in node["children"]:
            self.cursor = node["children"][k]
            return
        seed = node["seed"]
        if self.kind == "principal":
            bound = principal_step_work_bound(seed, k)
        elif self.kind == "geometric":
            bound = geometric_step_work_bound(seed, k)
        else:
            bound = gca_step_work_bound(seed, k)
        if bound > STEP_WORK_LIMIT:
            raise BudgetExceeded(
                "this mutation would outgrow the session work budget; wild "
                "patterns grow doubly exponentially"
            )
        if self.kind == "principal":
            new = mutate(seed, k)
        elif self.kind == "geometric":
            new = mutate_geometric(seed, k)
        else:
            new = mutate_gca(seed, k)
        idx = len(self.nodes)
        self.nodes.append({"seed": new, "parent": self.cursor, "direction": k, "children": {}})
        node["children"][k] = idx
        self.cursor = idx

    def undo(self):
        parent = self.nodes[self.cursor]["parent"]
        if parent is None:
            raise ApiError(400, "already at the root seed")
        self.cursor = parent


def _finite_type_badge(B):
    try:
        labels = classify_blocks(B, max_matrices=2000, max_depth=8)
    except BudgetExceeded:
        return "unknown (budget)"
    if any(l is None for l in labels):
        return "infinite"
    return " x ".join(str(l) for l in labels)


def _quiver_doc(rows, n, m=0):
    arrows = []
    for i in range(n + m):
        for j in range(n):
            v = rows[i][j]
            if v > 0:
                back = -rows[j][i] if i < n else v
                arrows.append([i + 1, j + 1, v, back])
    return {
        "n": n,
        "m": m,
        "frozen": list(range(n + 1, n + m + 1)),
        "arrows": arrows,
    }


def _same_unlabeled_principal(a, b):
    ca, cb = canonical_seed(a), canonical_seed(b)
    return (ca.b, ca.c, ca.g, ca.f) == (cb.b, cb.c, cb.g, cb.f)


def _same_unlabeled_geometric(a, b):
    n = a.n
    if n > 6:
        return a.bt == b.bt and a.x == b.x
    rows_a, rows_b = a.bt.all_rows(), b.bt.all_rows()
    for perm in itertools.permutations(range(n)):
        if all(a.x[perm[i]] == b.x[i] for i in range(n)) and all(
            rows_a[perm[i] if i < n else i][perm[j]] == rows_b[i if i < n else i][j]
            for i in range(n + a.m)
            for j in range(n)
        ):
            return True
    return False


def session_state_doc(session):
    seed = session.seed
    root = session.nodes[0]["seed"]
    node = session.nodes[session.cursor]
    # No history metadata beyond the cursor: mutate-then-undo must return a
    # document deep-equal to the pre-mutation one (the tree lives in /graph).
    doc = {
        "id": session.id,
        "kind": session.kind,
        "cursor": session.cursor,
        "can_undo": node["parent"] is not None,
        "path": list(seed.path),
    }
    if session.kind == "principal":
        n = seed.n
        doc["seed"] = seed_to_json(seed)
        doc["n"] = n
        doc["quiver"] = _quiver_doc(seed.b.rows, n)
        doc["f_polynomials"] = seed.f_text()
        doc["c_vectors"] = [[seed.c[i][j] for i in range(n)] for j in range(n)]
        doc["g_vectors"] = [[seed.g[i][j] for i in range(n)] for j in range(n)]
        doc["cluster_variables"] = [to_text(cluster_variable(seed, i)) for i in range(1, n + 1)]
        doc["d_vectors"] = [list(d_vector(seed, i)) for i in range(1, n + 1)]
        doc["finite_type"] = _finite_type_badge(seed.b0)
        doc["invariants"] = verify_invariants(seed)
        doc["same_as_root_labeled"] = (seed.b, seed.c, seed.g, seed.f) == (
            root.b,
            root.c,
            root.g,
            root.f,
        )
        doc["same_as_root_unlabeled"] = _same_unlabeled_principal(seed, root)
    elif session.kind == "geometric":
        n, m = seed.n, seed.m
        doc["n"] = n
        doc["m"] = m
        doc["bt"] = seed.bt.to_json()
        doc["quiver"] = _quiver_doc(seed.bt.all_rows(), n, m)
        doc["cluster_variables"] = [to_text(x) for x in seed.x]
        strong = all(
            not any(e < 0 for e in x.min_exponents(range(n, n + m))) for x in seed.x
        )
        doc["invariants"] = {"frozen_exponents_nonnegative": strong, "ok": strong}
        doc["finite_type"] = _finite_type_badge(seed.bt.top)
        doc["same_as_root_labeled"] = seed.bt == root.bt and seed.x == root.x
        doc["same_as_root_unlabeled"] = _same_unlabeled_geometric(seed, root)
    else:
        n = seed.n
        doc["seed"] = gca_seed_to_json(seed)
        doc["n"] = n
        doc["quiver"] = _quiver_doc(seed.b.rows, n)
        doc["f_polynomials"] = [to_text(f) for f in seed.f]
        doc["c_vectors"] = [[seed.c[i][j] for i in range(n)] for j in range(n)]
        doc["g_vectors"] = [[seed.g[i][j] for i in range(n)] for j in range(n)]
        doc["invariants"] = gca_duality_check(seed)
        doc["finite_type"] = _finite_type_badge(seed.b0)
        same = (seed.b, seed.c, seed.g, seed.f) == (root.b, root.c, root.g, root.f)
        doc["same_as_root_labeled"] = same
        doc["same_as_root_unlabeled"] = same
    return doc


def graph_doc(session):
    return {
        "root": 0,
        "cursor": session.cursor,
        "nodes": [
            {"id": i, "parent": nd["parent"], "direction": nd["direction"]}
            for i, nd in enumerate(session.nodes)
        ],
    }


class SessionStore:
    def __init__(self):
        self.sessions = {}
        self.lock = threading.Lock()

    def create(self, payload):
        if "b" in payload:
            try:
                seed = initial_seed(ExchangeMatrix(payload["b"]))
            except Exception as e:
                raise ApiError(400, f"bad exchange matrix: {e}")
            kind = "principal"
        elif "bt" in payload:
            try:
                bt = payload["bt"]
                if isinstance(bt, dict):
                    mat = ExtendedExchangeMatrix(ExchangeMatrix(bt["top"]), tuple(
                        tuple(int(x) for x in row) for row in bt["bottom"]
                    ))
                else:
                    mat = ExtendedExchangeMatrix.from_rows(bt, int(payload["n"]))
                seed = geometric_initial(mat)
            except ApiError:
                raise
            except Exception as e:
                raise ApiError(400, f"bad extended matrix: {e}")
            kind = "geometric"
        elif "gca" in payload:
            try:
                spec = payload["gca"]
                data = validate_data(spec["r"], spec.get("z"))
                seed = gca_initial(ExchangeMatrix(spec["b"]), data)
            except Exception as e:
                raise ApiError(400, f"bad mutation data: {e}")
            kind = "gca"
        else:
            raise ApiError(400, "payload must contain one of: b, bt, gca")
        sid = secrets.token_hex(8)
        session = Session(sid, kind, seed)
        with self.lock:
            self.sessions[sid] = session
        return session

    def get(self, sid):
        with self.lock:
            session = self.sessions.get(sid)
        if session is None:
            raise ApiError(404, f"unknown session {sid}")
        return session


_ROUTES = [
    ("POST", re.compile(r"^/v1/session$"), "create"),
    ("GET", re.compile(r"^/v1/session/([0-9a-f]+)$"), "state"),
    ("POST", re.compile(r"^/v1/session/([0-9a-f]+)/mutate$"), "mutate"),
    ("POST", re.compile(r"^/v1/session/([0-9a-f]+)/undo$"), "undo"),
    ("GET", re.compile(r"^/v1/session/([0-9a-f]+)/graph$"), "graph"),
]


def make_handler(store):
    class Handler(BaseHTTPRequestHandler):
        def _send(self, status, doc):
            body = json.dumps(doc).encode()
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.end_headers()
            self.wfile.write(body)

        def _payload(self):
            length = int(self.headers.get("Content-Length") or 0)
            if not length:
                return {}
            try:
                return json.loads(self.rfile.read(length).decode())
            except json.JSONDecodeError:
                raise ApiError(400, "request body is not valid JSON")

        def _dispatch(self, method):
            for want, pattern, action in _ROUTES:
                if want != method:
                    continue
                m = pattern.match(self.path)
                if not m:
                    continue
                try:
                    if action == "create":
                        session = store.create(self._payload())
                        with session.lock:
                            self._send(200, session_state_doc(session))
                        return
                    session = store.get(m.group(1))
                    if action == "state":
                        with session.lock:
                            self._send(200, session_state_doc(session))
                    elif action == "graph":
                        with session.lock:
                            self._send(200, graph_doc(session))
                    elif action == "mutate":
                        payload = self._payload()
                        k = payload.get("k")
                        with session.lock:
                            seed = session.seed
                            if not isinstance(k, int) or not 1 <= k <= seed.n:
                                raise ApiError(400, f"bad direction {k!r}")
                            try:
                                session.mutate(k)
                            except (BudgetExceeded, MemoryError) as e:
                                raise ApiError(409, str(e))
                            self._send(200, session_state_doc(session))
                    elif action == "undo":
                        with session.lock:
                            session.undo()
                            self._send(200, session_state_doc(session))
                except ApiError as e:
                    self._send(e.status, {"error": e.message})
                except Exception as e:  # pragma: no cover - defensive
                    self._send(500, {"error": f"{type(e).__name__}: {e}"})
                return
            self._send(404, {"error": f"no route for {method} {self.path}"})

        def do_GET(self):
            self._dispatch("GET")

        def do_POST(self):
            self._dispatch("POST")

        def do_OPTIONS(self):
            self._send(200, {})

        def log_message(self, fmt, *args):  # keep test output clean
            pass

    return Handler


def make_server(port=0, host="127.0.0.1"):
    store = SessionStore()
    server = ThreadingHTTPServer((host, port), make_handler(store))
    server.store = store
    return server


def serve(port, host="127.0.0.1"):
    server = make_server(port=port, host=host)
    addr = server.server_address
    print(f"listening on http://{addr[0]}:{addr[1]}/v1")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
