"""Local HTTP service backing the interactive explorer.

Sessions are in-memory with least-recently-used eviction; each session
serializes its own requests.  The state machine tracks the exchange
matrix, the applied word and the C-matrix, so loop/triviality feedback is
integer-only (the documented c-matrix criterion).  The explorer renders
only what this service returns; it never mutates matrices client-side.
"""

from __future__ import annotations

import itertools
import threading
from collections import OrderedDict

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from . import catalog as cat
from .errors import FrozenVertexError, InvalidPermutationError, QuiverError, WordSyntaxError
from .matrix import ExchangeMatrix
from .perms import Permutation
from .seed import _identity_rows, _mutate_c
from .words import MutationWord

MAX_SESSIONS = 256


class Session:
    """Replayable mutation session: base quiver plus applied tokens."""

    def __init__(self, sid, base: ExchangeMatrix):
        self.id = sid
        self.base = base
        self.lock = threading.Lock()
        # parallel stacks: applied tokens and the states they produced
        self.tokens = []
        self.states = [(base, _identity_rows(base.n))]

    @property
    def current(self):
        return self.states[-1]

    def mutate(self, k):
        matrix, c = self.current
        if not 0 <= k < matrix.n:
            raise IndexError(k)
        if k in matrix.frozen:
            raise FrozenVertexError(f"vertex {k} is frozen")
        new_c = _mutate_c(c, matrix.entries, k, matrix.n)
        self.tokens.append(("m", k))
        self.states.append((matrix.mutate(k), new_c))

    def permute(self, perm: Permutation):
        matrix, c = self.current
        matrix.check_permutation(perm)
        inv = perm.inverse()
        new_c = tuple(tuple(row[inv(j)] for j in range(matrix.n)) for row in c)
        self.tokens.append(("p", perm))
        self.states.append((matrix.permute(perm), new_c))

    def undo(self):
        if not self.tokens:
            raise IndexError("history is empty")
        self.tokens.pop()
        self.states.pop()

    def word(self) -> MutationWord:
        return MutationWord(self.base.n, self.tokens)

    def state_payload(self, normalize=False):
        matrix, c = self.current
        is_loop = matrix == self.base
        payload = {
            "id": self.id,
            "n": matrix.n,
            "matrix": [list(row) for row in matrix.entries],
            "weights": list(matrix.weights),
            "frozen": sorted(matrix.frozen),
            "word": self.word().format(),
            "undo_depth": len(self.tokens),
            "is_loop": is_loop,
            "loop_trivial": (c == _identity_rows(matrix.n)) if is_loop else None,
            "c_matrix": [list(row) for row in c],
            "base": self.base.to_dict(),
        }
        if normalize:
            payload["normalized_word"] = self.word().normalize().format()
        return payload


class CreateSession(BaseModel):
    catalog: str | None = None
    quiver: dict | None = None


class MutateRequest(BaseModel):
    k: int | None = None
    perm: str | None = None


def create_app() -> FastAPI:
    app = FastAPI(title="quivermod service")
    sessions: OrderedDict[str, Session] = OrderedDict()
    table_lock = threading.Lock()
    counter = itertools.count(1)

    def get_session(sid) -> Session:
        with table_lock:
            if sid not in sessions:
                raise HTTPException(status_code=404, detail="unknown session")
            sessions.move_to_end(sid)
            return sessions[sid]

    @app.get("/catalog")
    def catalog_index():
        out = []
        for name in cat.catalog_names():
            matrix = cat.load_quiver(name)
            out.append({"name": name, "n": matrix.n,
                        "weights": list(matrix.weights),
                        "frozen": sorted(matrix.frozen)})
        return {"quivers": out}

    @app.post("/sessions")
    def create_session(req: CreateSession):
        if (req.catalog is None) == (req.quiver is None):
            raise HTTPException(status_code=422,
                                detail="provide exactly one of catalog|quiver")
        try:
            if req.catalog is not None:
                base = cat.load_quiver(req.catalog)
            else:
                base = ExchangeMatrix.from_dict(req.quiver)
        except QuiverError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        with table_lock:
            sid = f"s{next(counter)}"
            sessions[sid] = Session(sid, base)
            while len(sessions) > MAX_SESSIONS:
                sessions.popitem(last=False)
        session = sessions[sid]
        return {"id": sid, "state": session.state_payload()}

    @app.get("/sessions/{sid}")
    def get_state(sid: str, normalize: bool = False):
        session = get_session(sid)
        with session.lock:
            return session.state_payload(normalize=normalize)

    @app.post("/sessions/{sid}/mutate")
    def mutate(sid: str, req: MutateRequest):
        session = get_session(sid)
        if (req.k is None) == (req.perm is None):
            raise HTTPException(status_code=422,
                                detail="provide exactly one of k|perm")
        with session.lock:
            try:
                if req.k is not None:
                    session.mutate(req.k)
                else:
                    perm = Permutation.parse(req.perm, session.base.n)
                    session.permute(perm)
            except (FrozenVertexError, InvalidPermutationError,
                    WordSyntaxError, IndexError) as exc:
                raise HTTPException(status_code=422, detail=str(exc))
            return session.state_payload()

    @app.post("/sessions/{sid}/undo")
    def undo(sid: str):
        session = get_session(sid)
        with session.lock:
            try:
                session.undo()
            except IndexError:
                raise HTTPException(status_code=409, detail="history is empty")
            return session.state_payload()

    @app.get("/sessions/{sid}/dot")
    def dot(sid: str):
        session = get_session(sid)
        with session.lock:
            matrix = session.current[0]
        lines = ["digraph quiver {"]
        for i in range(matrix.n):
            shape = "box" if i in matrix.frozen else "circle"
            lines.append(f'  v{i} [label="{i}", shape={shape}];')
        for i in range(matrix.n):
            for j in range(matrix.n):
                count = matrix.arrow_count(i, j)
                for _ in range(count):
                    lines.append(f"  v{i} -> v{j};")
        lines.append("}")
        return {"dot": "\n".join(lines)}

    return app


app = create_app()
