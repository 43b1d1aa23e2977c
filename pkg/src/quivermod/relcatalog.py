"""Named relation catalogs transcribed from displayed equations.

A relation file carries verbatim generator words (in the documented word
text format, with the file's label base) plus relations written as
expressions over the generator names.  Expression syntax:

    factor ::= atom ['^' int]
    atom   ::= NAME | '(' expr ')' | '[' expr ',' expr ']'
    expr   ::= factor factor ...

Adjacent factors multiply in composition order (the rightmost factor acts
first), matching how the source equations are written; '[a,b]' is the
commutator a b a^-1 b^-1.  Keeping the words as data instead of
generating them means a transcription slip shows up as a failing
verification, not silent drift.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .catalog import load_quiver, load_relation_file
from .errors import WordSyntaxError
from .words import MutationWord, commutator, compose, power

_EXPR_TOKEN = re.compile(r"\s*(\^-?\d+|[()\[\],]|[A-Za-z_][A-Za-z0-9_]*)")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _EXPR_TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise WordSyntaxError(
                    f"cannot tokenize expression at {pos}: {text!r}", position=pos)
            break
        out.append(m.group(1))
        pos = m.end()
    return out


class _ExprParser:
    def __init__(self, tokens, words):
        self.tokens = tokens
        self.pos = 0
        self.words = words

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse_expr(self, stop=()):
        factors = []
        while self.peek() is not None and self.peek() not in stop:
            factors.append(self.parse_factor())
        if not factors:
            raise WordSyntaxError("empty expression")
        return compose(*factors)

    def parse_factor(self):
        word = self.parse_atom()
        if self.peek() and self.peek().startswith("^"):
            word = power(word, int(self.take()[1:]))
        return word

    def parse_atom(self):
        tok = self.take()
        if tok == "(":
            inner = self.parse_expr(stop=(")",))
            if self.take() != ")":
                raise WordSyntaxError("unbalanced parenthesis")
            return inner
        if tok == "[":
            left = self.parse_expr(stop=(",",))
            if self.take() != ",":
                raise WordSyntaxError("commutator needs two arguments")
            right = self.parse_expr(stop=("]",))
            if self.take() != "]":
                raise WordSyntaxError("unbalanced commutator bracket")
            return commutator(left, right)
        if tok in self.words:
            return self.words[tok]
        raise WordSyntaxError(f"unknown generator {tok!r}")


def parse_expression(text, words, n):
    """Expression over named generator words -> MutationWord."""
    text = text.strip()
    if text in ("1", ""):
        return MutationWord.identity(n)
    return _ExprParser(_tokenize(text), words).parse_expr()


@dataclass(frozen=True)
class CatalogRelation:
    name: str
    lhs: MutationWord
    rhs: MutationWord

    @property
    def loop_word(self):
        return (self.lhs + self.rhs.inverse()).normalize()


@dataclass(frozen=True)
class RelationCatalog:
    name: str
    quiver_name: str
    matrix: object
    words: dict
    relations: tuple


def load_catalog(name) -> RelationCatalog:
    data = load_relation_file(name)
    quiver = load_quiver(data["quiver"])
    base = data.get("base", 0)
    words = {}
    for gname, text in data.get("words", {}).items():
        words[gname] = MutationWord.parse(text, quiver.n, base=base)
    for gname, expr in data.get("defs", []):
        words[gname] = parse_expression(expr, words, quiver.n)
    relations = []
    for rel in data["relations"]:
        relations.append(CatalogRelation(
            name=rel["name"],
            lhs=parse_expression(rel["lhs"], words, quiver.n),
            rhs=parse_expression(rel.get("rhs", "1"), words, quiver.n),
        ))
    return RelationCatalog(
        name=name,
        quiver_name=data["quiver"],
        matrix=quiver,
        words=words,
        relations=tuple(relations),
    )
