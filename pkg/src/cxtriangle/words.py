"""Parser/printer/evaluator for the word notation naming group elements.

Grammar (whitespace between atoms is allowed and ignored):

    word  := atom*
    atom  := '~'? SYMBOL            inverse marked by a leading '~'
           | '(' word ')' '^' INT   INT nonzero, may be negative

SYMBOL is one of 1 2 3 J P Q.  The printer inserts a space after every
power atom so that exponent digits never merge with a following symbol.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import WordSyntaxError, CatalogError

_SYMBOLS = "123JPQ"


@dataclass(frozen=True)
class Gen:
    symbol: str
    inverted: bool = False


@dataclass(frozen=True)
class Power:
    word: "Word"
    exponent: int


@dataclass(frozen=True)
class Word:
    atoms: tuple

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.atoms + other.atoms)

    def is_identity(self) -> bool:
        return not self.atoms

    def __str__(self) -> str:
        parts = []
        for k, a in enumerate(self.atoms):
            if isinstance(a, Gen):
                parts.append(("~" if a.inverted else "") + a.symbol)
            else:
                parts.append(f"({a.word})^{a.exponent}")
                if k + 1 < len(self.atoms):
                    parts.append(" ")
        return "".join(parts)

    def __repr__(self):
        return f"Word('{self}')"


IDENTITY_WORD = Word(())


def parse(s: str) -> Word:
    """Parse a word string; raises WordSyntaxError with a position."""
    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < len(s) and s[pos].isspace():
            pos += 1

    def parse_word(depth: int) -> Word:
        nonlocal pos
        atoms = []
        while True:
            skip_ws()
            if pos >= len(s):
                break
            ch = s[pos]
            if ch == ")":
                if depth == 0:
                    raise WordSyntaxError("unbalanced ')'", pos)
                break
            if ch == "(":
                start = pos
                pos += 1
                sub = parse_word(depth + 1)
                skip_ws()
                if pos >= len(s) or s[pos] != ")":
                    raise WordSyntaxError("missing ')'", start)
                pos += 1
                skip_ws()
                if pos >= len(s) or s[pos] != "^":
                    raise WordSyntaxError("expected '^' after ')'", pos)
                pos += 1
                skip_ws()
                estart = pos
                if pos < len(s) and s[pos] == "-":
                    pos += 1
                while pos < len(s) and s[pos].isdigit():
                    pos += 1
                if pos == estart or s[estart:pos] == "-":
                    raise WordSyntaxError("expected exponent", estart)
                e = int(s[estart:pos])
                if e == 0:
                    raise WordSyntaxError("zero exponent", estart)
                atoms.append(Power(sub, e))
                continue
            inverted = False
            if ch == "~":
                inverted = True
                pos += 1
                if pos >= len(s):
                    raise WordSyntaxError("dangling '~'", pos - 1)
                ch = s[pos]
            if ch in _SYMBOLS:
                atoms.append(Gen(ch, inverted))
                pos += 1
            else:
                raise WordSyntaxError(f"unexpected character {ch!r}", pos)
        return Word(tuple(atoms))

    word = parse_word(0)
    skip_ws()
    if pos != len(s):
        raise WordSyntaxError("trailing input", pos)
    return word


def invert(w: Word) -> Word:
    out = []
    for a in reversed(w.atoms):
        if isinstance(a, Gen):
            out.append(Gen(a.symbol, not a.inverted))
        else:
            out.append(Power(a.word, -a.exponent))
    return Word(tuple(out))


_EXPAND_LIMIT = 10000


def _flatten(w: Word, out: list, sign: int = 1):
    atoms = reversed(w.atoms) if sign < 0 else w.atoms
    for a in atoms:
        if isinstance(a, Gen):
            out.append((a.symbol, -1 if (a.inverted ^ (sign < 0)) else 1))
        else:
            e = a.exponent * sign
            if abs(e) > _EXPAND_LIMIT:
                raise CatalogError("power too large to expand")
            for _ in range(abs(e)):
                _flatten(a.word, out, 1 if e > 0 else -1)
        if len(out) > _EXPAND_LIMIT:
            raise CatalogError("word too long to expand")


def free_reduce(w: Word) -> Word:
    """Expand powers, cancel adjacent inverse pairs, return a flat word."""
    flat: list = []
    _flatten(w, flat)
    stack: list = []
    for sym, e in flat:
        if stack and stack[-1][0] == sym and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append((sym, e))
    return Word(tuple(Gen(sym, e < 0) for sym, e in stack))


def evaluate(w: Word, g) -> "Mat3":
    """Exact matrix of the word in the group instance g."""
    from .forms import identity
    out = identity()
    for a in w.atoms:
        if isinstance(a, Gen):
            m = g.symbol_matrix(a.symbol)
            out = out * (m.inverse() if a.inverted else m)
        else:
            out = out * evaluate(a.word, g).power(a.exponent)
    return out


def evaluate_str(text: str, g) -> "Mat3":
    return evaluate(parse(text), g)
