"""
Closed Words
============

Every multi-output entry, every disc reading and every cochain on a
boundary quiver is handled here through one object: its closed word.

    entry   blocks a^1 .. a^n, outputs o_1 .. o_n, coefficient c
    u_i     the closing letter partner(o_i)
    ref     (u_n, ..., u_1, a^1, ..., a^n)
    ccw     (a^n, u_{n-1}, a^{n-1}, ..., u_1, a^1, u_n)

The value of the entry on a closed word is Omega(w) = kappa(w -> ref) * c,
where kappa is the Koszul sign, on letter degrees, of putting w back in
reference order. Rotating a closed word multiplies Omega by the rotation
sign, so an entry can be read off at any letter:

    reading at letter z:   inputs = the word after z, cyclically
                           output = partner(z)
                           coef   = s * Gamma(partner(z), z) * Omega(...)

with s = +1 when z closes an output and s = -1 when z is an input.
A cochain (w, y, coef) has Omega(w + (partner(y),)) = Gamma(y, partner(y)) * coef,
which is what decode() inverts.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction

from errors import SignatureMismatch
from grading import reorder_sign, rotation_sign
from multimap import Ambient, Entry, MultiElement, accumulate
from quiver import BasisVector, BilinearForm, pair_sign, partner

Word = tuple[BasisVector, ...]

OUT = "out"
IN = "in"

# =============================================================================
# TUPLE REVERSAL
# =============================================================================


def reversed_tuples(items: Sequence) -> tuple:
    """x^n, ..., x^1 from x^1, ..., x^n; the only place blocks are reversed."""
    return tuple(reversed(tuple(items)))


# =============================================================================
# ENTRY WORDS
# =============================================================================


def closing_letters(entry: Entry, d: int) -> Word:
    return tuple(partner(o, d) for o in entry.outputs)


def reference_word(entry: Entry, d: int) -> Word:
    return reversed_tuples(closing_letters(entry, d)) + entry.letters()


def ccw_positions(entry: Entry) -> list[int]:
    """Reference indices of the letters of the ccw word, in ccw order."""
    n = entry.n
    starts = []
    offset = n
    for block in entry.blocks:
        starts.append(offset)
        offset += len(block)
    order: list[int] = []
    for i in range(n, 0, -1):
        order.extend(range(starts[i - 1], starts[i - 1] + len(entry.blocks[i - 1])))
        if i > 1:
            order.append(n - (i - 1))
    order.append(0)
    return order


def ccw_word(entry: Entry, d: int) -> tuple[Word, int]:
    """The ccw word of an entry and kappa(ccw -> ref)."""
    ref = reference_word(entry, d)
    order = ccw_positions(entry)
    kappa = reorder_sign(order, [a.sdeg for a in ref])
    return tuple(ref[i] for i in order), kappa


def arrow_position(entry: Entry, kind: str, index: int) -> int:
    """
    Position in the ccw word of arrow out_k or in_j (both 1-based).

    Incoming arrows are numbered through the blocks in block order.
    """
    n = entry.n
    lengths = [len(b) for b in entry.blocks]
    if kind == OUT:
        if not 1 <= index <= n:
            raise SignatureMismatch(f"out_{index} on an entry with {n} outputs")
        if index == n:
            return sum(lengths) + n - 1
        # block n, u_{n-1}, ..., block k+1, u_k
        return sum(lengths[index:]) + (n - 1 - index)
    total = sum(lengths)
    if not 1 <= index <= total:
        raise SignatureMismatch(f"in_{index} on an entry with {total} inputs")
    block, before = 0, index - 1
    while before >= lengths[block]:
        before -= lengths[block]
        block += 1
    # everything in blocks n .. block+2 and their closing letters comes first
    later = lengths[block + 1 :]
    return sum(later) + len(later) + before


def read_at(
    entry: Entry, coefficient: Fraction, d: int, position: int
) -> tuple[Word, BasisVector, Fraction]:
    """Cochain obtained by reading the entry at one letter of its ccw word."""
    word, kappa = ccw_word(entry, d)
    z = word[position]
    inputs = word[position + 1 :] + word[:position]
    output = partner(z, d)
    degrees = [a.sdeg for a in word]
    omega = rotation_sign(degrees, position + 1) * kappa * Fraction(coefficient)
    incoming = position not in _closing_positions(entry)
    s = -1 if incoming else 1
    return inputs, output, s * pair_sign(output, z, d) * omega


def _closing_positions(entry: Entry) -> set[int]:
    return {arrow_position(entry, OUT, k) for k in range(1, entry.n + 1)}


# =============================================================================
# DECODING
# =============================================================================


def closed_value(inputs: Word, output: BasisVector, coefficient: Fraction, d: int) -> Fraction:
    """Omega(inputs + (partner(output),)) of a cochain entry."""
    return pair_sign(output, partner(output, d), d) * Fraction(coefficient)


def decode_closed(word: Word, omega: Fraction, d: int) -> tuple[Entry, Fraction]:
    """
    Entry whose ccw word is `word`, with coefficient kappa * omega.

    The last letter closes output n whatever its kind; the dual letters
    before it are the closing letters u_{n-1}, ..., u_1 in order of appearance.
    """
    if not word:
        raise SignatureMismatch("cannot decode an empty closed word")
    segments: list[list[BasisVector]] = [[]]
    closers: list[BasisVector] = []
    for a in word[:-1]:
        if a.dual:
            closers.append(a)
            segments.append([])
        else:
            segments[-1].append(a)
    closers = reversed_tuples(closers) + (word[-1],)  # u_1 .. u_n
    blocks = reversed_tuples(tuple(seg) for seg in segments)  # a^1 .. a^n
    entry = Entry(blocks, tuple(partner(u, d) for u in closers))
    rebuilt, kappa = ccw_word(entry, d)
    assert rebuilt == tuple(word)
    return entry, kappa * Fraction(omega)


def decode(
    inputs: Word, output: BasisVector, coefficient: Fraction, d: int
) -> tuple[Entry, Fraction]:
    """Inverse of the map from multi-output entries to cochains with the last output."""
    z = partner(output, d)
    return decode_closed(tuple(inputs) + (z,), closed_value(inputs, output, coefficient, d), d)


def first_dual_rotation(word: Word, start: int = 0) -> int:
    """Index of the first dual letter at or after start, cyclically."""
    L = len(word)
    for step in range(L):
        r = (start + step) % L
        if word[r].dual:
            return r
    raise SignatureMismatch("closed word has no dual letter")


def decode_element(cochains: MultiElement, ambient: Ambient = Ambient.NECKLACE) -> MultiElement:
    """Decode every cochain entry of a hochschild element."""
    terms: dict[Entry, Fraction] = {}
    d = cochains.d
    for entry, value in cochains.terms.items():
        inputs, output = entry.blocks[0], entry.outputs[0]
        decoded, c = decode(inputs, output, value, d)
        accumulate(terms, decoded, c)
    return MultiElement(
        ambient,
        cochains.quiver,
        d,
        cochains.degree,
        terms,
        cochains.truncation,
        cochains.target,
        cochains.phi0,
    )


# =============================================================================
# CLOSED FUNCTIONALS
# =============================================================================


def closed_values(E: MultiElement, form: BilinearForm | None = None) -> dict[Word, Fraction]:
    """
    Omega of a cochain element on every closed word it reaches.

    With a form, an entry (w, y) contributes coef * Gamma(y, z) to w + (z,)
    for every z paired with y; without one, z = partner(y) and Gamma is
    the natural pairing.
    """
    values: dict[Word, Fraction] = {}
    for entry, value in E.terms.items():
        inputs, y = entry.blocks[0], entry.outputs[0]
        if form is None:
            pairs = [(partner(y, E.d), Fraction(pair_sign(y, partner(y, E.d), E.d)))]
        else:
            pairs = form.pairs_with(y)
        for z, gamma in pairs:
            word = inputs + (z,)
            total = values.get(word, Fraction(0)) + gamma * Fraction(value)
            if total:
                values[word] = total
            else:
                values.pop(word, None)
    return values


def rotations(word: Word) -> Iterable[tuple[int, Word]]:
    for r in range(1, len(word)):
        yield r, word[r:] + word[:r]


def cyclic_residual(values: Mapping[Word, Fraction]) -> list[tuple[Word, Word, Fraction]]:
    """
    Violations of Omega(w[r:] + w[:r]) == rotation_sign * Omega(w).

    Returns (base word, rotated word, actual - expected) per violation;
    each rotation class is examined once, from its smallest stored word.
    """
    failures = []
    seen: set[Word] = set()
    for word in sorted(values):
        if word in seen:
            continue
        seen.add(word)
        degrees = [a.sdeg for a in word]
        base = values[word]
        for r, rotated in rotations(word):
            seen.add(rotated)
            expected = rotation_sign(degrees, r) * base
            actual = values.get(rotated, Fraction(0))
            if actual != expected:
                failures.append((word, rotated, actual - expected))
    return failures
