"""Tietze simplification of involutive presentations."""
import logging
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from zappatic.models.certificate import OrderCertificate
from zappatic.models.presentation import Generator, Presentation, Word, WordError

logger = logging.getLogger(__name__)


class TietzeError(ValueError):
    """A requested elimination has no defining relator."""


def _normalize(relators: Iterable[Word]) -> List[Word]:
    """Cyclically reduce, drop trivial relators and duplicates up to rotation and inversion."""
    result: List[Word] = []
    seen = set()
    for rel in relators:
        word = rel.cyclically_reduced(True)
        if not word:
            continue
        key = word.normal_form(True)
        if key in seen:
            continue
        seen.add(key)
        result.append(word)
    return result


def _pick(relators: Sequence[Word], alphabet: Sequence[Generator],
          keep: Optional[Set[Generator]]) -> Optional[Tuple[Generator, int]]:
    """Best (generator, relator index) for an elimination, or None.

    Preference: definitions free of other removable generators, then
    shorter relators, then primed generators, then lower line ids.
    """
    removable = {g for g in alphabet if keep is None or g not in keep}
    best = None
    for index, rel in enumerate(relators):
        counts: Dict[Generator, int] = {}
        for gen, _ in rel:
            counts[gen] = counts.get(gen, 0) + 1
        for gen, count in counts.items():
            if count != 1 or gen not in removable:
                continue
            if keep is None:
                foreign = sum(n for g, n in counts.items() if g != gen and g.primed)
            else:
                foreign = sum(n for g, n in counts.items() if g != gen and g in removable)
            key = (foreign, len(rel), 0 if gen.primed else 1, gen.line, index)
            if best is None or key < best[0]:
                best = (key, gen, index)
    return None if best is None else (best[1], best[2])


def _definition(rel: Word, gen: Generator) -> Word:
    """Solve ``rel = e`` for the single occurrence of ``gen``."""
    position = next(k for k, (g, _) in enumerate(rel) if g == gen)
    rest = Word(rel.rotated(position).letters[1:])
    return rest.inverse().involutive().reduced(True)


def tietze_simplify(p: Presentation, target: Optional[Iterable[Generator]] = None,
                    consequences: Sequence[Word] = (), strict: bool = True,
                    certificate: Optional[OrderCertificate] = None) -> Presentation:
    """Eliminate generators by substitution until none is defined by a relator.

    With ``target`` the generators outside it are eliminated and the ones in
    it are kept; a leftover generator raises ``TietzeError`` unless
    ``strict`` is off. Relators in ``consequences`` are added first. With an
    exact ``certificate`` each one is checked against the faithful image and
    recorded in ``proven``; without one the caller vouches for them and they
    are recorded in ``assumed``.
    """
    if not p.involutive:
        raise TietzeError("tietze_simplify needs an involutive presentation")
    alphabet = list(p.alphabet)
    keep = None
    if target is not None:
        keep = set(target)
        unknown = keep - set(alphabet)
        if unknown:
            raise TietzeError(f"Target generators outside the alphabet: {' '.join(str(g) for g in sorted(unknown))}")

    extra = [w.involutive().reduced(True) for w in consequences]
    for word in extra:
        if word.generators() - set(alphabet):
            raise WordError(f"Consequence {word} uses generators outside the alphabet")
    proven: Tuple[Word, ...] = ()
    assumed: Tuple[Word, ...] = ()
    if extra and certificate is not None:
        if not certificate.faithful:
            raise TietzeError("Consequences can only be proven with an exact order certificate")
        failed = [w for w in extra if not certificate.is_consequence(w)]
        if failed:
            raise TietzeError(f"Not a consequence of the relators: {failed[0]}")
        proven = tuple(extra)
        logger.info(f"Adding {len(extra)} consequence relators proven in the faithful image")
    elif extra:
        assumed = tuple(extra)
        logger.warning(f"Adding {len(extra)} assumed consequence relators before simplification")

    relators = _normalize(list(p.relators) + extra)
    definitions: List[Tuple[Generator, Word]] = list(p.definitions)

    while True:
        choice = _pick(relators, alphabet, keep)
        if choice is None:
            break
        gen, index = choice
        rel = relators.pop(index)
        value = _definition(rel, gen)
        mapping = {gen: value}
        relators = _normalize(r.substitute(mapping) for r in relators)
        definitions = [(g, w.substitute(mapping).reduced(True)) for g, w in definitions]
        definitions.append((gen, value))
        alphabet.remove(gen)
        logger.debug(f"Eliminated {gen} := {value or 'e'} ({len(alphabet)} generators left)")

    if keep is not None and strict:
        leftover = [g for g in alphabet if g not in keep]
        if leftover:
            raise TietzeError(f"No defining relator for: {' '.join(str(g) for g in leftover)}")

    result = Presentation(tuple(alphabet), tuple(relators), True, tuple(definitions),
                          tuple(p.assumed) + assumed, tuple(p.proven) + proven)
    logger.info(f"Tietze: {p.generator_count} -> {result.generator_count} generators, "
                f"{len(p.relators)} -> {len(result.relators)} relators")
    return result
