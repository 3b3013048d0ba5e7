import logging
import time
from typing import Dict, Optional, Sequence, Tuple

from zappatic.models.certificate import ChainStep, OrderCertificate
from zappatic.models.coset_table import CosetTable, regular_table
from zappatic.models.degeneration import Degeneration
from zappatic.models.presentation import Presentation, Word, as_word
from zappatic.models.settings_model import EnumerationConfig, normalize_strategy
from zappatic.models.verdict import Verdict
from zappatic.strategies.felsch_strategy import FelschStrategy
from zappatic.strategies.hlt_strategy import HLTStrategy
from zappatic.utils.chain import (coxeter_forest, forest_letters, image_order, peel_sequence, restrict,
                                  single_letter_order)
from zappatic.utils.family import build_family, transposition_graph_connected, transposition_map
from zappatic.utils.permutations import TranspositionMap, degree_of, image_check
from zappatic.utils.relators import assemble_g1, prime_identifications, reduced_generators
from zappatic.utils.tietze import TietzeError, tietze_simplify

# Strategy type mapping
STRATEGY_TYPES = {
    'felsch': FelschStrategy,
    'hlt': HLTStrategy,
}


class CosetEngine:
    def __init__(self, config: Optional[EnumerationConfig] = None):
        """Initialize the engine with an enumeration configuration."""
        self.logger = logging.getLogger(__name__)
        self.config = config or EnumerationConfig()

    def coset_enumerate(self, p: Presentation, subgroup_gens: Sequence[Word] = (),
                        config: Optional[EnumerationConfig] = None) -> CosetTable:
        """Enumerate the cosets of <subgroup_gens> in p; overflow is reported, not raised."""
        config = config or self.config
        strategy_class = STRATEGY_TYPES[normalize_strategy(config.strategy)]
        if not p.relators:
            self.logger.warning("Enumerating a presentation without relators; this only ends on overflow")
        self.logger.info(f"Enumerating {p.generator_count} generators, {len(p.relators)} relators "
                         f"with {strategy_class.name} (max_cosets={config.max_cosets})")
        return strategy_class(p, [as_word(w) for w in subgroup_gens], config).enumerate()

    def certify_order(self, p: Presentation, tmap: TranspositionMap,
                      config: Optional[EnumerationConfig] = None) -> Optional[OrderCertificate]:
        """Bound |p| by a chain of small indices along Coxeter paths of its generators.

        The first step is the index of the forest subgroup in p, after the
        other generators have been eliminated where a relator defines them.
        Each later step drops one path end and enumerates inside the
        presentation restricted to the remaining letters. Returns None when
        p has no Coxeter path or does not map to the permutation group.
        """
        config = config or self.config
        if not p.involutive or not image_check(p, tmap):
            return None
        forest = coxeter_forest(p, tmap)
        if not forest:
            self.logger.info("No Coxeter path among the relators; nothing to certify")
            return None
        letters = forest_letters(forest)
        self.logger.info(f"Subgroup chain along {' | '.join(' '.join(str(g) for g in path) for path in forest)}")
        steps = []
        lower = image_order(p, tmap)

        top = tietze_simplify(p, letters, strict=False)
        if set(top.alphabet) == set(letters):
            steps.append(ChainStep(top.alphabet, letters, 1, 0, 'tietze'))
        else:
            table = self.coset_enumerate(top, [as_word(g) for g in letters], config)
            steps.append(self._step(top, letters, table))
            if not table.complete:
                return OrderCertificate(degree_of(tmap), dict(tmap), lower, tuple(steps))

        current = restrict(top, letters)
        for subgroup in peel_sequence(forest):
            if not subgroup:
                steps.append(ChainStep(current.alphabet, (), single_letter_order(current), 0, 'direct'))
                break
            table = self.coset_enumerate(current, [as_word(g) for g in subgroup], config)
            steps.append(self._step(current, subgroup, table))
            if not table.complete:
                break
            current = restrict(current, subgroup)

        result = OrderCertificate(degree_of(tmap), dict(tmap), lower, tuple(steps))
        self.logger.info(result.to_text())
        return result

    @staticmethod
    def _step(p: Presentation, subgroup, table: CosetTable) -> ChainStep:
        index = table.coset_count if table.complete else None
        return ChainStep(p.alphabet, tuple(subgroup), index, table.cosets_defined_peak, table.strategy)

    def group_order(self, p: Presentation, config: Optional[EnumerationConfig] = None,
                    tmap: Optional[TranspositionMap] = None) -> Optional[int]:
        """Order of the group, or None when it could not be determined.

        With a transposition map the order comes from a subgroup chain
        certificate; direct enumeration is the fallback when p has no chain.
        """
        if tmap is not None:
            certificate = self.certify_order(p, tmap, config)
            if certificate is not None:
                return certificate.order
        table = self.coset_enumerate(p, (), config)
        return table.coset_count if table.complete else None

    def is_consequence(self, table: CosetTable, word) -> bool:
        return table.is_consequence(as_word(word))

    def image_check(self, p: Presentation, tmap: Dict[int, Tuple[int, int]]) -> bool:
        return image_check(p, tmap)

    def family_presentation(self, d: Degeneration, mode: str = 'simplified',
                            commutators: str = 'listed', simplify: bool = True) -> Presentation:
        """G_1 for the family, with primed generators eliminated when possible."""
        presentation = assemble_g1(d, mode, commutators)
        if not simplify:
            return presentation
        target = [g for g in presentation.alphabet if not g.primed]
        try:
            return tietze_simplify(presentation, target)
        except TietzeError as e:
            self.logger.warning(f"Keeping the assembled presentation for n={d.n}: {e}")
            return presentation

    def reduce_family(self, d: Degeneration, certificate: Optional[OrderCertificate] = None,
                      commutators: str = 'listed') -> Presentation:
        """G_1 over {1, 3, 4, ..., 2n+2}, using j = j' for every line.

        The identifications are proven when ``certificate`` is exact and
        otherwise recorded as assumed.
        """
        if certificate is not None and not certificate.faithful:
            certificate = None
        if certificate is None:
            self.logger.info(f"Reducing n={d.n} without an exact certificate")
        return tietze_simplify(assemble_g1(d, 'simplified', commutators), reduced_generators(d),
                               prime_identifications(d), certificate=certificate)

    def enumerate_family(self, n: int, mode: str = 'simplified', commutators: str = 'listed',
                         simplify: bool = True) -> Tuple[Presentation, CosetTable]:
        """Presentation of G_1 and its coset table over the trivial subgroup.

        Once the order is certified the table is the regular action of the
        permutation image; direct enumeration is used otherwise.
        """
        d = build_family(n)
        presentation = self.family_presentation(d, mode, commutators, simplify)
        tmap = transposition_map(d)
        certificate = self.certify_order(presentation, tmap)
        if certificate is None or not certificate.faithful:
            return presentation, self.coset_enumerate(presentation)
        if certificate.order > self.config.max_cosets:
            self.logger.warning(f"Certified order {certificate.order} exceeds max_cosets={self.config.max_cosets}")
            return presentation, CosetTable.overflowed(presentation, certificate.cosets_defined_peak)
        return presentation, regular_table(presentation, tmap, certificate.cosets_defined_peak)

    def verify_simply_connected(self, n: int, mode: str = 'simplified', commutators: str = 'listed',
                                simplify: bool = True) -> Verdict:
        """Build, check the transposition image, certify the order, decide."""
        started = time.perf_counter()
        d = build_family(n)
        assembled = assemble_g1(d, mode, commutators)

        tmap = transposition_map(d)
        image_ok = image_check(assembled, tmap) and transposition_graph_connected(d, tmap)
        if not image_ok:
            self.logger.error(f"Transposition image check failed for n={n}")

        order = None
        peak = 0
        presentation = assembled
        strategy = normalize_strategy(self.config.strategy)
        if image_ok:
            presentation = self.family_presentation(d, mode, commutators, simplify)
            certificate = self.certify_order(presentation, tmap)
            if certificate is not None:
                order = certificate.order
                peak = certificate.cosets_defined_peak
            else:
                table = self.coset_enumerate(presentation)
                order = table.coset_count if table.complete else None
                peak = table.cosets_defined_peak

        verdict = Verdict.decide(
            n, order, image_ok,
            cosets_defined_peak=peak,
            wall_time_ms=int((time.perf_counter() - started) * 1000),
            strategy=strategy,
            generators=presentation.generator_count,
            relators=len(presentation.relators),
        )
        self.logger.info(verdict.to_text())
        return verdict


def coset_enumerate(p: Presentation, subgroup_gens: Sequence[Word] = (),
                    config: Optional[EnumerationConfig] = None) -> CosetTable:
    return CosetEngine(config).coset_enumerate(p, subgroup_gens)


def group_order(p: Presentation, config: Optional[EnumerationConfig] = None,
                tmap: Optional[TranspositionMap] = None) -> Optional[int]:
    return CosetEngine(config).group_order(p, tmap=tmap)


def is_consequence(table: CosetTable, word) -> bool:
    return table.is_consequence(as_word(word))


def verify_simply_connected(n: int, config: Optional[EnumerationConfig] = None,
                            mode: str = 'simplified', commutators: str = 'listed') -> Verdict:
    config = config or EnumerationConfig.for_degree(n)
    return CosetEngine(config).verify_simply_connected(n, mode, commutators)
