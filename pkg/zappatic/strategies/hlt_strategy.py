from zappatic.strategies.base_strategy import BaseStrategy, CosetOverflow


class HLTStrategy(BaseStrategy):
    """HLT enumeration with look-ahead.

    Every relator is scanned and filled at each live coset in order; when
    the bound is hit, a look-ahead pass scans the whole table without
    defining and the current coset is retried if it freed any space.
    """

    name = 'hlt'

    def process_coset(self, alpha: int) -> None:
        for word in self.relators:
            if not self.is_alive(alpha):
                return
            self.scan_and_fill(alpha, word)
        if self.is_alive(alpha):
            for x in range(len(self.table)):
                if self.table[x][alpha] == -1:
                    self.define(alpha, x)

    def run(self) -> None:
        self.fill_subgroup()
        alpha = 0
        while alpha < len(self.parent):
            alpha = self.maybe_compact(alpha)
            if alpha >= len(self.parent):
                break
            if self.is_alive(alpha):
                try:
                    self.process_coset(alpha)
                except CosetOverflow:
                    if not self.config.lookahead:
                        raise
                    before = self.live
                    self.look_ahead()
                    if self.live >= before:
                        raise
                    continue
            alpha += 1
