"""Seeded move-walk campaigns that property-test the invariance laws.

Each trial starts from a named family or a random code, walks a seeded
random move sequence, and checks every intermediate diagram three ways:
the top s-degree of zeta never exceeds the virtual crossing count, the
s^k coefficient equals det B, and zeta transforms exactly as the move
laws predict (unchanged, except kinks of the second type, which each
contribute one power of q).  Trials keep their full move logs, so any
failure can be replayed line by line.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from longzeta.diagram import Diagram, PassageToken, generate
from longzeta.invariant import det_division_free, leading_matrix, zeta
from longzeta.moves import MoveSpec, apply, random_equivalent
from longzeta.rings import RingT, ZetaPolynomial

# growth caps for walked codes; sources stay well under these
MAX_CLASSICAL = 10
MAX_VIRTUAL = 10

_FAMILIES = ("classical_trefoil", "classical_figure8", "virtual_kink")


def random_diagram(rng: random.Random, n: int, k: int) -> Diagram:
    """A random valid code with n classical and k virtual crossings.

    Ids are drawn with gaps, so nothing downstream can rely on contiguous
    numbering.  Any interleaving of well-formed pairs is valid.
    """
    ids = rng.sample(range(1, 4 * (n + k) + 2), n + k)
    toks = []
    for cid in ids[:n]:
        w = rng.choice((1, -1))
        toks.append(PassageToken("O", cid, w))
        toks.append(PassageToken("U", cid, w))
    for cid in ids[n:]:
        toks.append(PassageToken("V", cid, 1))
        toks.append(PassageToken("V", cid, -1))
    rng.shuffle(toks)
    return Diagram(toks)


def predicted_shift(before: Diagram, move: MoveSpec) -> int:
    """The q-exponent the move contributes to zeta (0 for exact kinds)."""
    if move.kind == "R1_insert" and move.params[2] == "UO":
        return move.params[1]
    if move.kind == "R1_delete":
        t = before.tokens[move.params[0]]
        if t.kind == "U":
            return -t.sign
    return 0


def check_theorems(d: Diagram, z: ZetaPolynomial) -> list[str]:
    """Degree-bound and leading-coefficient checks on one diagram."""
    problems = []
    top = z.top_degree()
    if top is not None and top > d.k:
        problems.append("top degree %d exceeds k=%d" % (top, d.k))
    sk = z.coeff(d.k)
    if d.n >= 1:
        det_b = det_division_free(leading_matrix(d), RingT.one(), RingT.zero())
    else:
        det_b = sk
    if det_b != sk:
        problems.append(
            "det B = %s but the s^%d coefficient is %s"
            % (det_b.render(), d.k, sk.render())
        )
    return problems


@dataclass
class TrialResult:
    """One walked trajectory with everything needed to replay it."""

    index: int
    source: str
    log: list[MoveSpec]
    r: int
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def log_lines(self) -> list[str]:
        return [m.render() for m in self.log]


@dataclass
class CampaignReport:
    trials: int
    steps: int
    seed: int
    results: list[TrialResult]
    diagrams_checked: int

    @property
    def failures(self) -> list[TrialResult]:
        return [t for t in self.results if not t.ok]

    @property
    def max_abs_r(self) -> int:
        return max((abs(t.r) for t in self.results), default=0)

    def summary(self) -> str:
        passed = sum(1 for t in self.results if t.ok)
        return "%d/%d trajectories invariant; max |r| observed: %d" % (
            passed,
            len(self.results),
            self.max_abs_r,
        )


def run_trial(source: Diagram, steps: int, seed: int, index: int = 0) -> TrialResult:
    """Walk one seeded trajectory and check every intermediate diagram."""
    final, log = random_equivalent(
        source,
        steps,
        seed,
        max_classical=MAX_CLASSICAL,
        max_virtual=MAX_VIRTUAL,
    )
    result = TrialResult(index=index, source=source.render(), log=log, r=0)
    d = source
    z = zeta(d)
    z0 = z
    result.problems.extend(check_theorems(d, z))
    for move in log:
        shift = predicted_shift(d, move)
        d = apply(d, move)
        z_next = zeta(d)
        if z_next != z.scaled(RingT.q_power(shift)):
            result.problems.append(
                "%s changed zeta by something other than q^%+d" % (move, shift)
            )
        result.problems.extend(check_theorems(d, z_next))
        result.r += shift
        z = z_next
    if z != z0.scaled(RingT.q_power(result.r)):
        result.problems.append(
            "trajectory end differs from q^%+d * start" % result.r
        )
    if d != final:
        result.problems.append("replay disagrees with the walk result")
    return result


def _source_for(master: random.Random, index: int) -> Diagram:
    if index % 2 == 0:
        pick = (index // 2) % (len(_FAMILIES) + 1)
        if pick < len(_FAMILIES):
            return generate(_FAMILIES[pick])
        return generate("virtual_kink_chain", 3)
    return random_diagram(master, master.randint(1, 7), master.randint(0, 7))


def run_campaign(trials: int, steps: int, seed: int) -> CampaignReport:
    """Run `trials` seeded trajectories; deterministic in (trials, steps, seed).

    Sources alternate between the named families and random codes drawn
    from the master stream; each trial walks with its own derived seed.
    """
    if trials < 0 or steps < 0:
        raise ValueError("trials and steps must be >= 0")
    master = random.Random(seed)
    results = []
    checked = 0
    for index in range(trials):
        source = _source_for(master, index)
        trial_seed = master.getrandbits(64)
        trial = run_trial(source, steps, trial_seed, index)
        results.append(trial)
        checked += len(trial.log) + 1
    return CampaignReport(
        trials=trials,
        steps=steps,
        seed=seed,
        results=results,
        diagrams_checked=checked,
    )
