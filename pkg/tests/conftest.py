"""Shared test helpers."""

from longzeta.diagram import Diagram, PassageToken


def random_code(rng, n, k):
    """A valid long code with n classical and k virtual crossings.

    Any interleaving of well-formed passage pairs is a valid code, so a
    plain shuffle covers the space without rejection sampling.  Ids are
    drawn with gaps so consumers cannot rely on contiguous numbering.
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
