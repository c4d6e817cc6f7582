"""Census strings and small constructed inputs shared by the tests."""
from veerflow.fatgraph import (
    add_parallel,
    curve_components,
    dumbbell_pants,
    hexagon_decomposition,
    medial,
)

KNOT_A = "gLLMQaedfdffjxaxjkn_200211"
KNOT_B = "hLAPzkbcbeefgghhwjsahr_2112212"
ACCEPT_266 = "ovvLALQLQQchgggkijmnllnmnmaaaaaggaaggaaaa_10000111111100"
ACCEPT_2244 = "qvvLLMLzQQQkfgfjiloknoplmnoppaaaavvavaaavvaaav_1020212211211200"
REJECT_266 = "oLLvAwQMLQcbeehgiijjlnlmnnxxxavccaaaxcavc_21112002212120"
REJECT_2244 = "qvLAMAwPLzQkdcegfghiklmonppopbbbahabhbhabbhhga_2011022001120201"

KNOTS = (KNOT_A, KNOT_B)
ACCEPTED = (ACCEPT_266, ACCEPT_2244)
REJECTED = (REJECT_266, REJECT_2244)
ALL = KNOTS + ACCEPTED + REJECTED

# tets, cusps, H1 rank, doubled dual edge, dual triangle
FACTS = {
    KNOT_A: (6, 1, 1, True, False),
    KNOT_B: (7, 1, 1, True, True),
    ACCEPT_266: (14, 3, 3, False, False),
    ACCEPT_2244: (16, 4, 4, False, False),
    REJECT_266: (14, 3, 3, True, False),
    REJECT_2244: (16, 4, 4, False, True),
}


def zeroed(entry: str) -> str:
    sig, digits = entry.split("_")
    return sig + "_" + "0" * len(digits)


def pants_curve(F):
    return next(c for c in curve_components(F) if len(c) == 2)


def square_fixtures() -> dict:
    """Fatgraphs with square regions. The medial ones have no parallel curves."""
    h2 = hexagon_decomposition(2)
    c = pants_curve(h2)
    twice = add_parallel(add_parallel(h2, c), c)
    return {
        "medial-g2": medial(h2),
        "medial-g3": medial(hexagon_decomposition(3)),
        "medial-dumbbell": medial(hexagon_decomposition(2, dumbbell_pants())),
        "parallel-1": add_parallel(h2, c),
        "parallel-2": twice,
        "medial-parallel-2": medial(twice),
    }


NO_PARALLEL = ("medial-g2", "medial-g3", "medial-dumbbell")
