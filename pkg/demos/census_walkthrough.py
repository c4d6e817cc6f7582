"""Pick the census entry that matches a Montesinos parameter tuple.

Four candidate triangulations are checked against (2, 6, 6) and
(2, 2, 4, 4). The report shows which filter dropped each one.

    python3 demos/census_walkthrough.py
"""
from veerflow.census import match, parse_census
from veerflow.montesinos import predict_stats

CENSUS = [
    "ovvLALQLQQchgggkijmnllnmnmaaaaaggaaggaaaa_10000111111100",
    "qvvLLMLzQQQkfgfjiloknoplmnoppaaaavvavaaavvaaav_1020212211211200",
    "oLLvAwQMLQcbeehgiijjlnlmnnxxxavccaaaxcavc_21112002212120",
    "qvLAMAwPLzQkdcegfghiklmonppopbbbahabhbhabbhhga_2011022001120201",
]

entries, problems = parse_census(CENSUS)
assert not problems

for p, rank in [((2, 6, 6), 3), ((2, 2, 4, 4), 4)]:
    st = predict_stats(p)
    print(f"{p}: expect {st.tets} tetrahedra, {st.blue} blue / {st.red} red, H1 rank {rank}")
    report = match(p, entries, rank)
    for c in report.candidates:
        verdict = "kept" if c.eliminated_by is None else f"dropped at {c.eliminated_by} ({c.reason})"
        print(f"  {c.entry.isosig[:12]}...  {verdict}")
    print(f"  selected: {report.selected}")
    print()
