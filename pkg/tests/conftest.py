import pytest

from assocnet import WeightedDigraph
from assocnet.ingest import RatProblem


def graph_from(word_edges):
    """Build a graph from (source word, target word, weight) triples,
    interning words in order of first appearance."""
    words: list[str] = []
    ids: dict[str, int] = {}

    def intern(w):
        if w not in ids:
            ids[w] = len(words)
            words.append(w)
        return ids[w]

    edges = [(intern(s), intern(t), w) for s, t, w in word_edges]
    return WeightedDigraph.from_edges(words, edges)


T1_EDGES = [("a", "b", 0.5), ("a", "r", 0.5), ("b", "r", 1.0), ("c", "a", 1.0)]


@pytest.fixture
def t1():
    """Four-word toy: a->b 0.5, a->r 0.5, b->r 1.0, c->a 1.0."""
    return graph_from(T1_EDGES)


@pytest.fixture
def t1_problem(t1):
    """Stimuli (a, b, c), response r."""
    return RatProblem(
        index=0,
        stimuli=(t1.index_of("a"), t1.index_of("b"), t1.index_of("c")),
        response=t1.index_of("r"),
        hardness=0.8,
        words=("a", "b", "c", "r"),
    )


@pytest.fixture
def t1_files(tmp_path):
    """T1 as on-disk edge TSV plus a one-problem CSV."""
    gpath = tmp_path / "t1.tsv"
    gpath.write_text(
        "# toy network\n"
        "a\tb\t0.5\n"
        "a\tr\t0.5\n"
        "b\tr\t1.0\n"
        "c\ta\t1.0\n",
        encoding="utf-8",
    )
    rpath = tmp_path / "t1_rats.csv"
    rpath.write_text("s1,s2,s3,response,hardness\na,b,c,r,0.8\n", encoding="utf-8")
    return gpath, rpath
