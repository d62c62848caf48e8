from dualgraph.boundary import BoundaryConfig
from dualgraph.corpus import CORPUS
from dualgraph.graph import canonical_form


def corpus_boundary(name: str) -> BoundaryConfig:
    return CORPUS[name].boundary()


def corpus_graph(name: str):
    return CORPUS[name].load()[0]


def rooted(b: BoundaryConfig) -> str:
    return canonical_form(b.graph, root=b.c_id)
