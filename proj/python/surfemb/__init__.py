"""Graph embeddings on closed surfaces: genus search, edge-maximality and
Euler impurity, with verifiable certificates."""

from ._surfemb import (
    CertificateError,
    ConstructionError,
    Embedding,
    EmbeddingError,
    Graph,
    GraphError,
    MaximalityError,
    ParseError,
    SearchError,
    Surface,
    census,
    complete_graph,
    embeds,
    enumerate_embeddings,
    euler_genus,
    fg,
    from_certificate,
    impurity,
    is_edge_maximal,
    is_euler_impure,
    nonorientable_genus,
    orientable_genus,
    verify_certificate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
