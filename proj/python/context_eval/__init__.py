"""Python surface of the context-eval native core."""

try:
    from ._context_eval import (  # type: ignore[attr-defined]
        __version__,
        extract_domain,
        gini,
        kde,
        metrics,
        normalized_scores,
        parse_archive,
        pearson,
    )
except ImportError:  # in-tree build: extension lives on PYTHONPATH
    from _context_eval import (  # type: ignore[no-redef]
        __version__,
        extract_domain,
        gini,
        kde,
        metrics,
        normalized_scores,
        parse_archive,
        pearson,
    )

__all__ = [
    "__version__",
    "extract_domain",
    "gini",
    "kde",
    "metrics",
    "normalized_scores",
    "parse_archive",
    "pearson",
]
