"""Static membership for sets of at most five elements with two adaptive bitprobes."""

from .bitstore import DataStructure, FormatError, deserialize, new_empty, serialize, space_used
from .layout import SchemeParams, derive_params, table_sizes
from .query import query, query_traced
from .storage import Unsatisfiable, classify, store

__all__ = [
    "DataStructure",
    "FormatError",
    "SchemeParams",
    "Unsatisfiable",
    "classify",
    "derive_params",
    "deserialize",
    "new_empty",
    "query",
    "query_traced",
    "serialize",
    "space_used",
    "store",
    "table_sizes",
]
