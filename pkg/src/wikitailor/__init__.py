"""Domain-specific comparable corpora from Wikipedia dumps.

Two extraction models share one vocabulary step: a breadth-first walk of the
category graph that stops when too few category titles at a depth contain
domain terms (``WT``), and a tf-idf query built from the same terms (``IR``).
Selections are aligned across editions through langlinks and scored with
density, PMI, rank-correlation and ESA-based cohesion metrics.
"""

from .align import AlignedSet, intersect_languages, union_languages
from .errors import TailorError
from .graph import WtExtraction, traverse_and_extract
from .pipeline import RunConfig, extract_system, run_batch
from .retrieval import IrExtraction, build_index, extract_ir
from .store import CorpusStore, load_store, parse_dump, persist_store
from .systems import parse_system_name
from .textprep import PreprocessConfig, preprocess
from .vocabulary import Vocabulary, build_vocabulary, find_root_category, select_seed_articles

__version__ = "0.1.0"

__all__ = [
    "AlignedSet", "CorpusStore", "IrExtraction", "PreprocessConfig", "RunConfig", "TailorError",
    "Vocabulary", "WtExtraction", "build_index", "build_vocabulary", "extract_ir", "extract_system",
    "find_root_category", "intersect_languages", "load_store", "parse_dump", "parse_system_name",
    "persist_store", "preprocess", "run_batch", "select_seed_articles", "traverse_and_extract",
    "union_languages",
]
