"""leantext: limited-information text views for news classification.

Extract keyword, tag-based, and metadata views of news articles, measure
how much information each view retains, train a small classifier on any
view, and compare the results across repeated trials.
"""

__version__ = "0.1.0"

from .compose import SEPARATOR, concat_views, metadata_view
from .corpus import Article, Corpus, SplitSpec, load_corpus, normalize, split, word_tokenize
from .density import SubwordTokenizer, density_report, full_text_stats, normalized_entropy, token_count
from .embedding import EmbeddingTable, cosine, doc_embedding, load_table
from .evaluation import ExperimentSpec, accuracy_ratio, metrics, run_trials, significance
from .keywords import KeywordConfig, LimitedView, candidates, mmr_select
from .tagging import BuiltinTagger, ExternalAnnotations, ner_extract, pos_select, pos_tag
from .views import ViewBuilder, ViewSpec, parse_view_spec

__all__ = [
    "__version__",
    "Article", "Corpus", "SplitSpec", "normalize", "word_tokenize", "load_corpus", "split",
    "EmbeddingTable", "load_table", "cosine", "doc_embedding",
    "KeywordConfig", "LimitedView", "candidates", "mmr_select",
    "BuiltinTagger", "ExternalAnnotations", "pos_tag", "pos_select", "ner_extract",
    "SEPARATOR", "metadata_view", "concat_views",
    "SubwordTokenizer", "full_text_stats", "normalized_entropy", "token_count", "density_report",
    "ExperimentSpec", "metrics", "significance", "accuracy_ratio", "run_trials",
    "ViewBuilder", "ViewSpec", "parse_view_spec",
]
