"""Context-aware meta-search ranking for programming errors and exceptions.

Given an exception (message, stack trace, optionally the surrounding code),
candidate pages gathered from several search providers are ranked by content
relevance, context relevance, popularity and provider confidence.
"""

from .codecontext import context_similarity, frequent_identifiers, tokenize_code
from .config import Settings, load_settings
from .corpus import (
    Corpus,
    ProviderConfidenceTable,
    ResultPage,
    build_corpus,
    canonicalize_url,
    provider_confidence,
)
from .errors import (
    AllProvidersFailed,
    EmptyCorpus,
    ErrorSearchError,
    MalformedDocument,
    NoTraceFound,
    OutOfRange,
    QueryValidationError,
)
from .evalkit import EvalReport, evaluate
from .pageextract import PageContent, extract_content
from .pipeline import SearchPipeline, load_dataset, run_evaluation
from .queryform import ExceptionQuery, formulate
from .scoring import RankingWeights, ScoredResult, rank
from .stacktrace import StackFrame, StackTrace, degree_of_interest, filter_message, parse_trace
from .textproc import TokenBag, cosine, normalize

__version__ = "0.1.0"
