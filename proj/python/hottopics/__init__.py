"""Topic extraction, usage aggregation and trend tracking for field-tagged
bibliographic exports."""

from ._hottopics import (
    ArticleRecord,
    BadOrder,
    BadUsageValue,
    ConfigError,
    CorpusStats,
    DuplicateAccession,
    EmptyCorpus,
    EmptyYield,
    EncodingError,
    HotTopicsError,
    MalformedRecord,
    PeriodDelta,
    PipelineConfig,
    SeriesPoint,
    Snapshot,
    TopicSeries,
    TopicStats,
    aggregate,
    classify_trend,
    format_percent,
    parse_export,
    period_delta,
    quadrants,
    quadrants_from_rankings,
    ratio2_series,
    read_export_file,
    snapshot_from_records,
    stem_phrase,
    stem_word,
    tokenize,
    top_by_frequency,
    top_by_usage,
    topics_of,
    write_export,
)

__version__ = "0.1.0"
