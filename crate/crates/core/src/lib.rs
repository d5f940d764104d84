//! Career path suggestion from fuzzy-matched career goals.
//!
//! - [`matching`]: text normalization, gestalt simple ratio and windowed partial ratio.
//! - [`dataset`]: the 11-column career CSV and its record model.
//! - [`engine`]: the two-pass suggestion algorithm and ranking.

pub mod dataset;
pub mod engine;
pub mod matching;

pub use dataset::{
    dataset_stats, load_dataset, stages_after, write_dataset, CareerRecord, Dataset, DatasetError,
    DatasetStats, Education, EducationStage, Level, RecordId, Warning,
};
pub use engine::{
    dedup_and_rank, render_path, suggest, EngineConfig, EngineError, MatchKind, Query, Suggestion,
    SuggestionList,
};
pub use matching::{
    longest_common_block, match_count, normalize, partial_alignment, partial_ratio, simple_ratio,
    CommonBlock, MatchComputation, NormalizedText, SimilarityScore, WindowAlignment,
};
