//! Career path suggestion.
//!
//! A query runs in two passes over the dataset. The simple pass scores every
//! work position with [`simple_ratio`] and keeps rows strictly above the
//! simple threshold. Only when that pass keeps nothing does the partial pass
//! run, scoring with [`partial_ratio`] against the partial threshold. Kept
//! rows are truncated to the stages above the user's education, merged by
//! rendered path and ranked by descending score.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::dataset::{stages_after, Dataset, Education, EducationStage, RecordId};
use crate::matching::{normalize, partial_ratio, simple_ratio, NormalizedText, SimilarityScore};

pub const DEFAULT_SIMPLE_THRESHOLD: f64 = 60.0;
pub const DEFAULT_PARTIAL_THRESHOLD: f64 = 80.0;

const PATH_SEPARATOR: &str = " > ";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("goal must not be empty")]
    EmptyGoal,
    #[error("invalid education {0:?}: expected one of {allowed}", allowed = Education::ALLOWED)]
    InvalidEducation(String),
    #[error("{name} threshold {value} is outside [0, 100]")]
    ThresholdOutOfRange { name: &'static str, value: f64 },
    #[error("limit must be a positive integer")]
    ZeroLimit,
    #[error("cannot render an empty path")]
    EmptyPath,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Query {
    goal: String,
    normalized: NormalizedText,
    education: Education,
}

impl Query {
    pub fn new(goal: impl Into<String>, education: Education) -> Result<Self, EngineError> {
        let goal = goal.into();
        let normalized = normalize(&goal);
        if normalized.is_empty() {
            return Err(EngineError::EmptyGoal);
        }
        Ok(Query {
            goal,
            normalized,
            education,
        })
    }

    /// Parses the education from a wire token or display name.
    pub fn parse(goal: impl Into<String>, education: &str) -> Result<Self, EngineError> {
        let education = education
            .parse()
            .map_err(|_| EngineError::InvalidEducation(education.to_string()))?;
        Self::new(goal, education)
    }

    pub fn goal(&self) -> &str {
        &self.goal
    }

    pub fn normalized_goal(&self) -> &NormalizedText {
        &self.normalized
    }

    pub fn education(&self) -> Education {
        self.education
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineConfig {
    pub simple_threshold: f64,
    pub partial_threshold: f64,
    pub limit: Option<usize>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            simple_threshold: DEFAULT_SIMPLE_THRESHOLD,
            partial_threshold: DEFAULT_PARTIAL_THRESHOLD,
            limit: None,
        }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<(), EngineError> {
        for (name, value) in [
            ("simple", self.simple_threshold),
            ("partial", self.partial_threshold),
        ] {
            if !(0.0..=100.0).contains(&value) {
                return Err(EngineError::ThresholdOutOfRange { name, value });
            }
        }
        if self.limit == Some(0) {
            return Err(EngineError::ZeroLimit);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchKind {
    Simple,
    Partial,
}

impl MatchKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MatchKind::Simple => "simple",
            MatchKind::Partial => "partial",
        }
    }
}

impl fmt::Display for MatchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Suggestion {
    pub segments: Vec<EducationStage>,
    pub rendered: String,
    pub score: SimilarityScore,
    pub match_kind: MatchKind,
    pub matched_position: String,
    pub source_record: RecordId,
}

impl Suggestion {
    /// `None` when `segments` is empty.
    pub fn new(
        segments: Vec<EducationStage>,
        score: SimilarityScore,
        match_kind: MatchKind,
        matched_position: impl Into<String>,
        source_record: RecordId,
    ) -> Option<Self> {
        let rendered = render_path(&segments).ok()?;
        Some(Suggestion {
            segments,
            rendered,
            score,
            match_kind,
            matched_position: matched_position.into(),
            source_record,
        })
    }
}

/// Ranked suggestions: scores non-increasing, rendered paths distinct.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SuggestionList {
    items: Vec<Suggestion>,
}

impl SuggestionList {
    pub fn items(&self) -> &[Suggestion] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Suggestion> {
        self.items.iter()
    }

    pub fn paths(&self) -> impl Iterator<Item = &str> {
        self.items.iter().map(|s| s.rendered.as_str())
    }

    pub fn into_items(self) -> Vec<Suggestion> {
        self.items
    }
}

impl<'a> IntoIterator for &'a SuggestionList {
    type Item = &'a Suggestion;
    type IntoIter = std::slice::Iter<'a, Suggestion>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

/// `"Masters, Computer Science > Doctoral, Statistics"`.
pub fn render_path(segments: &[EducationStage]) -> Result<String, EngineError> {
    if segments.is_empty() {
        return Err(EngineError::EmptyPath);
    }
    Ok(segments
        .iter()
        .map(|s| format!("{}, {}", s.level.word(), s.stream))
        .collect::<Vec<_>>()
        .join(PATH_SEPARATOR))
}

/// Merges duplicates by rendered path, keeping the highest score (the
/// earliest record on ties), then sorts by descending score with record
/// order as tie-break.
pub fn dedup_and_rank(raw: Vec<Suggestion>, limit: Option<usize>) -> SuggestionList {
    let mut slot_of: HashMap<String, usize> = HashMap::with_capacity(raw.len());
    let mut items: Vec<Suggestion> = Vec::with_capacity(raw.len());
    for suggestion in raw {
        match slot_of.get(&suggestion.rendered) {
            Some(&slot) => {
                let kept = &items[slot];
                let better = suggestion.score > kept.score
                    || (suggestion.score == kept.score
                        && suggestion.source_record < kept.source_record);
                if better {
                    items[slot] = suggestion;
                }
            }
            None => {
                slot_of.insert(suggestion.rendered.clone(), items.len());
                items.push(suggestion);
            }
        }
    }
    items.sort_by(|a, b| {
        b.score
            .partial_cmp(&a.score)
            .expect("scores are never NaN")
            .then(a.source_record.cmp(&b.source_record))
    });
    if let Some(limit) = limit {
        items.truncate(limit);
    }
    SuggestionList { items }
}

fn scan(query: &Query, dataset: &Dataset, kind: MatchKind, threshold: f64) -> Vec<Suggestion> {
    let score_fn = match kind {
        MatchKind::Simple => simple_ratio,
        MatchKind::Partial => partial_ratio,
    };
    dataset
        .records()
        .iter()
        .filter_map(|record| {
            let score = score_fn(query.normalized_goal(), &normalize(record.work_position()));
            if score.percent() <= threshold {
                return None;
            }
            Suggestion::new(
                stages_after(record, query.education()),
                score,
                kind,
                record.work_position(),
                record.id(),
            )
        })
        .collect()
}

pub fn suggest(
    query: &Query,
    dataset: &Dataset,
    config: &EngineConfig,
) -> Result<SuggestionList, EngineError> {
    config.validate()?;
    let mut raw = scan(query, dataset, MatchKind::Simple, config.simple_threshold);
    if raw.is_empty() {
        raw = scan(query, dataset, MatchKind::Partial, config.partial_threshold);
    }
    Ok(dedup_and_rank(raw, config.limit))
}
