//! JSON documents shared by the CLI `--format json` output and the HTTP API.

use careerpath_core::{EducationStage, Level, MatchKind, Query, Suggestion, SuggestionList};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryEcho {
    pub goal: String,
    pub education: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentOut {
    pub level: Level,
    pub stream: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub university: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub duration_years: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuggestionOut {
    pub path: String,
    pub segments: Vec<SegmentOut>,
    /// Rounded to two decimals; ranking uses the unrounded value.
    pub score: f64,
    pub match_kind: String,
    pub matched_position: String,
    pub source_record: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuggestResponse {
    pub query: QueryEcho,
    pub suggestions: Vec<SuggestionOut>,
}

impl From<&EducationStage> for SegmentOut {
    fn from(stage: &EducationStage) -> Self {
        SegmentOut {
            level: stage.level,
            stream: stage.stream.clone(),
            university: stage.university.clone(),
            duration_years: stage.duration_years,
        }
    }
}

impl From<&Suggestion> for SuggestionOut {
    fn from(s: &Suggestion) -> Self {
        SuggestionOut {
            path: s.rendered.clone(),
            segments: s.segments.iter().map(SegmentOut::from).collect(),
            score: s.score.rounded(),
            match_kind: match s.match_kind {
                MatchKind::Simple => "simple",
                MatchKind::Partial => "partial",
            }
            .to_string(),
            matched_position: s.matched_position.clone(),
            source_record: s.source_record.to_string(),
        }
    }
}

impl SuggestResponse {
    pub fn new(query: &Query, list: &SuggestionList) -> Self {
        SuggestResponse {
            query: QueryEcho {
                goal: query.goal().to_string(),
                education: query.education().token().to_string(),
            },
            suggestions: list.iter().map(SuggestionOut::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HealthResponse {
    pub status: String,
    pub records: usize,
}

/// Body of every 4xx/5xx response.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
    pub message: String,
}
