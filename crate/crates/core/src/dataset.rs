//! Career record dataset: CSV ingestion, validation and stage extraction.
//!
//! Each row is one person's path through Bachelors, Masters and Doctoral
//! study followed by a work position. A stage is present iff its stream
//! column is non-empty. Rows without a work position are rejected and
//! reported, never fatal.

use std::collections::BTreeSet;
use std::fmt;
use std::io::{self, Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const BACHELORS_STREAM: &str = "Bachelors Stream";
pub const BACHELORS_UNIVERSITY: &str = "Bachelors University";
pub const BACHELORS_DURATION: &str = "Bachelors Duration";
pub const MASTERS_STREAM: &str = "Masters Stream";
pub const MASTERS_UNIVERSITY: &str = "Masters University";
pub const MASTERS_DURATION: &str = "Masters Duration";
pub const DOCTORAL_STREAM: &str = "Doctoral Stream";
pub const DOCTORAL_UNIVERSITY: &str = "Doctoral University";
pub const DOCTORAL_DURATION: &str = "Doctoral Duration";
pub const WORK_POSITION: &str = "Work Position";
pub const WORK_ORGANIZATION: &str = "Work Organization";

/// Required header names, in canonical file order.
pub const COLUMNS: [&str; 11] = [
    BACHELORS_STREAM,
    BACHELORS_UNIVERSITY,
    BACHELORS_DURATION,
    MASTERS_STREAM,
    MASTERS_UNIVERSITY,
    MASTERS_DURATION,
    DOCTORAL_STREAM,
    DOCTORAL_UNIVERSITY,
    DOCTORAL_DURATION,
    WORK_POSITION,
    WORK_ORGANIZATION,
];

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("missing required column(s): {}", .0.join(", "))]
    MissingColumns(Vec<String>),
    #[error("CSV file has no header row")]
    EmptyInput,
    #[error("failed to read dataset: {0}")]
    Io(#[from] io::Error),
    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("invalid record: {0}")]
    InvalidRecord(String),
}

/// Degree level, ordered Bachelors < Masters < Doctoral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Bachelors,
    Masters,
    Doctoral,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::Bachelors, Level::Masters, Level::Doctoral];

    pub fn word(self) -> &'static str {
        match self {
            Level::Bachelors => "Bachelors",
            Level::Masters => "Masters",
            Level::Doctoral => "Doctoral",
        }
    }

    fn columns(self) -> [&'static str; 3] {
        match self {
            Level::Bachelors => [BACHELORS_STREAM, BACHELORS_UNIVERSITY, BACHELORS_DURATION],
            Level::Masters => [MASTERS_STREAM, MASTERS_UNIVERSITY, MASTERS_DURATION],
            Level::Doctoral => [DOCTORAL_STREAM, DOCTORAL_UNIVERSITY, DOCTORAL_DURATION],
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.word())
    }
}

/// The user's current education. Only levels below Masters are accepted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Education {
    HighSchool,
    Bachelors,
}

impl Education {
    pub const ALLOWED: &'static str = "high_school, bachelors";

    /// Wire token.
    pub fn token(self) -> &'static str {
        match self {
            Education::HighSchool => "high_school",
            Education::Bachelors => "bachelors",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            Education::HighSchool => "High School",
            Education::Bachelors => "Bachelor's",
        }
    }

    /// Lowest level still worth suggesting.
    fn first_suggested(self) -> Level {
        match self {
            Education::HighSchool => Level::Bachelors,
            Education::Bachelors => Level::Masters,
        }
    }
}

impl fmt::Display for Education {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid education {0:?}: expected one of {allowed}", allowed = Education::ALLOWED)]
pub struct ParseEducationError(pub String);

impl FromStr for Education {
    type Err = ParseEducationError;

    /// Accepts the wire tokens and the display names, case-insensitively.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_lowercase().as_str() {
            "high_school" | "high school" | "highschool" => Ok(Education::HighSchool),
            "bachelors" | "bachelor's" | "bachelor" => Ok(Education::Bachelors),
            _ => Err(ParseEducationError(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EducationStage {
    pub level: Level,
    pub stream: String,
    pub university: Option<String>,
    pub duration_years: Option<f64>,
}

impl EducationStage {
    pub fn new(level: Level, stream: impl Into<String>) -> Self {
        EducationStage {
            level,
            stream: stream.into(),
            university: None,
            duration_years: None,
        }
    }

    pub fn with_university(mut self, university: impl Into<String>) -> Self {
        self.university = Some(university.into());
        self
    }

    pub fn with_duration(mut self, years: f64) -> Self {
        self.duration_years = Some(years);
        self
    }

    fn validate(&self, slot: Level) -> Result<(), DatasetError> {
        if self.level != slot {
            return Err(DatasetError::InvalidRecord(format!(
                "{} stage stored in the {} slot",
                self.level, slot
            )));
        }
        if self.stream.trim().is_empty() {
            return Err(DatasetError::InvalidRecord(format!(
                "{slot} stream is empty"
            )));
        }
        if let Some(d) = self.duration_years {
            if !(d.is_finite() && d >= 0.0) {
                return Err(DatasetError::InvalidRecord(format!(
                    "{slot} duration {d} is not a non-negative number"
                )));
            }
        }
        Ok(())
    }
}

/// Source row number of a record; data rows are numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RecordId(pub u64);

impl fmt::Display for RecordId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CareerRecord {
    id: RecordId,
    bachelors: Option<EducationStage>,
    masters: Option<EducationStage>,
    doctoral: Option<EducationStage>,
    work_position: String,
    work_organization: Option<String>,
}

impl CareerRecord {
    pub fn new(
        id: RecordId,
        bachelors: Option<EducationStage>,
        masters: Option<EducationStage>,
        doctoral: Option<EducationStage>,
        work_position: impl Into<String>,
        work_organization: Option<String>,
    ) -> Result<Self, DatasetError> {
        let work_position = work_position.into();
        if work_position.trim().is_empty() {
            return Err(DatasetError::InvalidRecord("work position is empty".into()));
        }
        for (slot, stage) in [
            (Level::Bachelors, &bachelors),
            (Level::Masters, &masters),
            (Level::Doctoral, &doctoral),
        ] {
            if let Some(stage) = stage {
                stage.validate(slot)?;
            }
        }
        Ok(CareerRecord {
            id,
            bachelors,
            masters,
            doctoral,
            work_position,
            work_organization,
        })
    }

    pub fn id(&self) -> RecordId {
        self.id
    }

    pub fn stage(&self, level: Level) -> Option<&EducationStage> {
        match level {
            Level::Bachelors => self.bachelors.as_ref(),
            Level::Masters => self.masters.as_ref(),
            Level::Doctoral => self.doctoral.as_ref(),
        }
    }

    /// Present stages in Bachelors, Masters, Doctoral order.
    pub fn stages(&self) -> impl Iterator<Item = &EducationStage> {
        Level::ALL.into_iter().filter_map(|level| self.stage(level))
    }

    pub fn work_position(&self) -> &str {
        &self.work_position
    }

    pub fn work_organization(&self) -> Option<&str> {
        self.work_organization.as_deref()
    }
}

/// Stages a person with `education` would still have to complete.
pub fn stages_after(record: &CareerRecord, education: Education) -> Vec<EducationStage> {
    let first = education.first_suggested();
    record
        .stages()
        .filter(|stage| stage.level >= first)
        .cloned()
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    /// Data row number (1-based, header excluded).
    pub row: u64,
    pub message: String,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row {}: {}", self.row, self.message)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Dataset {
    records: Vec<CareerRecord>,
    rejected_count: usize,
    warnings: Vec<Warning>,
}

impl Dataset {
    /// Builds a dataset from already-validated records. Fails on duplicate ids.
    pub fn from_records(records: Vec<CareerRecord>) -> Result<Self, DatasetError> {
        let mut seen = BTreeSet::new();
        for record in &records {
            if !seen.insert(record.id) {
                return Err(DatasetError::InvalidRecord(format!(
                    "duplicate record id {}",
                    record.id
                )));
            }
        }
        Ok(Dataset {
            records,
            rejected_count: 0,
            warnings: Vec::new(),
        })
    }

    pub fn records(&self) -> &[CareerRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn rejected_count(&self) -> usize {
        self.rejected_count
    }

    pub fn warnings(&self) -> &[Warning] {
        &self.warnings
    }

    pub fn get(&self, id: RecordId) -> Option<&CareerRecord> {
        self.records.iter().find(|r| r.id == id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct DatasetStats {
    pub records: usize,
    pub bachelors: usize,
    pub masters: usize,
    pub doctoral: usize,
    pub distinct_positions: usize,
    pub rejected: usize,
}

/// Distinct positions are counted after trimming, case-sensitively.
pub fn dataset_stats(dataset: &Dataset) -> DatasetStats {
    let count = |level| {
        dataset
            .records
            .iter()
            .filter(|r| r.stage(level).is_some())
            .count()
    };
    let positions: BTreeSet<&str> = dataset
        .records
        .iter()
        .map(|r| r.work_position.trim())
        .collect();
    DatasetStats {
        records: dataset.records.len(),
        bachelors: count(Level::Bachelors),
        masters: count(Level::Masters),
        doctoral: count(Level::Doctoral),
        distinct_positions: positions.len(),
        rejected: dataset.rejected_count,
    }
}

/// Parses `"4"`, `"1.5"`, `"4 years"`, `"2yrs"`.
fn parse_duration(raw: &str) -> Option<f64> {
    let raw = raw.trim();
    let split = raw
        .find(|c: char| !(c.is_ascii_digit() || c == '.'))
        .unwrap_or(raw.len());
    let (number, unit) = raw.split_at(split);
    let unit = unit.trim().to_ascii_lowercase();
    if !matches!(unit.as_str(), "" | "y" | "yr" | "yrs" | "year" | "years") {
        return None;
    }
    number
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite() && *v >= 0.0)
}

struct ColumnMap {
    index: [usize; 11],
}

impl ColumnMap {
    fn from_headers(headers: &csv::StringRecord) -> Result<Self, DatasetError> {
        let normalized: Vec<String> = headers
            .iter()
            .map(|h| h.trim().trim_start_matches('\u{feff}').to_lowercase())
            .collect();
        let mut index = [0usize; 11];
        let mut missing = Vec::new();
        for (slot, name) in COLUMNS.iter().enumerate() {
            let wanted = name.to_lowercase();
            match normalized.iter().position(|h| *h == wanted) {
                Some(i) => index[slot] = i,
                None => missing.push(name.to_string()),
            }
        }
        if missing.is_empty() {
            Ok(ColumnMap { index })
        } else {
            Err(DatasetError::MissingColumns(missing))
        }
    }

    fn get<'r>(&self, row: &'r csv::StringRecord, column: &str) -> &'r str {
        let slot = COLUMNS
            .iter()
            .position(|c| *c == column)
            .expect("known column");
        row.get(self.index[slot]).unwrap_or("").trim()
    }
}

fn non_empty(s: &str) -> Option<String> {
    (!s.is_empty()).then(|| s.to_string())
}

fn parse_stage(
    level: Level,
    row: &csv::StringRecord,
    columns: &ColumnMap,
    row_no: u64,
    warnings: &mut Vec<Warning>,
) -> Option<EducationStage> {
    let [stream_col, university_col, duration_col] = level.columns();
    let stream = columns.get(row, stream_col);
    let university = columns.get(row, university_col);
    let duration = columns.get(row, duration_col);

    if stream.is_empty() {
        if !university.is_empty() || !duration.is_empty() {
            warnings.push(Warning {
                row: row_no,
                message: format!("{level} stream is empty; ignoring its university/duration"),
            });
        }
        return None;
    }

    let duration_years = if duration.is_empty() {
        None
    } else {
        let parsed = parse_duration(duration);
        if parsed.is_none() {
            warnings.push(Warning {
                row: row_no,
                message: format!("unparseable {level} duration {duration:?}; treated as absent"),
            });
        }
        parsed
    };

    Some(EducationStage {
        level,
        stream: stream.to_string(),
        university: non_empty(university),
        duration_years,
    })
}

/// Reads a career CSV. Header names are matched case-insensitively in any
/// order; extra columns are ignored.
pub fn load_dataset<R: Read>(source: R) -> Result<Dataset, DatasetError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(source);

    let mut rows = reader.records();
    let headers = match rows.next() {
        Some(header) => header.map_err(csv_error)?,
        None => return Err(DatasetError::EmptyInput),
    };
    let columns = ColumnMap::from_headers(&headers)?;

    let mut dataset = Dataset::default();
    let mut row_no = 0u64;
    for row in rows {
        let row = row.map_err(csv_error)?;
        row_no += 1;
        if row.len() != headers.len() {
            dataset.rejected_count += 1;
            dataset.warnings.push(Warning {
                row: row_no,
                message: format!(
                    "expected {} fields, found {}; row rejected",
                    headers.len(),
                    row.len()
                ),
            });
            continue;
        }
        let work_position = columns.get(&row, WORK_POSITION);
        if work_position.is_empty() {
            dataset.rejected_count += 1;
            dataset.warnings.push(Warning {
                row: row_no,
                message: "empty Work Position; row rejected".into(),
            });
            continue;
        }
        let bachelors = parse_stage(
            Level::Bachelors,
            &row,
            &columns,
            row_no,
            &mut dataset.warnings,
        );
        let masters = parse_stage(
            Level::Masters,
            &row,
            &columns,
            row_no,
            &mut dataset.warnings,
        );
        let doctoral = parse_stage(
            Level::Doctoral,
            &row,
            &columns,
            row_no,
            &mut dataset.warnings,
        );
        dataset.records.push(CareerRecord {
            id: RecordId(row_no),
            bachelors,
            masters,
            doctoral,
            work_position: work_position.to_string(),
            work_organization: non_empty(columns.get(&row, WORK_ORGANIZATION)),
        });
    }
    Ok(dataset)
}

fn csv_error(err: csv::Error) -> DatasetError {
    if !err.is_io_error() {
        return DatasetError::Csv(err);
    }
    match err.into_kind() {
        csv::ErrorKind::Io(io) => DatasetError::Io(io),
        _ => unreachable!("is_io_error implies ErrorKind::Io"),
    }
}

/// Writes records in the canonical 11-column layout.
pub fn write_dataset<W: Write>(dataset: &Dataset, sink: W) -> Result<(), DatasetError> {
    let mut writer = csv::Writer::from_writer(sink);
    writer.write_record(COLUMNS)?;
    for record in &dataset.records {
        let mut fields: Vec<String> = Vec::with_capacity(COLUMNS.len());
        for level in Level::ALL {
            match record.stage(level) {
                Some(stage) => {
                    fields.push(stage.stream.clone());
                    fields.push(stage.university.clone().unwrap_or_default());
                    fields.push(
                        stage
                            .duration_years
                            .map(|d| d.to_string())
                            .unwrap_or_default(),
                    );
                }
                None => fields.extend(std::iter::repeat_n(String::new(), 3)),
            }
        }
        fields.push(record.work_position.clone());
        fields.push(record.work_organization.clone().unwrap_or_default());
        writer.write_record(&fields)?;
    }
    writer.flush()?;
    Ok(())
}
