//! Character-level fuzzy matching.
//!
//! Similarity between two strings is the gestalt ratio `200 * M / T`, where
//! `T` is the combined length of both strings and `M` is the number of
//! characters covered by recursively matched common blocks: find the longest
//! common contiguous block, then repeat on the text left of it and the text
//! right of it. Since that recursion depends on argument order, the simple
//! ratio uses the larger count of the two orientations. The partial ratio
//! slides the shorter string over every equal-length window of the longer one
//! and keeps the best simple ratio.

use std::fmt;

/// Text that has been lowercased, trimmed and had inner whitespace runs
/// collapsed to a single space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NormalizedText {
    text: String,
    chars: Vec<char>,
}

impl NormalizedText {
    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn chars(&self) -> &[char] {
        &self.chars
    }

    /// Length in characters.
    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }
}

impl fmt::Display for NormalizedText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl From<&str> for NormalizedText {
    fn from(raw: &str) -> Self {
        normalize(raw)
    }
}

pub fn normalize(raw: &str) -> NormalizedText {
    let mut text = String::with_capacity(raw.len());
    for word in raw.split_whitespace() {
        if !text.is_empty() {
            text.push(' ');
        }
        text.extend(word.chars().flat_map(char::to_lowercase));
    }
    let chars = text.chars().collect();
    NormalizedText { text, chars }
}

/// The matched-element count `M` and combined length `T` behind a ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchComputation {
    pub m_count: usize,
    pub t_total: usize,
}

/// A similarity percentage in `[0, 100]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct SimilarityScore(f64);

impl SimilarityScore {
    pub const ZERO: SimilarityScore = SimilarityScore(0.0);
    pub const FULL: SimilarityScore = SimilarityScore(100.0);

    /// Clamps into `[0, 100]`; NaN maps to zero.
    pub fn new(percent: f64) -> Self {
        if percent.is_nan() {
            Self::ZERO
        } else {
            SimilarityScore(percent.clamp(0.0, 100.0))
        }
    }

    pub fn percent(self) -> f64 {
        self.0
    }

    /// Two-decimal value used for display and on the wire.
    pub fn rounded(self) -> f64 {
        (self.0 * 100.0).round() / 100.0
    }
}

impl fmt::Display for SimilarityScore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.2}", self.0)
    }
}

/// A longest common block: `a[start_a..start_a + len] == b[start_b..start_b + len]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CommonBlock {
    pub start_a: usize,
    pub start_b: usize,
    pub len: usize,
}

/// Best window of the longer string for a partial match.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowAlignment {
    pub shorter_len: usize,
    pub longer_len: usize,
    pub best_offset: usize,
    pub best_score: SimilarityScore,
}

pub fn longest_common_block(a: &NormalizedText, b: &NormalizedText) -> CommonBlock {
    longest_block_in(a.chars(), b.chars())
}

// Row-by-row DP over common-suffix lengths. Scanning ends in ascending order
// and replacing only on a strictly longer block keeps the smallest start in
// `a`, then the smallest start in `b`.
fn longest_block_in(a: &[char], b: &[char]) -> CommonBlock {
    let mut best = CommonBlock {
        start_a: 0,
        start_b: 0,
        len: 0,
    };
    if a.is_empty() || b.is_empty() {
        return best;
    }
    let mut prev = vec![0usize; b.len() + 1];
    let mut curr = vec![0usize; b.len() + 1];
    for (i, ca) in a.iter().enumerate() {
        for (j, cb) in b.iter().enumerate() {
            curr[j + 1] = if ca == cb { prev[j] + 1 } else { 0 };
            let len = curr[j + 1];
            if len > best.len {
                best = CommonBlock {
                    start_a: i + 1 - len,
                    start_b: j + 1 - len,
                    len,
                };
            }
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    best
}

fn matched_chars(a: &[char], b: &[char]) -> usize {
    let block = longest_block_in(a, b);
    if block.len == 0 {
        return 0;
    }
    let left = matched_chars(&a[..block.start_a], &b[..block.start_b]);
    let right = matched_chars(
        &a[block.start_a + block.len..],
        &b[block.start_b + block.len..],
    );
    block.len + left + right
}

pub fn match_count(a: &NormalizedText, b: &NormalizedText) -> MatchComputation {
    MatchComputation {
        m_count: matched_chars(a.chars(), b.chars()),
        t_total: a.len() + b.len(),
    }
}

fn ratio_of(a: &[char], b: &[char]) -> SimilarityScore {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => SimilarityScore::FULL,
        (true, false) | (false, true) => SimilarityScore::ZERO,
        (false, false) => {
            // the leftmost-block recursion is order dependent; take the better orientation
            let m = matched_chars(a, b).max(matched_chars(b, a)) as f64;
            let t = (a.len() + b.len()) as f64;
            SimilarityScore::new(200.0 * m / t)
        }
    }
}

/// `200 * M / T`; 100 when both strings are empty, 0 when exactly one is.
///
/// `M` is the larger of `match_count(a, b)` and `match_count(b, a)`, which
/// makes the ratio symmetric in its arguments.
pub fn simple_ratio(a: &NormalizedText, b: &NormalizedText) -> SimilarityScore {
    ratio_of(a.chars(), b.chars())
}

/// Best simple ratio between the shorter string and any equal-length window
/// of the longer one. `None` if the shorter string is empty.
pub fn partial_alignment(a: &NormalizedText, b: &NormalizedText) -> Option<WindowAlignment> {
    let (shorter, longer) = if a.len() <= b.len() {
        (a.chars(), b.chars())
    } else {
        (b.chars(), a.chars())
    };
    let m = shorter.len();
    if m == 0 {
        return None;
    }
    let mut best = WindowAlignment {
        shorter_len: m,
        longer_len: longer.len(),
        best_offset: 0,
        best_score: SimilarityScore::ZERO,
    };
    for (offset, window) in longer.windows(m).enumerate() {
        let score = ratio_of(shorter, window);
        if offset == 0 || score > best.best_score {
            best.best_offset = offset;
            best.best_score = score;
            if score == SimilarityScore::FULL {
                break;
            }
        }
    }
    Some(best)
}

pub fn partial_ratio(a: &NormalizedText, b: &NormalizedText) -> SimilarityScore {
    match partial_alignment(a, b) {
        Some(alignment) => alignment.best_score,
        None if a.is_empty() && b.is_empty() => SimilarityScore::FULL,
        None => SimilarityScore::ZERO,
    }
}
