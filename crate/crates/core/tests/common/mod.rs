//! Brute-force reference implementations. Deliberately naive and independent
//! of the library's DP and ranking code.

#![allow(dead_code)]

use careerpath_core::{CareerRecord, Dataset, Education, Level};

/// Longest common substring by enumerating every (length, i, j), longest
/// first, then leftmost in `a`, then leftmost in `b`.
pub fn lcb(a: &[char], b: &[char]) -> (usize, usize, usize) {
    let max = a.len().min(b.len());
    for len in (1..=max).rev() {
        for i in 0..=a.len() - len {
            for j in 0..=b.len() - len {
                if a[i..i + len] == b[j..j + len] {
                    return (i, j, len);
                }
            }
        }
    }
    (0, 0, 0)
}

pub fn match_count(a: &[char], b: &[char]) -> usize {
    let (i, j, len) = lcb(a, b);
    if len == 0 {
        return 0;
    }
    len + match_count(&a[..i], &b[..j]) + match_count(&a[i + len..], &b[j + len..])
}

pub fn simple_ratio(a: &[char], b: &[char]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 100.0;
    }
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let m = match_count(a, b).max(match_count(b, a));
    200.0 * m as f64 / (a.len() + b.len()) as f64
}

pub fn partial_ratio(a: &[char], b: &[char]) -> f64 {
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if short.is_empty() {
        return if long.is_empty() { 100.0 } else { 0.0 };
    }
    let mut best = 0.0f64;
    for start in 0..=long.len() - short.len() {
        best = best.max(simple_ratio(short, &long[start..start + short.len()]));
    }
    best
}

pub fn chars(s: &str) -> Vec<char> {
    s.chars().collect()
}

pub fn norm(s: &str) -> Vec<char> {
    s.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
        .chars()
        .collect()
}

/// (rendered path, score, partial?, record id) in final order.
pub type NaiveItem = (String, f64, bool, u64);

/// Straight-line two-pass suggestion: simple pass > 60, else partial pass > 80,
/// truncate by education, drop empty paths, keep max per path, sort.
pub fn naive_suggest(
    goal: &str,
    education: Education,
    dataset: &Dataset,
    simple_threshold: f64,
    partial_threshold: f64,
) -> Vec<NaiveItem> {
    let g = norm(goal);
    let mut hits: Vec<NaiveItem> = Vec::new();
    for record in dataset.records() {
        let s = simple_ratio(&g, &norm(record.work_position()));
        if s > simple_threshold {
            if let Some(path) = naive_path(record, education) {
                hits.push((path, s, false, record.id().0));
            }
        }
    }
    if hits.is_empty() {
        for record in dataset.records() {
            let p = partial_ratio(&g, &norm(record.work_position()));
            if p > partial_threshold {
                if let Some(path) = naive_path(record, education) {
                    hits.push((path, p, true, record.id().0));
                }
            }
        }
    }
    let mut merged: Vec<NaiveItem> = Vec::new();
    for hit in hits {
        match merged.iter_mut().find(|m| m.0 == hit.0) {
            Some(existing) => {
                if hit.1 > existing.1 || (hit.1 == existing.1 && hit.3 < existing.3) {
                    *existing = hit;
                }
            }
            None => merged.push(hit),
        }
    }
    // selection sort: highest score first, lowest record id on ties
    let mut out = Vec::new();
    while !merged.is_empty() {
        let mut pick = 0;
        for k in 1..merged.len() {
            let (a, b) = (&merged[k], &merged[pick]);
            if a.1 > b.1 || (a.1 == b.1 && a.3 < b.3) {
                pick = k;
            }
        }
        out.push(merged.remove(pick));
    }
    out
}

fn naive_path(record: &CareerRecord, education: Education) -> Option<String> {
    let mut parts = Vec::new();
    let levels: &[Level] = match education {
        Education::HighSchool => &[Level::Bachelors, Level::Masters, Level::Doctoral],
        Education::Bachelors => &[Level::Masters, Level::Doctoral],
    };
    for level in levels {
        if let Some(stage) = record.stage(*level) {
            let word = match level {
                Level::Bachelors => "Bachelors",
                Level::Masters => "Masters",
                Level::Doctoral => "Doctoral",
            };
            parts.push(format!("{word}, {}", stage.stream));
        }
    }
    if parts.is_empty() {
        None
    } else {
        Some(parts.join(" > "))
    }
}
