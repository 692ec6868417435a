//! Bounded searches around two open questions: for which lengths of `x` is
//! `w_x = 0x02x10x02x0` square-free, and does any square-free word reach
//! `4 eta = |w|`. Reports cover the searched range only.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::local_period::profile;
use crate::square_free::{estimated_count, is_square_free, SquareFreeWords};
use crate::thue::construct_wx;
use crate::word::{Alphabet, Word};

pub const PROBLEM1_READING: &str =
    "searching for square-free x such that w_x = 0x02x10x02x0 is square-free (assumed interpretation of the question)";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WxSearchRow {
    pub length: usize,
    /// Square-free candidates examined before stopping.
    pub searched: u64,
    /// Lexicographically first `x` with `w_x` square-free.
    pub witness: Option<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Problem1Report {
    pub interpretation: String,
    pub rows: Vec<WxSearchRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct QuarterRow {
    pub length: usize,
    pub words: u64,
    pub min_eta: usize,
    /// `min (4 eta - |w|)`; zero means some word attains `eta = |w|/4`.
    pub min_slack: usize,
    /// Words with `4 eta = |w|`.
    pub witnesses: Vec<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Problem2Report {
    pub rows: Vec<QuarterRow>,
}

/// For each `|x|` in `len_min..=len_max`, walks the square-free `x` in
/// lexicographic order until `w_x` is square-free.
pub fn explore_problem1(len_min: usize, len_max: usize, max_words: u64) -> Result<Problem1Report> {
    if len_min < 1 || len_min > len_max {
        return Err(Error::Range(format!(
            "need 1 <= min <= max, got min={len_min} max={len_max}"
        )));
    }
    let estimated = (len_min..=len_max).fold(0u64, |acc, n| acc.saturating_add(estimated_count(n)));
    if estimated > max_words {
        return Err(Error::ResourceGuard {
            estimated,
            ceiling: max_words,
        });
    }
    let rows = (len_min..=len_max)
        .map(|length| {
            let mut searched = 0;
            let witness = SquareFreeWords::new(Alphabet::TERNARY, length).find(|x| {
                searched += 1;
                is_square_free(&construct_wx(x).expect("ternary"))
            });
            WxSearchRow {
                length,
                searched,
                witness,
            }
        })
        .collect();
    Ok(Problem1Report {
        interpretation: PROBLEM1_READING.to_string(),
        rows,
    })
}

/// Minimum of `4 eta(w) - |w|` over square-free words with `4 | |w| <= len_max`.
pub fn explore_problem2(len_max: usize, max_words: u64) -> Result<Problem2Report> {
    if len_max > 30 {
        return Err(Error::Range(format!(
            "problem2 is limited to lengths <= 30, got {len_max}"
        )));
    }
    let lengths: Vec<usize> = (4..=len_max).step_by(4).collect();
    let estimated = lengths
        .iter()
        .fold(0u64, |acc, &n| acc.saturating_add(estimated_count(n)));
    if estimated > max_words {
        return Err(Error::ResourceGuard {
            estimated,
            ceiling: max_words,
        });
    }
    let rows = lengths
        .into_iter()
        .map(|length| {
            let mut row = QuarterRow {
                length,
                words: 0,
                min_eta: usize::MAX,
                min_slack: usize::MAX,
                witnesses: vec![],
            };
            for w in SquareFreeWords::new(Alphabet::TERNARY, length) {
                let eta = profile(&w).expect("length >= 4").eta;
                row.words += 1;
                row.min_eta = row.min_eta.min(eta);
                // 4 eta >= |w| for square-free words; saturate so a violation shows as 0
                let slack = (4 * eta).saturating_sub(length);
                row.min_slack = row.min_slack.min(slack);
                if 4 * eta == length {
                    row.witnesses.push(w);
                }
            }
            row
        })
        .collect();
    Ok(Problem2Report { rows })
}
