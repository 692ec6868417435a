//! Wire formats for profiles: a JSON object per word and a CSV table with one
//! row per position.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::local_period::PeriodProfile;
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RepetitionRecord {
    pub p: usize,
    pub u: Word,
    pub left_overflow: bool,
    pub right_overflow: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ProfileRecord {
    pub word: Word,
    pub period: usize,
    pub local_periods: Vec<usize>,
    pub critical_points: Vec<usize>,
    pub eta: usize,
    /// Unreduced: `eta`.
    pub density_num: usize,
    /// Unreduced: `|w| - 1`.
    pub density_den: usize,
    pub midpoint: usize,
    pub repetition_words: Vec<RepetitionRecord>,
}

impl From<&PeriodProfile> for ProfileRecord {
    fn from(prof: &PeriodProfile) -> Self {
        ProfileRecord {
            word: prof.word.clone(),
            period: prof.period,
            local_periods: prof.local_periods.clone(),
            critical_points: prof.critical_points.clone(),
            eta: prof.eta,
            density_num: prof.eta,
            density_den: prof.len() - 1,
            midpoint: prof.midpoint,
            repetition_words: prof
                .repetition_infos()
                .into_iter()
                .map(|info| RepetitionRecord {
                    p: info.position,
                    u: info.u,
                    left_overflow: info.left_overflow,
                    right_overflow: info.right_overflow,
                })
                .collect(),
        }
    }
}

impl TryFrom<ProfileRecord> for PeriodProfile {
    type Error = Error;

    /// Rebuilds the profile from its word, period and local periods, and
    /// rejects records whose derived fields disagree with them.
    fn try_from(record: ProfileRecord) -> Result<Self> {
        if record.word.len() < 2 || record.local_periods.len() != record.word.len() - 1 {
            return Err(Error::Range(format!(
                "record for {} carries {} local periods",
                record.word,
                record.local_periods.len()
            )));
        }
        let rebuilt = PeriodProfile::from_parts(
            record.word.clone(),
            record.period,
            record.local_periods.clone(),
        );
        if ProfileRecord::from(&rebuilt) != record {
            return Err(Error::Range(format!(
                "record for {} is internally inconsistent",
                record.word
            )));
        }
        Ok(rebuilt)
    }
}

pub const CSV_HEADER: &str = "p,localPeriod,u,leftOverflow,rightOverflow,critical";

/// CSV rows (without header) for one profile.
pub fn csv_rows(prof: &PeriodProfile) -> Vec<String> {
    prof.repetition_infos()
        .into_iter()
        .map(|info| {
            format!(
                "{},{},{},{},{},{}",
                info.position,
                info.length(),
                info.u,
                info.left_overflow,
                info.right_overflow,
                prof.is_critical(info.position)
            )
        })
        .collect()
}
