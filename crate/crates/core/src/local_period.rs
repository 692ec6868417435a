//! Local periods, minimal repetition words and critical points.
//!
//! An integer `q` is a local period of `w` at `p` exactly when
//! `w[i] = w[i + q]` for every `i` in `max(1, p - q + 1) ..= min(p, |w| - q)`.
//! The window covers an interior square `uu` around the cut, a repetition word
//! that overflows one end, and the double overflow case where the condition
//! collapses to `q` being a global period.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::word::{global_period, Word};

/// The minimal repetition word at a position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepetitionInfo {
    pub position: usize,
    pub u: Word,
    pub left_overflow: bool,
    pub right_overflow: bool,
}

impl RepetitionInfo {
    /// `per(w, p)`.
    pub fn length(&self) -> usize {
        self.u.len()
    }

    pub fn has_overflow(&self) -> bool {
        self.left_overflow || self.right_overflow
    }
}

/// Everything about the critical factorisations of one word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodProfile {
    pub word: Word,
    pub period: usize,
    /// `local_periods[p - 1] = per(w, p)` for `p = 1..|w|`.
    pub local_periods: Vec<usize>,
    /// Ascending.
    pub critical_points: Vec<usize>,
    pub eta: usize,
    pub midpoint: usize,
}

impl PeriodProfile {
    /// Assembles a profile from already computed local periods.
    pub fn from_parts(word: Word, period: usize, local_periods: Vec<usize>) -> Self {
        let critical_points: Vec<usize> = local_periods
            .iter()
            .enumerate()
            .filter(|(_, &q)| q == period)
            .map(|(k, _)| k + 1)
            .collect();
        let midpoint = word.len().div_ceil(2);
        PeriodProfile {
            eta: critical_points.len(),
            word,
            period,
            local_periods,
            critical_points,
            midpoint,
        }
    }

    /// `|w|`. A profile always describes a word of length at least 2.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.word.len()
    }

    /// `per(w, p)` for a 1-based position.
    pub fn local_period_at(&self, p: usize) -> Option<usize> {
        p.checked_sub(1)
            .and_then(|k| self.local_periods.get(k).copied())
    }

    pub fn is_critical(&self, p: usize) -> bool {
        self.local_period_at(p) == Some(self.period)
    }

    /// Positions that are not critical, ascending.
    pub fn non_critical_points(&self) -> Vec<usize> {
        (1..self.len()).filter(|&p| !self.is_critical(p)).collect()
    }

    /// `eta / (|w| - 1)`, reduced.
    pub fn density(&self) -> Ratio<usize> {
        Ratio::new(self.eta, self.len() - 1)
    }

    /// `eta / |w|`, reduced.
    pub fn density_over_length(&self) -> Ratio<usize> {
        Ratio::new(self.eta, self.len())
    }

    /// Endpoints `(q1, q2)` when the critical points are consecutive, `None` otherwise.
    pub fn critical_interval(&self) -> Option<(usize, usize)> {
        let first = *self.critical_points.first()?;
        let last = *self.critical_points.last()?;
        (last - first + 1 == self.eta).then_some((first, last))
    }

    /// Non-decreasing up to the midpoint and non-increasing after it.
    pub fn is_unimodal(&self) -> bool {
        let lp = &self.local_periods;
        let m = self.midpoint;
        (2..self.len()).all(|p| {
            let (prev, cur) = (lp[p - 2], lp[p - 1]);
            if p <= m {
                prev <= cur
            } else {
                cur <= prev
            }
        })
    }

    /// Minimal repetition words for every position.
    pub fn repetition_infos(&self) -> Vec<RepetitionInfo> {
        self.local_periods
            .iter()
            .enumerate()
            .map(|(k, &q)| build_repetition_info(&self.word, k + 1, q))
            .collect()
    }
}

fn check_position(w: &Word, p: usize) -> Result<()> {
    if p >= 1 && p < w.len() {
        Ok(())
    } else {
        Err(Error::InvalidPosition { p, len: w.len() })
    }
}

fn window_holds(s: &[u8], p: usize, q: usize) -> bool {
    let n = s.len();
    let lo = if p >= q { p - q + 1 } else { 1 };
    let hi = p.min(n - q);
    (lo..=hi).all(|i| s[i - 1] == s[i - 1 + q])
}

pub fn is_local_period(w: &Word, p: usize, q: usize) -> Result<bool> {
    check_position(w, p)?;
    if q == 0 || q > w.len() {
        return Err(Error::InvalidPeriod { q, len: w.len() });
    }
    Ok(window_holds(w.letters(), p, q))
}

/// `per(w, p)`, the smallest local period at `p`.
pub fn local_period(w: &Word, p: usize) -> Result<usize> {
    check_position(w, p)?;
    Ok((1..=w.len())
        .find(|&q| window_holds(w.letters(), p, q))
        .expect("|w| is a local period"))
}

/// `per(w, p)` for every position in one sweep over the shifts.
///
/// For each shift `q` the mismatches `w[i] != w[i + q]` are prefix-counted, so
/// every unresolved position is tested in constant time. Shifts stop at the
/// global period, which is a local period everywhere.
pub fn local_periods(w: &Word) -> Vec<usize> {
    let s = w.letters();
    let n = s.len();
    if n < 2 {
        return Vec::new();
    }
    let period = global_period(w).expect("nonempty");
    let mut result = vec![period; n - 1];
    let mut open: Vec<usize> = (1..n).collect();
    let mut mismatches = vec![0u32; n + 1];
    for q in 1..period {
        if open.is_empty() {
            break;
        }
        // mismatches[i] = #{ j <= i : s[j] != s[j + q] }, 1-based.
        for i in 1..=n - q {
            mismatches[i] = mismatches[i - 1] + u32::from(s[i - 1] != s[i - 1 + q]);
        }
        open.retain(|&p| {
            let lo = if p >= q { p - q + 1 } else { 1 };
            let hi = p.min(n - q);
            let holds = lo > hi || mismatches[hi] == mismatches[lo - 1];
            if holds {
                result[p - 1] = q;
            }
            !holds
        });
    }
    result
}

fn build_repetition_info(w: &Word, p: usize, q: usize) -> RepetitionInfo {
    let s = w.letters();
    let n = s.len();
    let letters: Vec<u8> = if q <= n - p {
        s[p..p + q].to_vec()
    } else if q <= p {
        s[p - q..p].to_vec()
    } else {
        // y followed by the part of x that y does not cover
        let missing = q - (n - p);
        s[p..].iter().chain(&s[p - missing..p]).copied().collect()
    };
    RepetitionInfo {
        position: p,
        u: Word::from_letters(letters),
        left_overflow: q > p,
        right_overflow: q > n - p,
    }
}

/// The minimal repetition word at `p` with its overflow flags.
pub fn repetition_info(w: &Word, p: usize) -> Result<RepetitionInfo> {
    let q = local_period(w, p)?;
    Ok(build_repetition_info(w, p, q))
}

/// `M(w) = floor((|w| + 1) / 2)`.
pub fn midpoint(w: &Word) -> Result<usize> {
    if w.len() < 2 {
        return Err(Error::TooShort { len: w.len() });
    }
    Ok(w.len().div_ceil(2))
}

pub fn profile(w: &Word) -> Result<PeriodProfile> {
    if w.len() < 2 {
        return Err(Error::TooShort { len: w.len() });
    }
    let period = global_period(w)?;
    Ok(PeriodProfile::from_parts(
        w.clone(),
        period,
        local_periods(w),
    ))
}
