//! Exhaustive and family-based verification suites.
//!
//! Every suite profiles each word through the optimised sweep and through the
//! definitional scan in [`crate::oracle`]; a disagreement is reported as a
//! counterexample regardless of the property under test. Work is partitioned
//! by enumeration prefix and merged with counterexamples re-sorted, so reports
//! do not depend on the number of worker threads.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::local_period::{profile, PeriodProfile};
use crate::oracle;
use crate::square_free::{
    estimated_count, has_suffix_square, is_square_free, overlaps_self, partition_prefixes,
    random_square_free, worker_pool, SquareFreeWords,
};
use crate::thue::{beta_family, construct_wx, x_n};
use crate::word::{global_period, is_unbordered, Alphabet, Word};

/// The longest unbordered square-free word starting with `01` in which `01`
/// occurs only as a prefix.
pub const ALPHA: &str = "0121021202102";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    Cft,
    Midpoint,
    Unimodal,
    Interval,
    OverflowIffSquareFree,
    MinRepUnbordered,
    NoSelfOverlap,
    UpperBound,
    AlphaExtremal,
    BetaEta,
    LowerBound,
    WxDensity,
}

impl TheoremId {
    pub const ALL: [TheoremId; 12] = [
        TheoremId::Cft,
        TheoremId::Midpoint,
        TheoremId::Unimodal,
        TheoremId::Interval,
        TheoremId::OverflowIffSquareFree,
        TheoremId::MinRepUnbordered,
        TheoremId::NoSelfOverlap,
        TheoremId::UpperBound,
        TheoremId::AlphaExtremal,
        TheoremId::BetaEta,
        TheoremId::LowerBound,
        TheoremId::WxDensity,
    ];

    /// Identifier used in JSON reports.
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Cft => "CFT",
            TheoremId::Midpoint => "MIDPOINT",
            TheoremId::Unimodal => "UNIMODAL",
            TheoremId::Interval => "INTERVAL",
            TheoremId::OverflowIffSquareFree => "OVERFLOW_IFF_SQUAREFREE",
            TheoremId::MinRepUnbordered => "MIN_REP_UNBORDERED",
            TheoremId::NoSelfOverlap => "NO_SELF_OVERLAP",
            TheoremId::UpperBound => "UPPER_BOUND",
            TheoremId::AlphaExtremal => "ALPHA_EXTREMAL",
            TheoremId::BetaEta => "BETA_ETA",
            TheoremId::LowerBound => "LOWER_BOUND",
            TheoremId::WxDensity => "WX_DENSITY",
        }
    }

    /// Name used on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            TheoremId::Cft => "cft",
            TheoremId::Midpoint => "midpoint",
            TheoremId::Unimodal => "unimodal",
            TheoremId::Interval => "interval",
            TheoremId::OverflowIffSquareFree => "overflow",
            TheoremId::MinRepUnbordered => "rep-unbordered",
            TheoremId::NoSelfOverlap => "no-overlap",
            TheoremId::UpperBound => "upper-bound",
            TheoremId::AlphaExtremal => "alpha-extremal",
            TheoremId::BetaEta => "beta-eta",
            TheoremId::LowerBound => "lower-bound",
            TheoremId::WxDensity => "wx-density",
        }
    }

    /// Whether the suite runs over a range of word lengths via [`verify`].
    pub fn is_range_suite(self) -> bool {
        !matches!(
            self,
            TheoremId::AlphaExtremal | TheoremId::BetaEta | TheoremId::WxDensity
        )
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    /// Accepts both the command-line name and the report identifier.
    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.cli_name() == s || t.as_str() == s)
            .ok_or_else(|| Error::Range(format!("unknown theorem {s:?}")))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for TheoremId {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counterexample {
    pub word: String,
    pub detail: String,
}

impl Counterexample {
    fn new(word: &Word, detail: impl Into<String>) -> Self {
        Counterexample {
            word: word.to_string(),
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub range: serde_json::Value,
    pub tested: u64,
    /// Sorted by word, then detail.
    pub counterexamples: Vec<Counterexample>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn verdict(&self) -> Verdict {
        if self.counterexamples.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict() == Verdict::Pass
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ReportJson::from(self)).expect("report serialises")
    }
}

/// Wire form of a [`VerificationReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportJson {
    pub theorem: TheoremId,
    pub range: serde_json::Value,
    pub tested: u64,
    pub counterexamples: Vec<Counterexample>,
    pub elapsed_ms: u64,
    pub verdict: Verdict,
}

impl From<&VerificationReport> for ReportJson {
    fn from(r: &VerificationReport) -> Self {
        ReportJson {
            theorem: r.theorem,
            range: r.range.clone(),
            tested: r.tested,
            counterexamples: r.counterexamples.clone(),
            elapsed_ms: r.elapsed.as_millis() as u64,
            verdict: r.verdict(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Worker threads; results are identical for every value.
    pub jobs: usize,
    /// Ceiling on the estimated number of words a run may visit.
    pub max_words: u64,
    /// Longest word a suite may profile.
    pub max_profile_len: usize,
    /// Longest word cross-checked against the cubic definitional scan.
    pub oracle_max_len: usize,
    /// Random square-free words added to the upper-bound suite.
    pub upper_bound_samples: usize,
    pub sample_lengths: (usize, usize),
    pub seed: u64,
    /// The CFT suite also covers every ternary word (square-free or not) up to this length
    pub cft_all_ternary_max: usize,
    /// and every binary word up to this length.
    pub cft_binary_max: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            jobs: 1,
            max_words: 1_000_000,
            max_profile_len: 5000,
            oracle_max_len: 1200,
            upper_bound_samples: 10_000,
            sample_lengths: (28, 60),
            seed: 0x5eed,
            cft_all_ternary_max: 11,
            cft_binary_max: 14,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Universe {
    SquareFree,
    AllTernary,
    AllBinary,
}

impl Universe {
    fn name(self) -> &'static str {
        match self {
            Universe::SquareFree => "ternary-square-free",
            Universe::AllTernary => "all-ternary",
            Universe::AllBinary => "all-binary",
        }
    }

    fn estimate(self, len: usize) -> u64 {
        match self {
            Universe::SquareFree => estimated_count(len),
            Universe::AllTernary => 3u64.saturating_pow(len as u32),
            Universe::AllBinary => 2u64.saturating_pow(len as u32),
        }
    }
}

/// One contiguous block of a run: every word of one universe and length
/// extending `prefix`, or a block of random samples.
#[derive(Debug, Clone)]
enum Task {
    Words {
        universe: Universe,
        len: usize,
        prefix: Word,
    },
    Samples {
        first: usize,
        count: usize,
    },
}

#[derive(Debug, Default)]
struct Partial {
    tested: u64,
    counterexamples: Vec<Counterexample>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.tested += other.tested;
        self.counterexamples.extend(other.counterexamples);
        self
    }
}

const PARTITION_DEPTH: usize = 4;
const SAMPLE_BLOCK: usize = 250;

fn finish(
    theorem: TheoremId,
    range: serde_json::Value,
    partial: Partial,
    started: Instant,
) -> VerificationReport {
    let mut counterexamples = partial.counterexamples;
    counterexamples.sort();
    VerificationReport {
        theorem,
        range,
        tested: partial.tested,
        counterexamples,
        elapsed: started.elapsed(),
    }
}

/// Profiles `w` and cross-checks every local period against the definitional scan.
fn checked_profile(
    w: &Word,
    opts: &VerifyOptions,
    out: &mut Vec<Counterexample>,
) -> Option<PeriodProfile> {
    let prof = match profile(w) {
        Ok(p) => p,
        Err(e) => {
            out.push(Counterexample::new(w, format!("profile failed: {e}")));
            return None;
        }
    };
    if w.len() <= opts.oracle_max_len {
        let reference = oracle::local_periods(w.letters());
        if let Some(k) = (0..reference.len()).find(|&k| reference[k] != prof.local_periods[k]) {
            out.push(Counterexample::new(
                w,
                format!(
                    "local period mismatch at p={}: sweep {} vs definition {}",
                    k + 1,
                    prof.local_periods[k],
                    reference[k]
                ),
            ));
        }
        if oracle::global_period(w.letters()) != prof.period {
            out.push(Counterexample::new(w, "global period mismatch"));
        }
    }
    Some(prof)
}

fn check_word(theorem: TheoremId, w: &Word, opts: &VerifyOptions, out: &mut Vec<Counterexample>) {
    let Some(prof) = checked_profile(w, opts, out) else {
        return;
    };
    let n = w.len();
    match theorem {
        TheoremId::Cft => {
            if prof.eta == 0 {
                out.push(Counterexample::new(w, "no critical point"));
            } else if prof.critical_points[0] > prof.period {
                out.push(Counterexample::new(
                    w,
                    format!(
                        "first critical point {} exceeds per(w)={}",
                        prof.critical_points[0], prof.period
                    ),
                ));
            }
        }
        TheoremId::Midpoint => {
            if !prof.is_critical(prof.midpoint) {
                out.push(Counterexample::new(
                    w,
                    format!("midpoint {} is not critical", prof.midpoint),
                ));
            }
        }
        TheoremId::Unimodal => {
            if !prof.is_unimodal() {
                out.push(Counterexample::new(
                    w,
                    format!("local periods {:?} are not unimodal", prof.local_periods),
                ));
            }
        }
        TheoremId::Interval => match prof.critical_interval() {
            Some((q1, q2)) if q1 <= prof.midpoint && prof.midpoint <= q2 => {}
            Some((q1, q2)) => out.push(Counterexample::new(
                w,
                format!(
                    "critical interval [{q1}, {q2}] misses midpoint {}",
                    prof.midpoint
                ),
            )),
            None => out.push(Counterexample::new(
                w,
                format!(
                    "critical points {:?} are not an interval",
                    prof.critical_points
                ),
            )),
        },
        TheoremId::OverflowIffSquareFree => {
            let infos = prof.repetition_infos();
            let all_overflow = infos.iter().all(|info| info.has_overflow());
            let square_free = is_square_free(w);
            if square_free != all_overflow {
                let witness = infos.iter().find(|i| !i.has_overflow()).map(|i| i.position);
                out.push(Counterexample::new(
                    w,
                    format!("square-free={square_free} but every position overflows={all_overflow} (first interior: {witness:?})"),
                ));
            }
        }
        TheoremId::MinRepUnbordered => {
            for info in prof.repetition_infos() {
                let p = info.position;
                if !oracle::is_repetition_word(w.letters(), p, info.u.letters()) {
                    out.push(Counterexample::new(
                        w,
                        format!("p={p}: {} is not a repetition word", info.u),
                    ));
                } else if !is_unbordered(&info.u).unwrap_or(false) {
                    out.push(Counterexample::new(
                        w,
                        format!("p={p}: minimal repetition word {} is bordered", info.u),
                    ));
                }
                // two overflows force a critical point
                if info.left_overflow && info.right_overflow && !prof.is_critical(p) {
                    out.push(Counterexample::new(
                        w,
                        format!("p={p}: double overflow but not critical"),
                    ));
                }
            }
        }
        TheoremId::NoSelfOverlap => {
            let s = w.letters();
            for i in 0..n {
                for j in i + 1..=n {
                    let x = Word::from(&s[i..j]);
                    if overlaps_self(&x, w).unwrap_or(false) {
                        out.push(Counterexample::new(
                            w,
                            format!("factor {x} overlaps itself"),
                        ));
                        return;
                    }
                }
            }
        }
        TheoremId::UpperBound => {
            if prof.eta + 5 > n {
                out.push(Counterexample::new(
                    w,
                    format!("eta={} exceeds |w|-5={}", prof.eta, n as i64 - 5),
                ));
            }
        }
        TheoremId::LowerBound => {
            if 4 * prof.eta < n {
                out.push(Counterexample::new(
                    w,
                    format!("4*eta={} is below |w|={n}", 4 * prof.eta),
                ));
            }
        }
        TheoremId::AlphaExtremal | TheoremId::BetaEta | TheoremId::WxDensity => {
            unreachable!("not a per-word suite")
        }
    }
}

fn words_of(universe: Universe, len: usize, prefix: &Word) -> Box<dyn Iterator<Item = Word>> {
    let size = match universe {
        Universe::SquareFree => {
            return Box::new(SquareFreeWords::with_prefix(
                Alphabet::TERNARY,
                len,
                prefix.clone(),
            ));
        }
        Universe::AllTernary => 3,
        Universe::AllBinary => 2,
    };
    let prefix = prefix.clone();
    Box::new(oracle::all_words(size, len - prefix.len()).map(move |tail| prefix.concat(&tail)))
}

fn prefixes(universe: Universe, len: usize) -> Vec<Word> {
    let depth = PARTITION_DEPTH.min(len);
    match universe {
        Universe::SquareFree => partition_prefixes(Alphabet::TERNARY, len, depth),
        Universe::AllTernary => oracle::all_words(3, depth).collect(),
        Universe::AllBinary => oracle::all_words(2, depth).collect(),
    }
}

fn sample_word(seed: u64, index: usize, lengths: (usize, usize)) -> Word {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let len = rng.gen_range(lengths.0..=lengths.1);
    random_square_free(&mut rng, len)
}

fn universes_for(theorem: TheoremId, len: usize, opts: &VerifyOptions) -> Vec<Universe> {
    match theorem {
        TheoremId::Cft => {
            let mut u = vec![if len <= opts.cft_all_ternary_max {
                Universe::AllTernary
            } else {
                Universe::SquareFree
            }];
            // binary words are already inside the all-ternary block
            if len <= opts.cft_binary_max && len > opts.cft_all_ternary_max {
                u.push(Universe::AllBinary);
            }
            u
        }
        TheoremId::OverflowIffSquareFree | TheoremId::MinRepUnbordered => {
            vec![Universe::AllTernary]
        }
        _ => vec![Universe::SquareFree],
    }
}

/// Runs a per-word suite over every word of the suite's universe with length
/// in `min_len..=max_len`.
pub fn verify(
    theorem: TheoremId,
    min_len: usize,
    max_len: usize,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let started = Instant::now();
    if !theorem.is_range_suite() {
        return Err(Error::Range(format!(
            "{theorem} is not a length-range suite"
        )));
    }
    if min_len < 2 || min_len > max_len {
        return Err(Error::Range(format!(
            "need 2 <= min <= max, got min={min_len} max={max_len}"
        )));
    }
    if theorem == TheoremId::UpperBound && min_len < 26 {
        return Err(Error::Range(format!(
            "upper-bound requires min >= 26, got {min_len}"
        )));
    }
    let samples = if theorem == TheoremId::UpperBound {
        opts.upper_bound_samples
    } else {
        0
    };
    if samples > 0 && (opts.sample_lengths.0 < 26 || opts.sample_lengths.0 > opts.sample_lengths.1)
    {
        return Err(Error::Range(format!(
            "invalid sample lengths {:?}",
            opts.sample_lengths
        )));
    }

    let mut blocks: Vec<(Universe, usize)> = Vec::new();
    for len in min_len..=max_len {
        for u in universes_for(theorem, len, opts) {
            blocks.push((u, len));
        }
    }
    let estimated = blocks.iter().fold(samples as u64, |acc, &(u, len)| {
        acc.saturating_add(u.estimate(len))
    });
    if estimated > opts.max_words {
        return Err(Error::ResourceGuard {
            estimated,
            ceiling: opts.max_words,
        });
    }

    let mut tasks: Vec<Task> = blocks
        .iter()
        .flat_map(|&(universe, len)| {
            prefixes(universe, len)
                .into_iter()
                .map(move |prefix| Task::Words {
                    universe,
                    len,
                    prefix,
                })
        })
        .collect();
    tasks.extend(
        (0..samples)
            .step_by(SAMPLE_BLOCK)
            .map(|first| Task::Samples {
                first,
                count: SAMPLE_BLOCK.min(samples - first),
            }),
    );

    let run_task = |task: &Task| -> Partial {
        let mut part = Partial::default();
        let words: Box<dyn Iterator<Item = Word>> = match task {
            Task::Words {
                universe,
                len,
                prefix,
            } => words_of(*universe, *len, prefix),
            Task::Samples { first, count } => Box::new(
                (*first..first + count).map(|i| sample_word(opts.seed, i, opts.sample_lengths)),
            ),
        };
        for w in words {
            part.tested += 1;
            check_word(theorem, &w, opts, &mut part.counterexamples);
        }
        part
    };
    let partial = worker_pool(opts.jobs)?.install(|| {
        tasks
            .par_iter()
            .map(run_task)
            .reduce(Partial::default, Partial::merge)
    });

    let mut spans: BTreeMap<&'static str, (usize, usize)> = BTreeMap::new();
    for &(u, len) in &blocks {
        let span = spans.entry(u.name()).or_insert((len, len));
        span.0 = span.0.min(len);
        span.1 = span.1.max(len);
    }
    let universes: Vec<serde_json::Value> = spans
        .into_iter()
        .map(|(kind, (lo, hi))| json!({ "kind": kind, "minLen": lo, "maxLen": hi }))
        .collect();
    let mut range = json!({
        "minLen": min_len,
        "maxLen": max_len,
        "universes": universes,
        "oracleCrossCheck": max_len <= opts.oracle_max_len,
    });
    if samples > 0 {
        range["samples"] = json!({
            "count": samples,
            "minLen": opts.sample_lengths.0,
            "maxLen": opts.sample_lengths.1,
            "seed": opts.seed,
        });
    }
    Ok(finish(theorem, range, partial, started))
}

/// Searches every unbordered square-free ternary word that starts with `01`
/// and contains `01` nowhere else; passes iff the longest is unique and equals
/// [`ALPHA`].
pub fn verify_alpha_extremal() -> VerificationReport {
    let started = Instant::now();
    let mut buf: Vec<u8> = vec![0, 1];
    let mut next: Vec<u8> = vec![0];
    let mut visited = 1u64;
    let mut longest: Vec<Word> = vec![Word::from(&buf[..])];
    let mut square_free_max = 2;
    loop {
        let level = next.len() - 1;
        let a = next[level];
        if a == 3 {
            if level == 0 {
                break;
            }
            next.pop();
            buf.pop();
            continue;
        }
        next[level] += 1;
        buf.push(a);
        let introduces_01 = buf[buf.len() - 2..] == [0, 1];
        if introduces_01 || has_suffix_square(&buf) {
            buf.pop();
            continue;
        }
        visited += 1;
        square_free_max = square_free_max.max(buf.len());
        if oracle::is_unbordered(&buf) {
            let w = Word::from(&buf[..]);
            match longest[0].len().cmp(&w.len()) {
                std::cmp::Ordering::Less => longest = vec![w],
                std::cmp::Ordering::Equal => longest.push(w),
                std::cmp::Ordering::Greater => {}
            }
        }
        next.push(0);
    }
    longest.sort();
    let alpha: Word = ALPHA.parse().expect("ternary literal");
    let mut counterexamples = Vec::new();
    if longest != [alpha.clone()] {
        for w in &longest {
            counterexamples.push(Counterexample::new(
                w,
                format!("longest candidate has length {}", w.len()),
            ));
        }
    }
    if !is_square_free(&alpha) || !is_unbordered(&alpha).unwrap_or(false) {
        counterexamples.push(Counterexample::new(
            &alpha,
            "alpha is not square-free and unbordered",
        ));
    }
    let range = json!({
        "prefix": "01",
        "constraint": "01 occurs only as a prefix",
        "longestSquareFree": square_free_max,
        "longestUnbordered": longest[0].len(),
        "witnesses": longest.iter().map(Word::to_string).collect::<Vec<_>>(),
    });
    finish(
        TheoremId::AlphaExtremal,
        range,
        Partial {
            tested: visited,
            counterexamples,
        },
        started,
    )
}

/// Expected `(p, per(w, p), repetition word)` at the four non-critical points
/// of a β-family word of length `n`.
pub fn beta_table(n: usize) -> [(usize, usize, &'static str); 4] {
    [
        (1, 2, "10"),
        (2, 4, "0201"),
        (n - 2, 4, "1202"),
        (n - 1, 2, "21"),
    ]
}

/// Checks the first `count` β-family words found in the length-`search_bound`
/// prefix of `m`.
pub fn verify_beta_eta(
    count: usize,
    search_bound: usize,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let started = Instant::now();
    if search_bound as u64 > opts.max_words {
        return Err(Error::ResourceGuard {
            estimated: search_bound as u64,
            ceiling: opts.max_words,
        });
    }
    let words = beta_family(count, search_bound)?;
    let mut out = Vec::new();
    for w in &words {
        let n = w.len();
        if n > opts.max_profile_len {
            return Err(Error::ResourceGuard {
                estimated: n as u64,
                ceiling: opts.max_profile_len as u64,
            });
        }
        if !w.to_string().starts_with("010201") || !w.to_string().ends_with("120212") {
            out.push(Counterexample::new(
                w,
                "does not have the shape 010201...120212",
            ));
        }
        if !is_square_free(w) {
            out.push(Counterexample::new(w, "not square-free"));
        }
        if global_period(w)? != n {
            out.push(Counterexample::new(w, "bordered"));
        }
        let Some(prof) = checked_profile(w, opts, &mut out) else {
            continue;
        };
        if prof.eta + 5 != n {
            out.push(Counterexample::new(
                w,
                format!("eta={} but |w|-5={}", prof.eta, n - 5),
            ));
        }
        let non_critical = prof.non_critical_points();
        if non_critical != [1, 2, n - 2, n - 1] {
            out.push(Counterexample::new(
                w,
                format!("non-critical points {non_critical:?}"),
            ));
        }
        let infos = prof.repetition_infos();
        for (p, per, u) in beta_table(n) {
            let info = &infos[p - 1];
            if info.length() != per || info.u.to_string() != u {
                out.push(Counterexample::new(
                    w,
                    format!(
                        "p={p}: per={} u={} (expected per={per} u={u})",
                        info.length(),
                        info.u
                    ),
                ));
            }
        }
    }
    let lengths: Vec<usize> = words.iter().map(Word::len).collect();
    let range = json!({ "count": count, "bound": search_bound, "lengths": lengths });
    Ok(finish(
        TheoremId::BetaEta,
        range,
        Partial {
            tested: words.len() as u64,
            counterexamples: out,
        },
        started,
    ))
}

/// Checks `w = w_x` for `x = x_n`, `n = 1..=n_max`: square-free, `eta = |x| + 3`,
/// `eta/|w| = 1/4 + 1/|w|` exactly, critical interval `[2|x|+4, 3|x|+6]`, and
/// strictly decreasing density.
pub fn verify_wx_density(n_max: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    let started = Instant::now();
    if !(1..=6).contains(&n_max) {
        return Err(Error::Range(format!(
            "wx-density requires 1 <= n <= 6, got {n_max}"
        )));
    }
    let longest = 4 * (4usize.pow(n_max as u32) + 5) + 8;
    if longest > opts.max_profile_len {
        return Err(Error::ResourceGuard {
            estimated: longest as u64,
            ceiling: opts.max_profile_len as u64,
        });
    }
    let mut out = Vec::new();
    let mut densities: Vec<Ratio<usize>> = Vec::new();
    let mut rows = Vec::new();
    let mut previous: Option<Ratio<usize>> = None;
    for n in 1..=n_max {
        let x = x_n(n)?;
        let w = construct_wx(&x)?;
        let k = x.len();
        if !is_square_free(&w) {
            out.push(Counterexample::new(&w, format!("n={n}: not square-free")));
        }
        let Some(prof) = checked_profile(&w, opts, &mut out) else {
            continue;
        };
        if prof.eta != k + 3 {
            out.push(Counterexample::new(
                &w,
                format!("n={n}: eta={} expected {}", prof.eta, k + 3),
            ));
        }
        let ratio = prof.density_over_length();
        if ratio != Ratio::new(1, 4) + Ratio::new(1, w.len()) {
            out.push(Counterexample::new(
                &w,
                format!("n={n}: eta/|w|={ratio} is not 1/4 + 1/{}", w.len()),
            ));
        }
        if prof.critical_interval() != Some((2 * k + 4, 3 * k + 6)) {
            out.push(Counterexample::new(
                &w,
                format!(
                    "n={n}: critical interval {:?} expected [{}, {}]",
                    prof.critical_interval(),
                    2 * k + 4,
                    3 * k + 6
                ),
            ));
        }
        if previous.is_some_and(|d| ratio >= d) {
            out.push(Counterexample::new(
                &w,
                format!("n={n}: density {ratio} did not decrease"),
            ));
        }
        previous = Some(ratio);
        densities.push(ratio);
        rows.push(
            json!({ "n": n, "length": w.len(), "eta": prof.eta, "density": ratio.to_string() }),
        );
    }
    let range = json!({ "nMin": 1, "nMax": n_max, "words": rows });
    Ok(finish(
        TheoremId::WxDensity,
        range,
        Partial {
            tested: densities.len() as u64,
            counterexamples: out,
        },
        started,
    ))
}
