//! Acceptance gate: one line per criterion, `[PASS]` or `[FAIL]`, with the
//! measured runtime against its bound. Exits non-zero when any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use critfact::oracle;
use critfact::square_free::count_square_free;
use critfact::thue::{alpha_n, beta_family, beta_n, construct_wx, m_n, m_prefix, tau_iter, x_n};
use critfact::verify::{
    verify, verify_alpha_extremal, verify_beta_eta, TheoremId, VerificationReport, VerifyOptions,
};
use critfact::{is_square_free, local_period, local_periods, profile, repetition_info, Word};

type Check = fn() -> Result<String, String>;

struct Criterion {
    id: u8,
    name: &'static str,
    bound: Duration,
    check: Check,
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn w(s: &str) -> Word {
    s.parse().expect("fixture word")
}

fn opts() -> VerifyOptions {
    VerifyOptions {
        jobs: 1,
        ..VerifyOptions::default()
    }
}

fn passed(report: &VerificationReport) -> Result<String, String> {
    if report.passed() {
        Ok(format!(
            "{} PASS over {} cases",
            report.theorem, report.tested
        ))
    } else {
        let first: Vec<String> = report
            .counterexamples
            .iter()
            .take(3)
            .map(|c| format!("{} ({})", c.word, c.detail))
            .collect();
        Err(format!(
            "{} FAIL: {} counterexamples, first {}",
            report.theorem,
            report.counterexamples.len(),
            first.join("; ")
        ))
    }
}

fn suite(theorem: TheoremId, min: usize, max: usize) -> Result<VerificationReport, String> {
    verify(theorem, min, max, &opts()).map_err(|e| format!("{theorem}: {e}"))
}

fn c1_nineteen_letters() -> Result<String, String> {
    let word = w("0120201202021021021");
    let expected = [3, 5, 5, 2, 5, 5, 19, 19, 2, 2, 19, 19, 3, 3, 3, 3, 3, 3];
    ensure!(
        oracle::local_periods(word.letters()) == expected,
        "oracle disagrees with the expected sequence"
    );
    let prof = profile(&word).map_err(|e| e.to_string())?;
    ensure!(prof.period == 19, "per = {}", prof.period);
    ensure!(
        prof.local_periods == expected,
        "local periods {:?}",
        prof.local_periods
    );
    ensure!(prof.eta == 4, "eta = {}", prof.eta);
    ensure!(
        prof.density() == Ratio::new(4, 18),
        "density {}",
        prof.density()
    );
    ensure!(prof.len() - 1 == 18, "denominator {}", prof.len() - 1);
    Ok("per 19, eta 4, density 4/18".into())
}

fn c2_left_overflow() -> Result<String, String> {
    let word = w("01020120210201021");
    let prof = profile(&word).map_err(|e| e.to_string())?;
    ensure!(prof.period == 17, "per = {}", prof.period);
    ensure!(
        prof.critical_points == (5..=13).collect::<Vec<_>>(),
        "critical {:?}",
        prof.critical_points
    );
    ensure!(prof.eta == 9, "eta = {}", prof.eta);
    let info = repetition_info(&word, 4).map_err(|e| e.to_string())?;
    ensure!(info.length() == 12, "per(w,4) = {}", info.length());
    ensure!(info.u == w("012021020102"), "u = {}", info.u);
    ensure!(
        oracle::is_repetition_word(word.letters(), 4, info.u.letters()),
        "u is not a repetition word"
    );
    Ok("critical points 5..13, u = 012021020102".into())
}

fn c3_tau4() -> Result<String, String> {
    let word = tau_iter(0, 4).map_err(|e| e.to_string())?;
    ensure!(word == w("012021012102012021020121"), "tau^4(0) = {word}");
    let mut expected = vec![3, 6, 6, 12, 12, 12, 12];
    expected.extend([24; 12]);
    expected.extend([14, 14, 6, 2]);
    let prof = profile(&word).map_err(|e| e.to_string())?;
    ensure!(
        prof.local_periods == expected,
        "local periods {:?}",
        prof.local_periods
    );
    ensure!(
        oracle::local_periods(word.letters()) == expected,
        "oracle disagrees"
    );
    ensure!(prof.eta == 12, "eta = {}", prof.eta);
    Ok("24-letter word, eta 12".into())
}

fn c4_two_23_letter_words() -> Result<String, String> {
    let first = profile(&w("01210212021020121021202")).map_err(|e| e.to_string())?;
    ensure!(first.period == 13, "per = {}", first.period);
    ensure!(
        first.non_critical_points() == vec![1, 2, 22],
        "non-critical points {:?}, expected {{1,2,22}} (local periods {:?})",
        first.non_critical_points(),
        first.local_periods
    );
    let second = profile(&w("01020121021201020121020")).map_err(|e| e.to_string())?;
    ensure!(second.period == 22, "per = {}", second.period);
    ensure!(
        second.non_critical_points().len() == 14,
        "{} non-critical points",
        second.non_critical_points().len()
    );
    Ok("per 13 with {1,2,22}; per 22 with 14 non-critical".into())
}

fn c5_cft() -> Result<String, String> {
    let report = suite(TheoremId::Cft, 2, 14)?;
    let ranges = report.range["universes"].to_string();
    ensure!(
        ranges.contains("all-ternary") && ranges.contains("all-binary"),
        "universes {ranges}"
    );
    let all_ternary: u64 = (2..=11).map(|n| 3u64.pow(n)).sum();
    let binary: u64 = (12..=14).map(|n| 2u64.pow(n)).sum();
    ensure!(
        report.tested >= all_ternary + binary,
        "tested only {}",
        report.tested
    );
    passed(&report)
}

fn c6_overflow_rep_words() -> Result<String, String> {
    let mut lines = Vec::new();
    for theorem in [
        TheoremId::OverflowIffSquareFree,
        TheoremId::MinRepUnbordered,
        TheoremId::NoSelfOverlap,
        TheoremId::Midpoint,
        TheoremId::Unimodal,
    ] {
        lines.push(passed(&suite(theorem, 2, 12)?)?);
    }
    Ok(lines.join(", "))
}

fn c7_midpoint_interval() -> Result<String, String> {
    let mut lines = Vec::new();
    for theorem in [
        TheoremId::Midpoint,
        TheoremId::Unimodal,
        TheoremId::Interval,
    ] {
        lines.push(passed(&suite(theorem, 2, 25)?)?);
    }
    Ok(lines.join(", "))
}

fn c8_upper_bound() -> Result<String, String> {
    let options = VerifyOptions {
        upper_bound_samples: 10_000,
        sample_lengths: (28, 60),
        ..opts()
    };
    let report = verify(TheoremId::UpperBound, 26, 27, &options).map_err(|e| e.to_string())?;
    let exhaustive = count_square_free(26, false) + count_square_free(27, false);
    ensure!(
        report.tested == exhaustive + 10_000,
        "tested {} != {exhaustive} + 10000",
        report.tested
    );
    passed(&report)
}

fn c9_lower_bound() -> Result<String, String> {
    passed(&suite(TheoremId::LowerBound, 2, 25)?)
}

fn c10_beta_family() -> Result<String, String> {
    let words = beta_family(3, 10_000).map_err(|e| e.to_string())?;
    ensure!(words.len() == 3, "{} words", words.len());
    let mut lengths = Vec::new();
    for word in &words {
        let n = word.len();
        let prof = profile(word).map_err(|e| e.to_string())?;
        ensure!(is_square_free(word), "{word} has a square");
        ensure!(prof.period == n, "{word} is bordered");
        ensure!(prof.eta + 5 == n, "{word}: eta {} with |w| {n}", prof.eta);
        ensure!(
            prof.non_critical_points() == vec![1, 2, n - 2, n - 1],
            "{word}: {:?}",
            prof.non_critical_points()
        );
        for (p, per, u) in [
            (1, 2, "10"),
            (2, 4, "0201"),
            (n - 2, 4, "1202"),
            (n - 1, 2, "21"),
        ] {
            let info = repetition_info(word, p).map_err(|e| e.to_string())?;
            ensure!(
                info.length() == per && info.u == w(u),
                "{word} at {p}: per {} u {}",
                info.length(),
                info.u
            );
        }
        lengths.push(n);
    }
    let mut distinct = lengths.clone();
    distinct.sort_unstable();
    distinct.dedup();
    ensure!(distinct.len() == 3, "lengths {lengths:?} are not distinct");
    passed(&verify_beta_eta(3, 10_000, &opts()).map_err(|e| e.to_string())?)?;
    Ok(format!("lengths {lengths:?}"))
}

fn c11_wx_family() -> Result<String, String> {
    for n in 1..=4usize {
        let x = x_n(n).map_err(|e| e.to_string())?;
        let word = construct_wx(&x).map_err(|e| e.to_string())?;
        let len = word.len();
        ensure!(is_square_free(&word), "w_x{n} has a square");
        let prof = profile(&word).map_err(|e| e.to_string())?;
        ensure!(
            prof.eta == 4usize.pow(n as u32) + 8,
            "n={n}: eta {}",
            prof.eta
        );
        ensure!(
            prof.eta == x.len() + 3,
            "n={n}: eta {} vs |x|+3 = {}",
            prof.eta,
            x.len() + 3
        );
        let density = Ratio::new(prof.eta, len);
        ensure!(
            density == Ratio::new(1, 4) + Ratio::new(1, len),
            "n={n}: eta/|w| = {density}"
        );
    }
    for n in 1..=3usize {
        let bound = 4usize.pow(n as u32 + 2);
        let prefix = m_prefix(bound);
        let alpha = alpha_n(n).map_err(|e| e.to_string())?;
        let beta = beta_n(n).map_err(|e| e.to_string())?;
        let pa = prefix
            .find(&alpha)
            .ok_or(format!("alpha_{n} not in m[1..{bound}]"))?;
        let pb = prefix
            .find(&beta)
            .ok_or(format!("beta_{n} not in m[1..{bound}]"))?;
        if n == 1 {
            ensure!(pa > 9, "alpha_1 at {pa}");
            ensure!(pb > 17, "beta_1 at {pb}");
        }
    }
    Ok("n = 1..4 exact densities; alpha_n, beta_n located".into())
}

fn c12_thue() -> Result<String, String> {
    for n in 1..=12usize {
        let len = tau_iter(0, n).map_err(|e| e.to_string())?.len();
        ensure!(len == 3 << (n - 1), "|tau^{n}(0)| = {len}");
    }
    for n in 1..=5usize {
        let mn = m_n(n).map_err(|e| e.to_string())?;
        ensure!(
            mn.len() == 4usize.pow(n as u32) - 1,
            "|m_{n}| = {}",
            mn.len()
        );
        ensure!(
            mn.concat(&w("0")) == m_prefix(4usize.pow(n as u32)),
            "m_{n}.0 is not a prefix of m"
        );
    }
    let m = m_prefix(100_000);
    ensure!(is_square_free(&m), "m[1..1e5] has a square");
    for bad in ["010", "212", "01201"] {
        ensure!(!m.contains_factor(&w(bad)), "m[1..1e5] contains {bad}");
    }
    Ok("lengths, m_n alignment, m[1..1e5] square-free and avoids 010, 212, 01201".into())
}

fn c13_alpha() -> Result<String, String> {
    let report = verify_alpha_extremal();
    ensure!(
        report.range["longestUnbordered"] == 13,
        "range {}",
        report.range
    );
    ensure!(
        report.range["witnesses"] == serde_json::json!(["0121021202102"]),
        "range {}",
        report.range
    );
    passed(&report)
}

fn c14_oracle() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let pairs = 100_000;
    for k in 0..pairs {
        let n = rng.gen_range(2..=200);
        let letters: Vec<u8> = (0..n).map(|_| rng.gen_range(0..3)).collect();
        let p = rng.gen_range(1..n);
        let word = Word::from_letters(letters);
        let fast = local_period(&word, p).map_err(|e| e.to_string())?;
        let slow = oracle::local_period(word.letters(), p);
        ensure!(
            fast == slow,
            "pair {k}: {word} at {p}: {fast} vs oracle {slow}"
        );
        if k % 50 == 0 {
            let swept = local_periods(&word)[p - 1];
            ensure!(swept == slow, "pair {k}: sweep {swept} vs oracle {slow}");
        }
    }
    for n in 1..=10 {
        let fast = count_square_free(n, false);
        let brute = oracle::count_square_free(3, n);
        ensure!(fast == brute, "n={n}: {fast} vs {brute}");
    }
    Ok(format!("{pairs} pairs agree; counts n = 1..10 agree"))
}

fn strip_elapsed(stdout: &[u8]) -> Result<serde_json::Value, String> {
    let mut value: serde_json::Value =
        serde_json::from_slice(stdout).map_err(|e| format!("bad JSON: {e}"))?;
    value
        .as_object_mut()
        .ok_or("report is not an object")?
        .remove("elapsedMs");
    Ok(value)
}

fn c15_determinism() -> Result<String, String> {
    let runs: [&[&str]; 5] = [
        &["cft", "--max", "10"],
        &["interval", "--max", "18"],
        &["overflow", "--max", "9"],
        &[
            "upper-bound",
            "--min",
            "26",
            "--max",
            "26",
            "--samples",
            "300",
        ],
        &["beta-eta", "--count", "3", "--bound", "10000"],
    ];
    for args in runs {
        let mut reports = Vec::new();
        for jobs in ["1", "8"] {
            let out = Command::new(env!("CARGO_BIN_EXE_critfact"))
                .arg("verify")
                .args(args)
                .args(["--json", "--jobs", jobs])
                .output()
                .map_err(|e| e.to_string())?;
            ensure!(
                out.status.code() == Some(0),
                "{args:?} --jobs {jobs}: exit {:?}",
                out.status.code()
            );
            reports.push(strip_elapsed(&out.stdout)?);
        }
        ensure!(
            reports[0] == reports[1],
            "{args:?}: --jobs 1 and --jobs 8 differ"
        );
    }
    Ok(format!(
        "{} suites identical for --jobs 1 and --jobs 8",
        runs.len()
    ))
}

const SECOND: Duration = Duration::from_secs(1);
const MINUTE: Duration = Duration::from_secs(60);

const CRITERIA: [Criterion; 15] = [
    Criterion {
        id: 1,
        name: "19-letter word profile",
        bound: SECOND,
        check: c1_nineteen_letters,
    },
    Criterion {
        id: 2,
        name: "17-letter word, interval 5..13",
        bound: SECOND,
        check: c2_left_overflow,
    },
    Criterion {
        id: 3,
        name: "tau^4(0) profile",
        bound: SECOND,
        check: c3_tau4,
    },
    Criterion {
        id: 4,
        name: "23-letter words, per 13 and 22",
        bound: SECOND,
        check: c4_two_23_letter_words,
    },
    Criterion {
        id: 5,
        name: "CFT ternary <= 11, binary <= 14",
        bound: Duration::from_secs(120),
        check: c5_cft,
    },
    Criterion {
        id: 6,
        name: "overflow, unbordered rep words, no overlap <= 12",
        bound: Duration::from_secs(120),
        check: c6_overflow_rep_words,
    },
    Criterion {
        id: 7,
        name: "midpoint, unimodal, interval <= 25",
        bound: Duration::from_secs(300),
        check: c7_midpoint_interval,
    },
    Criterion {
        id: 8,
        name: "upper bound 26..27 + 1e4 samples",
        bound: Duration::from_secs(300),
        check: c8_upper_bound,
    },
    Criterion {
        id: 9,
        name: "lower bound <= 25",
        bound: Duration::from_secs(300),
        check: c9_lower_bound,
    },
    Criterion {
        id: 10,
        name: "beta family eta = |w|-5",
        bound: MINUTE,
        check: c10_beta_family,
    },
    Criterion {
        id: 11,
        name: "w_x family density",
        bound: Duration::from_secs(180),
        check: c11_wx_family,
    },
    Criterion {
        id: 12,
        name: "Thue infrastructure",
        bound: MINUTE,
        check: c12_thue,
    },
    Criterion {
        id: 13,
        name: "alpha extremality",
        bound: Duration::from_secs(120),
        check: c13_alpha,
    },
    Criterion {
        id: 14,
        name: "oracle coherence",
        bound: Duration::from_secs(120),
        check: c14_oracle,
    },
    Criterion {
        id: 15,
        name: "--jobs determinism",
        bound: Duration::from_secs(120),
        check: c15_determinism,
    },
];

fn main() {
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for criterion in &CRITERIA {
        let started = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(criterion.check)).unwrap_or_else(|e| {
            Err(format!(
                "panicked: {:?}",
                e.downcast_ref::<String>()
                    .map(String::as_str)
                    .or(e.downcast_ref::<&str>().copied())
            ))
        });
        let elapsed = started.elapsed();
        let result = match result {
            Ok(msg) if elapsed > criterion.bound => {
                Err(format!("{msg}, but took longer than {:?}", criterion.bound))
            }
            other => other,
        };
        let (tag, detail) = match &result {
            Ok(msg) => ("PASS", msg.as_str()),
            Err(msg) => ("FAIL", msg.as_str()),
        };
        println!(
            "[{tag}] criterion {:>2} {} ({:.2?} / bound {:?}): {detail}",
            criterion.id, criterion.name, elapsed, criterion.bound
        );
        if result.is_err() {
            failures += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        CRITERIA.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
