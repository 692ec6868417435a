//! The morphism `0 -> 012, 1 -> 02, 2 -> 1`, prefixes of its fixed point `m`,
//! and the word families built from them.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::square_free::is_square_free;
use crate::word::{Letter, Word};

fn image(a: Letter) -> &'static [Letter] {
    match a {
        0 => &[0, 1, 2],
        1 => &[0, 2],
        2 => &[1],
        _ => unreachable!("checked ternary"),
    }
}

fn lit(s: &str) -> Word {
    s.parse().expect("ternary literal")
}

fn check_n(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        Err(Error::Range(format!("{what} requires n >= 1")))
    } else {
        Ok(())
    }
}

/// Letterwise image of a ternary word.
pub fn tau(w: &Word) -> Result<Word> {
    w.check_ternary()?;
    Ok(Word::from_letters(
        w.letters()
            .iter()
            .flat_map(|&a| image(a).iter().copied())
            .collect(),
    ))
}

/// `tau^n(a)`.
pub fn tau_iter(a: Letter, n: usize) -> Result<Word> {
    let mut w = Word::from_letters(vec![a]);
    w.check_ternary()?;
    for _ in 0..n {
        w = tau(&w)?;
    }
    Ok(w)
}

/// The length-`len` prefix of the fixed point `m = 012021012102...`.
pub fn m_prefix(len: usize) -> Word {
    let mut w = Word::from_letters(vec![0]);
    while w.len() < len {
        w = tau(&w).expect("ternary");
    }
    Word::from(&w.letters()[..len])
}

/// `m_n = tau^(2n-1)(0) tau^(2n-3)(0) ... tau^3(0) tau(0)`, of length `4^n - 1`.
pub fn m_n(n: usize) -> Result<Word> {
    check_n(n, "m_n")?;
    let mut odd_powers = Vec::with_capacity(n);
    let mut t = tau_iter(0, 1)?;
    odd_powers.push(t.clone());
    for _ in 1..n {
        t = tau(&tau(&t)?)?;
        odd_powers.push(t.clone());
    }
    let letters = odd_powers
        .iter()
        .rev()
        .flat_map(|p| p.letters().iter().copied())
        .collect();
    Ok(Word::from_letters(letters))
}

/// `102 m_n 021`.
pub fn alpha_n(n: usize) -> Result<Word> {
    Ok(lit("102").concat(&m_n(n)?).concat(&lit("021")))
}

/// `102 m_n 101202`.
pub fn beta_n(n: usize) -> Result<Word> {
    Ok(lit("102").concat(&m_n(n)?).concat(&lit("101202")))
}

/// `120102 m_n`, of length `4^n + 5`.
pub fn x_n(n: usize) -> Result<Word> {
    Ok(lit("120102").concat(&m_n(n)?))
}

/// `w_x = 0 x 02 x 10 x 02 x 0`, of length `4|x| + 8`.
pub fn construct_wx(x: &Word) -> Result<Word> {
    x.check_ternary()?;
    let parts = [
        lit("0"),
        x.clone(),
        lit("02"),
        x.clone(),
        lit("10"),
        x.clone(),
        lit("02"),
        x.clone(),
        lit("0"),
    ];
    Ok(Word::from_letters(
        parts
            .iter()
            .flat_map(|p| p.letters().iter().copied())
            .collect(),
    ))
}

/// Words `0 beta 2` where `beta = 10201 alpha 12021` is a factor of the
/// length-`search_bound` prefix of `m` starting after position 9.
///
/// Occurrences of `10201` are taken in order. Each is completed by the
/// earliest `12021` at or after its end that yields a length not produced
/// before, so the words returned have strictly distinct lengths. Occurrences
/// with no such completion inside the prefix are skipped.
pub fn beta_family(count: usize, search_bound: usize) -> Result<Vec<Word>> {
    if count == 0 {
        return Err(Error::Range("beta family requires count >= 1".into()));
    }
    let m = m_prefix(search_bound);
    let head = lit("10201");
    let tail = lit("12021");
    let tails = m.occurrences(&tail);
    let mut seen = BTreeSet::new();
    let mut found = Vec::with_capacity(count);
    for start in m.occurrences(&head).into_iter().filter(|&s| s >= 10) {
        if found.len() == count {
            break;
        }
        let first_tail = tails.partition_point(|&t| t < start + head.len());
        let completion = tails[first_tail..]
            .iter()
            .map(|&t| t + tail.len() - start)
            .find(|len| !seen.contains(len));
        if let Some(len) = completion {
            seen.insert(len);
            let beta = m.factor(start, start + len - 1)?;
            found.push(lit("0").concat(&beta).concat(&lit("2")));
        }
    }
    if found.len() < count {
        return Err(Error::InsufficientBound {
            found: found.len(),
            requested: count,
            bound: search_bound,
        });
    }
    Ok(found)
}

/// Selects one generated word family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    MPrefix(usize),
    TauIter(usize),
    Mn(usize),
    AlphaN(usize),
    BetaN(usize),
    Wx(Word),
    /// `w_x` for `x = x_n`.
    WxN(usize),
    Xn(usize),
    BetaFamily {
        count: usize,
        search_bound: usize,
    },
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::MPrefix(_) => "m-prefix",
            FamilySpec::TauIter(_) => "tau",
            FamilySpec::Mn(_) => "mn",
            FamilySpec::AlphaN(_) => "alpha",
            FamilySpec::BetaN(_) => "beta",
            FamilySpec::Wx(_) => "wx-of",
            FamilySpec::WxN(_) => "wx",
            FamilySpec::Xn(_) => "xn",
            FamilySpec::BetaFamily { .. } => "beta-family",
        }
    }

    pub fn params(&self) -> serde_json::Value {
        match self {
            FamilySpec::MPrefix(len) => json!({ "len": len }),
            FamilySpec::TauIter(n)
            | FamilySpec::Mn(n)
            | FamilySpec::AlphaN(n)
            | FamilySpec::BetaN(n)
            | FamilySpec::WxN(n)
            | FamilySpec::Xn(n) => json!({ "n": n }),
            FamilySpec::Wx(x) => json!({ "x": x.to_string() }),
            FamilySpec::BetaFamily {
                count,
                search_bound,
            } => json!({ "count": count, "bound": search_bound }),
        }
    }

    /// Length of the longest word this spec will materialise, without building it.
    pub fn max_length(&self) -> u128 {
        let four = |n: usize| 4u128.saturating_pow(n as u32);
        match self {
            FamilySpec::MPrefix(len) => *len as u128,
            FamilySpec::TauIter(n) => 3 * (1u128 << (*n).min(120)) / 2,
            FamilySpec::Mn(n) => four(*n),
            FamilySpec::AlphaN(n) | FamilySpec::BetaN(n) | FamilySpec::Xn(n) => four(*n) + 8,
            FamilySpec::Wx(x) => 4 * x.len() as u128 + 8,
            FamilySpec::WxN(n) => 4 * (four(*n) + 5) + 8,
            FamilySpec::BetaFamily { search_bound, .. } => *search_bound as u128 + 2,
        }
    }

    pub fn generate(&self) -> Result<Vec<Word>> {
        Ok(match self {
            FamilySpec::MPrefix(len) => vec![m_prefix(*len)],
            FamilySpec::TauIter(n) => vec![tau_iter(0, *n)?],
            FamilySpec::Mn(n) => vec![m_n(*n)?],
            FamilySpec::AlphaN(n) => vec![alpha_n(*n)?],
            FamilySpec::BetaN(n) => vec![beta_n(*n)?],
            FamilySpec::Wx(x) => vec![construct_wx(x)?],
            FamilySpec::WxN(n) => vec![construct_wx(&x_n(*n)?)?],
            FamilySpec::Xn(n) => vec![x_n(*n)?],
            FamilySpec::BetaFamily {
                count,
                search_bound,
            } => beta_family(*count, *search_bound)?,
        })
    }
}

/// JSON sidecar describing one generated word.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilySidecar {
    pub family: String,
    pub params: serde_json::Value,
    pub length: usize,
    pub square_free: bool,
}

impl FamilySidecar {
    pub fn describe(spec: &FamilySpec, word: &Word) -> Self {
        FamilySidecar {
            family: spec.name().to_string(),
            params: spec.params(),
            length: word.len(),
            square_free: is_square_free(word),
        }
    }
}
