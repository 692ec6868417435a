//! Definitional reference computations.
//!
//! Nothing here shares code with the optimised paths in [`crate::local_period`],
//! [`crate::square_free`] or [`crate::word`]. The verification suites run both
//! routes and report any disagreement, and the unit tests use these functions
//! to freeze expected values.

use crate::word::{Letter, Word};

/// Whether a repetition word of length `q` exists at position `p` (1-based),
/// by filling in the letters of a candidate `u` from both sides of the cut.
///
/// `u` must begin with `y` (or `y` with `u`) and end with `x` (or `x` with `u`),
/// where `w = x.y`, `|x| = p`. Letter `k` of `u` is pinned to `y[k]` when
/// `k < |y|` and to `x[p - q + k]` when `k >= q - p`; a candidate exists iff no
/// index is pinned to two different letters.
pub fn has_repetition_word(w: &[Letter], p: usize, q: usize) -> bool {
    let n = w.len();
    let mut u: Vec<Option<Letter>> = vec![None; q];
    for (k, slot) in u.iter_mut().enumerate().take(n - p) {
        *slot = Some(w[p + k]);
    }
    for k in q.saturating_sub(p)..q {
        let from_x = w[p + k - q];
        match u[k] {
            Some(a) if a != from_x => return false,
            _ => u[k] = Some(from_x),
        }
    }
    true
}

/// The minimal local period at `p` by scanning `q = 1, 2, ...`.
pub fn local_period(w: &[Letter], p: usize) -> usize {
    assert!(p >= 1 && p < w.len(), "position {p} out of range");
    (1..=w.len())
        .find(|&q| has_repetition_word(w, p, q))
        .expect("q = |w| always admits a repetition word")
}

/// Minimal local periods for `p = 1..|w|`.
pub fn local_periods(w: &[Letter]) -> Vec<usize> {
    (1..w.len()).map(|p| local_period(w, p)).collect()
}

/// Whether `u` is a repetition word at `p`, straight from the definition:
/// (`u = x'x` or `x = x'u`) and (`u = y y'` or `y = u y'`).
pub fn is_repetition_word(w: &[Letter], p: usize, u: &[Letter]) -> bool {
    let (x, y) = w.split_at(p);
    let left = u.ends_with(x) || x.ends_with(u);
    let right = u.starts_with(y) || y.starts_with(u);
    !u.is_empty() && left && right
}

/// Smallest `p >= 1` with `w[i] = w[i + p]` wherever both sides exist.
pub fn global_period(w: &[Letter]) -> usize {
    assert!(!w.is_empty());
    (1..=w.len())
        .find(|&p| (0..w.len() - p).all(|i| w[i] == w[i + p]))
        .expect("|w| is a period")
}

/// Unbordered: no nonempty proper prefix equals the suffix of the same length.
pub fn is_unbordered(w: &[Letter]) -> bool {
    (1..w.len()).all(|b| w[..b] != w[w.len() - b..])
}

/// Square detection over every `(start, root length)` pair.
pub fn is_square_free(w: &[Letter]) -> bool {
    let n = w.len();
    !(0..n).any(|i| (1..=(n - i) / 2).any(|l| w[i..i + l] == w[i + l..i + 2 * l]))
}

/// Counts square-free words of length `n` by filtering all `size^n` words.
pub fn count_square_free(size: u8, n: usize) -> u64 {
    all_words(size, n)
        .filter(|w| is_square_free(w.letters()))
        .count() as u64
}

/// Every word of length `n` over `{0..size-1}` in lexicographic order.
pub fn all_words(size: u8, n: usize) -> impl Iterator<Item = Word> {
    let total = (size as u64).pow(n as u32);
    (0..total).map(move |mut code| {
        let mut letters = vec![0; n];
        for slot in letters.iter_mut().rev() {
            *slot = (code % size as u64) as u8;
            code /= size as u64;
        }
        Word::from_letters(letters)
    })
}
