//! Squares, square-freeness and enumeration of square-free words.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

/// An occurrence of a square `vv` starting at the 1-based index `start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareOccurrence {
    pub start: usize,
    pub root: Word,
}

/// The leftmost square of `w`, shortest root first among squares at the same start.
pub fn find_square(w: &Word) -> Option<SquareOccurrence> {
    if is_square_free(w) {
        return None;
    }
    let s = w.letters();
    let n = s.len();
    (0..n).find_map(|i| {
        (1..=(n - i) / 2)
            .find(|&l| s[i..i + l] == s[i + l..i + 2 * l])
            .map(|l| SquareOccurrence {
                start: i + 1,
                root: Word::from(&s[i..i + l]),
            })
    })
}

/// Square-freeness via Main–Lorentz divide and conquer, `O(n log n)`.
pub fn is_square_free(w: &Word) -> bool {
    !contains_square(w.letters())
}

const SEPARATOR: u16 = u16::MAX;

fn z_function(s: &[u16]) -> Vec<usize> {
    let n = s.len();
    let mut z = vec![0; n];
    let (mut l, mut r) = (0, 0);
    for i in 1..n {
        if i < r {
            z[i] = (r - i).min(z[i - l]);
        }
        while i + z[i] < n && s[z[i]] == s[i + z[i]] {
            z[i] += 1;
        }
        if i + z[i] > r {
            l = i;
            r = i + z[i];
        }
    }
    z
}

fn z_at(z: &[usize], i: usize) -> usize {
    z.get(i).copied().unwrap_or(0)
}

fn widen(s: impl Iterator<Item = Letter>) -> Vec<u16> {
    s.map(u16::from).collect()
}

fn joined(a: &[u16], b: &[u16]) -> Vec<u16> {
    let mut v = Vec::with_capacity(a.len() + b.len() + 1);
    v.extend_from_slice(a);
    v.push(SEPARATOR);
    v.extend_from_slice(b);
    v
}

fn contains_square(s: &[Letter]) -> bool {
    let n = s.len();
    if n <= 1 {
        return false;
    }
    let nu = n / 2;
    let nv = n - nu;
    let (u, v) = s.split_at(nu);
    if contains_square(u) || contains_square(v) {
        return true;
    }
    // Squares crossing the split: a centre in u (left) or in v (right).
    let fu = widen(u.iter().copied());
    let fv = widen(v.iter().copied());
    let ru = widen(u.iter().rev().copied());
    let rv = widen(v.iter().rev().copied());
    let z1 = z_function(&ru);
    let z2 = z_function(&joined(&fv, &fu));
    let z3 = z_function(&joined(&ru, &rv));
    let z4 = z_function(&fv);
    (0..n).any(|centre| {
        if centre < nu {
            let l = nu - centre;
            let k1 = z_at(&z1, nu - centre);
            let k2 = z_at(&z2, nv + 1 + centre);
            l.saturating_sub(k2).max(1) <= k1.min(l - 1)
        } else {
            let l = centre - nu + 1;
            let k1 = z_at(&z3, nu + 1 + nv - 1 - (centre - nu));
            let k2 = z_at(&z4, centre - nu + 1);
            l.saturating_sub(k2).max(1) <= k1.min(l)
        }
    })
}

/// Whether `s` has a square ending at its last letter.
pub fn has_suffix_square(s: &[Letter]) -> bool {
    let n = s.len();
    (1..=n / 2).any(|l| s[n - 2 * l..n - l] == s[n - l..])
}

/// For square-free `w`, whether `w.a` is still square-free. Only squares
/// ending at the appended letter are checked.
pub fn extend_square_free(w: &Word, a: Letter) -> bool {
    let mut s = Vec::with_capacity(w.len() + 1);
    s.extend_from_slice(w.letters());
    s.push(a);
    !has_suffix_square(&s)
}

/// True iff `x` occurs at two starts `i < j` of `w` with `j - i < |x|`.
pub fn overlaps_self(x: &Word, w: &Word) -> Result<bool> {
    if x.is_empty() {
        return Err(Error::EmptyFactor);
    }
    Ok(w.occurrences(x)
        .windows(2)
        .any(|pair| pair[1] - pair[0] < x.len()))
}

/// Depth-first enumeration cursor over square-free words of a fixed length,
/// in lexicographic order, optionally restricted to a fixed prefix.
#[derive(Debug, Clone)]
pub struct SquareFreeWords {
    alphabet: u8,
    target: usize,
    floor: usize,
    buf: Vec<Letter>,
    // next[d]: next letter to try at depth d
    next: Vec<Letter>,
    emitted: bool,
    done: bool,
}

impl SquareFreeWords {
    pub fn new(alphabet: Alphabet, target: usize) -> Self {
        Self::with_prefix(alphabet, target, Word::new())
    }

    /// Words of length `target` extending `prefix`. Yields nothing when the
    /// prefix is longer than `target` or contains a square.
    pub fn with_prefix(alphabet: Alphabet, target: usize, prefix: Word) -> Self {
        let done = prefix.len() > target || !is_square_free(&prefix);
        let floor = prefix.len();
        SquareFreeWords {
            alphabet: alphabet.size(),
            target,
            floor,
            buf: prefix.into_letters(),
            next: vec![0],
            emitted: false,
            done,
        }
    }

    pub fn target(&self) -> usize {
        self.target
    }
}

impl Iterator for SquareFreeWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        if self.emitted {
            self.emitted = false;
            if self.buf.len() == self.floor {
                self.done = true;
                return None;
            }
            self.buf.pop();
            self.next.pop();
        }
        loop {
            let depth = self.buf.len();
            if depth == self.target {
                self.emitted = true;
                return Some(Word::from(&self.buf[..]));
            }
            let level = self.next.len() - 1;
            let a = self.next[level];
            if a >= self.alphabet {
                if depth == self.floor {
                    self.done = true;
                    return None;
                }
                self.next.pop();
                self.buf.pop();
                continue;
            }
            self.next[level] += 1;
            self.buf.push(a);
            if has_suffix_square(&self.buf) {
                self.buf.pop();
            } else {
                self.next.push(0);
            }
        }
    }
}

/// A uniformly seeded random square-free ternary word of length `len`, built
/// by depth-first search with a freshly shuffled letter order at every depth.
pub fn random_square_free<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Word {
    let mut buf: Vec<Letter> = Vec::with_capacity(len);
    let mut orders: Vec<([Letter; 3], usize)> = Vec::with_capacity(len + 1);
    let shuffled = |rng: &mut R| {
        let mut order = [0, 1, 2];
        order.shuffle(rng);
        order
    };
    orders.push((shuffled(rng), 0));
    while buf.len() < len {
        let (order, tried) = orders
            .last_mut()
            .expect("ternary square-free words extend forever");
        if *tried == 3 {
            orders.pop();
            buf.pop();
            continue;
        }
        let a = order[*tried];
        *tried += 1;
        buf.push(a);
        if has_suffix_square(&buf) {
            buf.pop();
        } else {
            orders.push((shuffled(rng), 0));
        }
    }
    Word::from_letters(buf)
}

/// Feeds every ternary square-free word of length `n` to `sink` in
/// lexicographic order and returns how many there were.
pub fn enumerate_square_free(n: usize, mut sink: impl FnMut(&Word)) -> u64 {
    let mut count = 0;
    for word in SquareFreeWords::new(Alphabet::TERNARY, n) {
        sink(&word);
        count += 1;
    }
    count
}

/// Number of ternary square-free words of length `n`. With `symmetry_reduced`
/// only words starting `01` are enumerated and the count is multiplied by the
/// six letter permutations.
pub fn count_square_free(n: usize, symmetry_reduced: bool) -> u64 {
    if symmetry_reduced && n >= 2 {
        let prefix = Word::from_letters(vec![0, 1]);
        6 * SquareFreeWords::with_prefix(Alphabet::TERNARY, n, prefix).count() as u64
    } else {
        SquareFreeWords::new(Alphabet::TERNARY, n).count() as u64
    }
}

/// Square-free words of length `min(depth, n)` in lexicographic order; running
/// [`SquareFreeWords::with_prefix`] on each and concatenating the results
/// reproduces the full enumeration of length `n`.
pub fn partition_prefixes(alphabet: Alphabet, n: usize, depth: usize) -> Vec<Word> {
    SquareFreeWords::new(alphabet, depth.min(n)).collect()
}

pub(crate) fn worker_pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Range(format!("cannot start {jobs} workers: {e}")))
}

/// All ternary square-free words of length `n` in lexicographic order,
/// enumerated on `jobs` workers by prefix.
pub fn collect_square_free(n: usize, jobs: usize) -> Result<Vec<Word>> {
    let prefixes = partition_prefixes(Alphabet::TERNARY, n, 4);
    let blocks: Vec<Vec<Word>> = worker_pool(jobs)?.install(|| {
        prefixes
            .into_par_iter()
            .map(|prefix| SquareFreeWords::with_prefix(Alphabet::TERNARY, n, prefix).collect())
            .collect()
    });
    Ok(blocks.into_iter().flatten().collect())
}

/// Parallel form of [`count_square_free`].
pub fn count_square_free_parallel(n: usize, symmetry_reduced: bool, jobs: usize) -> Result<u64> {
    let (prefix, factor) = if symmetry_reduced && n >= 2 {
        (Word::from_letters(vec![0, 1]), 6)
    } else {
        (Word::new(), 1)
    };
    let depth = (prefix.len() + 4).min(n);
    let prefixes: Vec<Word> =
        SquareFreeWords::with_prefix(Alphabet::TERNARY, depth, prefix).collect();
    let count: u64 = worker_pool(jobs)?.install(|| {
        prefixes
            .into_par_iter()
            .map(|p| SquareFreeWords::with_prefix(Alphabet::TERNARY, n, p).count() as u64)
            .sum()
    });
    Ok(factor * count)
}

/// Rough upper estimate of the number of ternary square-free words of length
/// `n`, used for resource ceilings (growth rate about 1.3018).
pub fn estimated_count(n: usize) -> u64 {
    (13.0 * 1.302f64.powi(n as i32)).ceil() as u64
}
