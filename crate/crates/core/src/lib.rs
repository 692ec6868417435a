//! Critical factorisation of finite words.
//!
//! The crate computes global and local periods, minimal repetition words and
//! critical points of words over small alphabets, enumerates square-free
//! ternary words, generates the word families derived from the morphism
//! `0 -> 012, 1 -> 02, 2 -> 1`, and runs exhaustive verification suites for
//! the structural properties of critical points in square-free words.
//!
//! Positions and letter indices are 1-based in every public interface: the
//! position `p` is the cut `w = x.y` with `|x| = p`, so a word of length `n`
//! has positions `1..n`.

pub mod error;
pub mod explore;
pub mod local_period;
pub mod oracle;
pub mod record;
pub mod square_free;
pub mod thue;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use local_period::{
    is_local_period, local_period, local_periods, midpoint, profile, repetition_info,
    PeriodProfile, RepetitionInfo,
};
pub use square_free::{
    collect_square_free, count_square_free, count_square_free_parallel, enumerate_square_free,
    extend_square_free, find_square, is_square_free, overlaps_self, SquareFreeWords,
    SquareOccurrence,
};
pub use word::{border_array, global_period, is_unbordered, Alphabet, Letter, Word};
