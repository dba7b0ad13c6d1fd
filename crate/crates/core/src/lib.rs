//! Word problem for weakly C(4) monoid presentations.
//!
//! A presentation is weakly C(n) when no relation word is a product of
//! fewer than `n` pieces, a piece being a factor that occurs at two
//! distinct places among the distinct relation words. For weakly C(4)
//! presentations this crate decides `u ≡ v` in time linear in `|u| + |v|`.
//!
//! ```
//! use small_overlap::{parse_presentation, Solver};
//!
//! let pres = parse_presentation("gens: a b c d\nrel: abcd = badc").unwrap();
//! let solver = Solver::new(pres).unwrap();
//! let p = solver.presentation();
//! let u = p.parse_word("aabcdc").unwrap();
//! let v = p.parse_word("abadcc").unwrap();
//! assert!(solver.equals(&u, &v));
//! ```
//!
//! The [`oracle`] module holds an independent brute-force implementation
//! used for differential testing.

pub mod bench;
pub mod cli;
pub mod differential;
pub mod error;
pub mod oracle;
pub mod overlap;
pub mod pieces;
pub mod presentation;
pub mod word;
pub mod word_problem;

pub use error::{Error, Result};
pub use overlap::{OverlapIndex, OverlapPrefixRecord, RelationPrefix};
pub use pieces::{classify, compute_pieces, factorize_xyz, CnReport, PieceTable, RelationWordInfo, WeakN};
pub use presentation::{parse_presentation, Presentation, Relation};
pub use word::{Letter, Word};
pub use word_problem::{CaseVerdict, Solver, Step, Trace};
