//! Involutive non-degenerate set-theoretic solutions of the Yang-Baxter
//! equation, the braces attached to them, and exhaustively verified
//! simplicity certificates.
//!
//! The library builds finite solutions `(X, r)` with
//! `r(x, y) = (sigma_x(y), gamma_y(x))` from parameterized families over
//! finite abelian groups, decides indecomposability, irretractability and
//! simplicity both by closed-form criteria and by independent brute-force
//! oracles, and constructs the associated left braces together with
//! certificates of brace simplicity. Every structural claim is
//! double-checked: criteria against oracles, structured linear algebra
//! against plain enumeration, explicit isomorphisms against backtracking
//! search.
//!
//! # Quick start
//!
//! Build the 36-point solution of a family over `Z/6`, verify the
//! defining laws, and confirm it is simple two independent ways:
//!
//! ```
//! use ybe::a2::{simple_criterion, JFamily};
//! use ybe::abelian::AbGroup;
//! use ybe::solution::is_simple_oracle;
//!
//! let family = JFamily::from_indices(AbGroup::parse("6")?, &[0, 2, 2, 5, 2, 2])?;
//! let solution = family.build_solution()?;
//!
//! assert!(solution.verify().ok());
//! assert!(simple_criterion(&family)?);
//! assert!(is_simple_oracle(&solution));
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! # Module map
//!
//! - [`abelian`] — finite abelian groups as explicit tuples of cyclic
//!   factors; every other carrier is indexed through them.
//! - [`perm`] — compact permutations, composition and closure.
//! - [`solution`] — solution tables, verification with witnesses,
//!   congruences, quotients, the simplicity oracle, isomorphism search,
//!   and the permutation group of a solution.
//! - [`a2`] — the square-carrier parameter families: construction,
//!   closed-form classification criteria, the two prime constructions,
//!   and exhaustive censuses.
//! - [`brace`] — finite left braces behind one operation trait: axiom
//!   checking, lambda maps, socle, ideals, simplicity by ideal
//!   enumeration, orbits and their solutions.
//! - [`asym`] — structured braces built as asymmetric products: the
//!   span-modulo-socle model of a family's permutation brace, the
//!   companion-matrix construction with its explicit isomorphism, and
//!   the doubled-block brace with no generating orbit.
//! - [`report`] — serializable report shapes shared with the command
//!   line; payloads are byte-deterministic, timing rides outside.
//! - [`repro`] — the scripted verification suite behind `ybe repro` and
//!   the acceptance tests.
//!
//! The accompanying book under `book/` walks through the mathematics
//! chapter by chapter; its code blocks compile against this crate as
//! doc-tests, so the guide cannot drift from the API.

pub mod a2;
pub mod abelian;
pub mod asym;
pub mod brace;
pub mod perm;
pub mod report;
pub mod repro;
pub mod solution;

pub use abelian::{AbElem, AbGroup};
pub use perm::Perm;
pub use solution::{SolutionFile, SolutionTable};

/// Compiles every code block in the book against the current API.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }

    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(solutions, "../../../book/src/solutions.md");
    chapter!(families, "../../../book/src/families.md");
    chapter!(simplicity, "../../../book/src/simplicity.md");
    chapter!(braces, "../../../book/src/braces.md");
    chapter!(asymmetric, "../../../book/src/asymmetric.md");
    chapter!(cli, "../../../book/src/cli.md");
}
