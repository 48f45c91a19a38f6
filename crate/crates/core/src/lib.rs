//! Exact label calculus for ℓ-blocks of `Sp_2n(q)` (q even) and
//! `CSp_2n(q)` (q odd).
//!
//! The layers, bottom up:
//!
//! * [`partitions`]: abacus, e-cores, e-quotients, ℓ-core towers;
//! * [`symbols`]: symbols with hook and cohook cores and quotients;
//! * [`gfpoly`]: finite fields, irreducible polynomials and the families
//!   ℱ₀, ℱ₁, ℱ₂;
//! * [`ssclasses`]: semisimple ℓ′-classes and their unipotent label domains;
//! * [`labels`]: blocks, Brauer labels, weight labels and the actions on them;
//! * [`verify`]: blockwise bijections, equivariance and Sylow exponents;
//! * [`cli`]: the `alperin-labels` command line.
//!
//! ```
//! use alperin_labels::labels::{GroupKind, Setting};
//! use alperin_labels::verify::verify_group;
//!
//! let st = Setting::new(GroupKind::Sp, 2, 2, 3)?;
//! assert!(verify_group(&st, None).passed());
//! # Ok::<(), alperin_labels::Error>(())
//! ```

pub mod arith;
pub mod cli;
pub mod error;
pub mod gfpoly;
pub mod labels;
pub mod partitions;
pub mod ssclasses;
pub mod symbols;
pub mod verify;

pub use error::{Error, Result};

#[cfg(doctest)]
mod booktest {
    macro_rules! booktest {
        ($i:ident, $file:literal) => {
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            mod $i {}
        };
    }
    booktest!(introduction, "introduction.md");
    booktest!(partitions, "partitions.md");
    booktest!(symbols, "symbols.md");
    booktest!(polynomials, "polynomials.md");
    booktest!(blocks_and_weights, "blocks-and-weights.md");
    booktest!(verification, "verification.md");
    booktest!(cli, "cli.md");
}
