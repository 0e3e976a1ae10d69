//! The user guide, compiled straight from the book sources under
//! `book/src/` in the repository root so that every code block in the
//! rendered book also runs as a doctest. Build the standalone version
//! with `mdbook build book`.

#[doc = include_str!("../../../book/src/overview.md")]
pub mod overview {}

#[doc = include_str!("../../../book/src/systems.md")]
pub mod systems {}

#[doc = include_str!("../../../book/src/steps.md")]
pub mod steps {}

#[doc = include_str!("../../../book/src/metering.md")]
pub mod metering {}

#[doc = include_str!("../../../book/src/gallery.md")]
pub mod gallery {}

#[doc = include_str!("../../../book/src/experiments.md")]
pub mod experiments {}

#[doc = include_str!("../../../book/src/oca.md")]
pub mod oca {}

#[doc = include_str!("../../../book/src/valc.md")]
pub mod valc {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
