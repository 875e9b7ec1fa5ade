//! Exam grading core: proof-puzzle scoring, the HTRSL regex-spec compiler,
//! a feature analyzer for a Haskell exam subset, and the per-task grader.
//!
//! Everything here is pure and allocation-only; file formats, the CLI and
//! batch processing live in the `examforge` crate.
#![no_std]

extern crate alloc;

pub mod grader;
pub mod hs;
pub mod htrsl;
pub mod pattern;
pub mod points;
pub mod proof;

pub use points::Points;
