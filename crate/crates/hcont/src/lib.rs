//! A calculus for interval-valued functions on small spaces.
//!
//! A function here assigns to every point of a space a closed interval
//! `[lo, hi]` of extended reals. On such functions the crate computes:
//!
//! * the lower and upper **Baire operators** `I` and `S` (semicontinuous
//!   envelopes) and the **graph completion** `F(f) = [I(f), S(f)]`
//!   ([`baire`]);
//! * **Hausdorff continuity** tests, `F(S(I(f)))` / `F(I(S(f)))`
//!   regularizations, and the theorems that make these well behaved
//!   ([`hausdorff`]);
//! * **Dedekind suprema and infima** of families of Hausdorff-continuous
//!   functions, plus classification into the finite / bounded /
//!   continuously-minorized subclasses ([`lattice`]);
//! * approximating families of continuous **bump functions** and global
//!   continuous **minorants/majorants** via the bounded transform
//!   `h(z) = z / (1 + |z|)` ([`envelope`]).
//!
//! Two space backends are supported ([`space`]): *finite topologies*, where
//! every operator is evaluated exactly through minimal open neighborhoods,
//! and *sampled metric spaces* (1D/2D grids or explicit point clouds), where
//! operators become ball stencils at a finite radius schedule and correctness
//! is a matter of convergence under grid refinement ([`convergence`]).
//!
//! The [`oracle`] module re-derives the operators by brute force straight
//! from their definitions (exhaustive neighborhood scans, exhaustive
//! enumeration of Hausdorff-continuous functions, exhaustive Dedekind
//! completeness checks) so the production operators can be certified against
//! it on small instances.

pub mod baire;
pub mod convergence;
pub mod envelope;
pub mod error;
pub mod extreal;
pub mod funcs;
pub mod hausdorff;
pub mod io;
pub mod lattice;
pub mod oracle;
pub mod plot;
pub mod report;
pub mod space;
pub mod tol;

pub use error::Error;
pub use extreal::{ExtReal, Interval};
pub use funcs::{FunctionFamily, IntervalFunction};
pub use report::{CheckReport, Witness};
pub use space::Space;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
