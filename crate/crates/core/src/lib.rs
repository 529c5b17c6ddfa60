//! Graded homological algebra over prime fields.
//!
//! The crate computes invariants (Hom, Ext, syzygies, fitting ideals, socle,
//! depth, duals, canonical modules) of finitely presented graded modules over
//! quotients of weighted polynomial rings `F_p[x_1..x_n]/I`, and exposes the
//! freeness criteria built on them as executable, randomly testable
//! predicates backed by an independent linear-algebra oracle.

pub mod field;
pub mod fpmodule;
pub mod grobner;
pub mod homology;
pub mod linalg;
pub mod modvec;
pub mod monomial;
pub mod oracle;
pub mod poly;
pub mod ring;
pub mod suites;
pub mod theorems;

pub use fpmodule::{FPMap, FPModule, FreeModule, ModuleMap, Resolution};
pub use homology::Ideal;
pub use linalg::FpMatrix;
pub use monomial::Monomial;
pub use oracle::{LinMap, LinModule};
pub use poly::Polynomial;
pub use ring::{PolyRing, QuotientRing};
pub use suites::{OracleCheckReport, SuiteOptions};
pub use theorems::{CampaignSummary, Conclusion, Hypotheses, Verdict};
