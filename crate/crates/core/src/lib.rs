//! Algebra of linear tail-biting trellises over prime fields.

pub mod analysis;
pub mod error;
pub mod field;
pub mod label_code;
pub mod span;
pub mod trellis;

pub use error::{Error, Result};
pub use field::{FVec, Field, Subspace};
pub use span::{Span, SpanDistribution};
pub use trellis::{Path, RawTrellis, Trellis};
