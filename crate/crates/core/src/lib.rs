//! Finite fields, Reed-Solomon codes and the error distance of received
//! words whose degree sits just above the code dimension.

pub mod closed_form;
pub mod code;
pub mod consistency;
pub mod constructions;
pub mod engine;
pub mod error;
pub mod field;
pub mod oracle;
pub mod par;
pub mod poly;
pub mod subset;
pub mod sweep;
pub mod text;

pub use closed_form::{closed_form_distance, Clause, ClosedFormCase};
pub use code::{hamming_distance, CodeKind, ReceivedWord, RsCode};
pub use consistency::{ConsistencyChecker, ConsistencyReport};
pub use engine::{DistanceEngine, DistanceResult, Method, TopCoefficients, Verdict, Witness};
pub use error::{Error, Result};
pub use field::{Elem, Field};
pub use oracle::{max_agreement_oracle, DEFAULT_ORACLE_CAP, ORACLE_CAP_ENV};
pub use par::Parallelism;
pub use poly::{Poly, SymmetricProfile};
pub use subset::{subset_symmetric_dp, SubsetTable};
pub use sweep::{
    run_sweep, Family, KSelect, Methods, RowStatus, SweepConfig, SweepRow, SweepSummary,
};
