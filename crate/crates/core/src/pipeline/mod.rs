//! Sequential private delivery: pad slot, one functional-representation
//! slot per demand, exact transcript distributions and audits.

mod distribution;
mod multipart;
mod session;
mod sweep;

pub use distribution::{
    expected_length, leakage_audit, transcript_distribution, ExpectedLength, LeakageAudit,
    TranscriptDistribution,
};
pub use multipart::{
    CouplingSource, ForcedCoupling, MultiPartCode, Outcome, SeededCoupling, SequentialEncoder,
};
pub use session::{
    decode_session, encode_session, Database, Decoded, DemandVector, PrivateScheme, Realization,
    SessionConfig,
};
pub use sweep::{audit_demands, worst_case_sweep, DemandReport, SweepTable};
