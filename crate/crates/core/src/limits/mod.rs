//! Limits of rational functions along polynomial curves, discontinuity
//! witnesses, positivity certificates, the degree criterion at the origin
//! and truncated p-adic evaluation.

mod certificate;
mod curve;
mod padic;
mod search;

pub use certificate::{
    continuity_at_origin_by_degree, even_monomial_certificate, verify_positivity_certificate, CertificateCheck,
    ContinuityConclusion, Element, PositivityCertificate, SideTerm,
};
pub use curve::{curve_limit, Curve, LimitKind, LimitResult, Semantics, PARAM};
pub use padic::{padic_evaluate, PAdic, PadicOutcome};
pub use search::{discontinuity_search, DiscontinuityWitness, SearchOutcome};
