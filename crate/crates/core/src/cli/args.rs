use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "ratcont",
    version,
    about = "Exact computations with continuous rational functions"
)]
pub struct Command {
    #[command(subcommand)]
    pub verb: Verb,
    /// Emit canonical JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Limit of a rational function along a polynomial curve, or a search
    /// for two curves with different limits.
    Limit(LimitArgs),
    /// Restriction of a rational function to a variety or along coordinate
    /// hyperplanes.
    Restrict(RestrictArgs),
    /// Reduced Groebner basis of an ideal.
    Gb(IdealArgs),
    /// Normal form of a polynomial modulo an ideal.
    Nf(ExprIdealArgs),
    /// Ideal membership test.
    Member(ExprIdealArgs),
    /// Extension of a regular function from a subvariety.
    Extend(ExtendArgs),
    /// Verification of a positivity certificate or the degree criterion.
    Certify(CertifyArgs),
    /// Runs a built-in scenario.
    VerifyExample(VerifyArgs),
    /// Evaluation of a rational function at a p-adic point.
    PadicEval(PadicArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Plus,
    Minus,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Lex,
    Grevlex,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    /// Rational function, e.g. "x^2/(x^2+y^2)".
    #[arg(long)]
    pub f: String,
    /// Curve such as "x=t, y=2*t^3, z=0 @ (0,0,1)".
    #[arg(long, required_unless_present = "search")]
    pub curve: Option<String>,
    #[arg(long, value_enum, default_value = "plus")]
    pub side: Side,
    /// Valuation semantics: poles carry no sign.
    #[arg(long)]
    pub valuation: bool,
    /// Probe monomial curves for a discontinuity witness instead.
    #[arg(long, conflicts_with = "curve")]
    pub search: bool,
    /// Base point of the search, e.g. "x=0, y=0"; the origin by default.
    #[arg(long)]
    pub point: Option<String>,
    /// Largest exponent of the probe curves.
    #[arg(long, default_value_t = 3)]
    pub max_exp: u32,
    /// Coefficients of the probe curves.
    #[arg(long, default_value = "-2,-1,1,2")]
    pub coeffs: String,
}

#[derive(Debug, Args)]
pub struct IdealArgs {
    /// Generators separated by commas, or a file with one per line.
    #[arg(long)]
    pub ideal: String,
    /// Variable order, largest first, e.g. "x,y,z".
    #[arg(long)]
    pub vars: Option<String>,
    #[arg(long, value_enum, default_value = "grevlex")]
    pub order: OrderArg,
    /// Maximum number of S-pairs.
    #[arg(long, default_value_t = crate::groebner::DEFAULT_BUDGET)]
    pub budget: usize,
}

#[derive(Debug, Args)]
pub struct ExprIdealArgs {
    #[arg(long)]
    pub expr: String,
    #[command(flatten)]
    pub ideal: IdealArgs,
}

#[derive(Debug, Args)]
pub struct RestrictArgs {
    #[arg(long)]
    pub f: String,
    /// Restrict to the variety of this ideal.
    #[arg(long, required_unless_present = "steps")]
    pub ideal: Option<String>,
    /// Substitute coordinates one at a time, in order, e.g. "x=0, y=0".
    #[arg(long, conflicts_with = "ideal")]
    pub steps: Option<String>,
    #[arg(long)]
    pub vars: Option<String>,
    #[arg(long, value_enum, default_value = "grevlex")]
    pub order: OrderArg,
    #[arg(long, default_value_t = crate::groebner::DEFAULT_BUDGET)]
    pub budget: usize,
}

#[derive(Debug, Args)]
pub struct ExtendArgs {
    /// Problem file with [variety], [rep] and [samples] sections.
    #[arg(long)]
    pub problem: PathBuf,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// Certificate file with `target:`, `square:` and `side:` lines.
    #[arg(long, required_unless_present = "degree")]
    pub cert: Option<PathBuf>,
    /// Radical ring for the certificate, e.g. "u^3 = 1 + x3^2".
    #[arg(long)]
    pub radical: Option<String>,
    /// Degree criterion at the origin for this p/q.
    #[arg(long, conflicts_with = "cert")]
    pub degree: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Scenario id EX1..EX5, or "all".
    #[arg(required_unless_present = "list")]
    pub id: Option<String>,
    /// Run the mutated twin, which is expected to fail.
    #[arg(long)]
    pub mutated: bool,
    /// List the scenarios.
    #[arg(long, conflicts_with = "id")]
    pub list: bool,
}

#[derive(Debug, Args)]
pub struct PadicArgs {
    #[arg(long)]
    pub f: String,
    /// Rational coordinates, e.g. "x=5, y=25".
    #[arg(long)]
    pub point: String,
    /// Prime and precision in digits, e.g. "5:10".
    #[arg(long)]
    pub padic: String,
}
