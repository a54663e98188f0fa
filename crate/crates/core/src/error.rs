use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("cannot parse number `{0}`")]
    Number(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("a series needs at least one coefficient")]
    Empty,
    #[error("generalized power needs constant term exactly one")]
    ConstantTermNotOne,
    #[error("reciprocal of a series with zero constant term")]
    ZeroConstantTerm,
    #[error("truncation orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("analytic series needs order at least 2")]
    AnalyticOrderTooSmall,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamError {
    #[error("lambda must be at least 1 (got {0})")]
    LambdaBelowOne(String),
    #[error("mu must be non-negative (got {0})")]
    NegativeMu(String),
    #[error("lambda must exceed mu (lambda = {lambda}, mu = {mu})")]
    LambdaNotAboveMu { lambda: String, mu: String },
    #[error("alpha = {alpha} outside {range} for the {variant} class")]
    AlphaOutOfRange { alpha: String, range: &'static str, variant: &'static str },
    #[error("parameter is not a finite number")]
    NotFinite,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AtomError {
    #[error("atom list is empty")]
    Empty,
    #[error("atom weight {0} is not positive")]
    NonPositiveWeight(String),
    #[error("atom weights sum to {0}, expected 1")]
    WeightSum(String),
    #[error("atom angle {0} outside [0, 2pi)")]
    AngleOutOfRange(f64),
    #[error("dilation {0} outside (0, 1]")]
    Dilation(f64),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MembershipError {
    #[error("series order {order} below grid minimum {min}")]
    OrderTooSmall { order: usize, min: usize },
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SearchError {
    #[error("search budget must be at least 1")]
    ZeroBudget,
    #[error("search order must be at least 4 (got {0})")]
    OrderTooSmall(usize),
    #[error("need at least one atom per proposal")]
    NoAtoms,
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Membership(#[from] MembershipError),
}
