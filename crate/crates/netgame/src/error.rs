use thiserror::Error;

/// Errors from parsing numbers, parameter files and text records.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("empty number")]
    EmptyNumber,
    #[error("cannot parse number: {0:?}")]
    BadNumber(String),
    #[error("zero denominator: {0:?}")]
    ZeroDenominator(String),
    #[error("too many digits for exact conversion: {0:?}")]
    TooPrecise(String),
    #[error("value is not finite: {0}")]
    NotFinite(f64),
    #[error("missing field {0:?}")]
    MissingField(&'static str),
    #[error("unknown field {0:?}")]
    UnknownField(String),
    #[error("malformed record: {0}")]
    Malformed(String),
}

/// Errors from graph construction and graph algorithms.
#[derive(Debug, Error)]
pub enum GraphError {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("resource budget exceeded: {0}")]
    ResourceBudget(String),
}

/// Errors from game-parameter validation and utility evaluation.
#[derive(Debug, Error)]
pub enum GameError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),
}

/// Errors from the closed-form equilibrium solver.
#[derive(Debug, Error)]
pub enum SpeError {
    #[error("wrong regime: {0}")]
    WrongRegime(String),
    #[error("delta undefined: {0}")]
    UndefinedDeltaCase(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("internal: {0}")]
    Internal(String),
}

/// Errors from the exhaustive oracle.
#[derive(Debug, Error)]
pub enum OracleError {
    #[error("problem too large: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Spe(#[from] SpeError),
}

/// Errors from resilience planning and timing sweeps.
#[derive(Debug, Error)]
pub enum PlanError {
    #[error("invalid step: {0}")]
    InvalidStep(String),
    #[error("invalid resilience cost: {0}")]
    InvalidCost(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Spe(#[from] SpeError),
}
