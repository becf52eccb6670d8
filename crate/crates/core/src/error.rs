use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("malformed rule document: {0}")]
    Malformed(String),
    #[error("unknown rule kind `{0}`")]
    UnknownKind(String),
    #[error("missing field `{0}`")]
    MissingField(&'static str),
    #[error("field `{field}` does not apply to rule kind `{kind}`")]
    UnexpectedField { kind: String, field: &'static str },
    #[error("field `{field}` must be a nonnegative integer, got {value}")]
    Negative { field: &'static str, value: i64 },
    #[error("field `pattern` must be nonempty")]
    EmptyPattern,
    #[error("field `table` must be nonempty when extension is repeat_last")]
    EmptyTable,
    #[error("b-bin rules need b >= 3, got {0}")]
    BinWidthTooSmall(usize),
    #[error("base rules need b >= 2, got {0}")]
    BaseTooSmall(usize),
    #[error("bad rule shorthand: {0}")]
    BadShorthand(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("indices must be strictly decreasing (position {position})")]
    NotDecreasing { position: usize },
    #[error("oracle explored more than {budget} nodes")]
    BudgetExceeded { budget: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecurrenceError {
    #[error("rule `{0}` is not periodic; no fixed-order recurrence is synthesized")]
    UnsupportedRule(String),
    #[error("synthesis failed: {0}")]
    Synthesis(String),
    #[error("need at least {needed} terms, got {got}")]
    InsufficientTerms { needed: usize, got: usize },
    #[error("characteristic polynomial must be monic of degree >= 1")]
    NotMonic,
    #[error("max degree {max_degree} is below the polynomial degree {degree}")]
    DegreeTooSmall { degree: usize, max_degree: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error("b-bin statistics need b >= 3, got {0}")]
    BinWidthTooSmall(usize),
    #[error("row {n} is beyond the table (n_max = {n_max})")]
    RowOutOfRange { n: usize, n_max: usize },
    #[error("row {0} has zero variance; standardization is undefined")]
    Degenerate(usize),
    #[error("y must be positive")]
    NonPositiveArgument,
    #[error("n must be at least 1")]
    IndexTooSmall,
    #[error("unknown counting system '{0}' (expected bbin:<b> or factorial)")]
    UnknownSystem(String),
}
