use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntervalError {
    #[error("invalid interval endpoints [{inf}, {sup}]")]
    InvalidEndpoints { inf: f64, sup: f64 },
    #[error("division by an interval containing zero")]
    DivisionByZeroInterval,
    #[error("square root of a negative interval")]
    NegativeSqrt,
    #[error("empty intersection")]
    EmptyIntersection,
    #[error("{0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("evaluation point does not meet [-1, 1]")]
    DomainError,
    #[error("eigenvector transformation is singular: sqrt(1 - x^2) encloses zero")]
    EigDegenerate,
    #[error("invalid expansion: {0}")]
    InvalidExpansion(String),
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("degree {degree} exceeds the oracle cap {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },
    #[error("intermediate value needs {bits} bits, above the limit {limit}")]
    ResourceLimit { bits: u64, limit: u64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BenchError {
    #[error("invalid benchmark configuration: {0}")]
    InvalidConfig(String),
}
