use thiserror::Error;

/// Errors raised by the numerics library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precision context invalid: {0}")]
    InvalidPrecision(String),

    #[error("{function}: argument {argument} outside domain {domain}")]
    Domain {
        function: &'static str,
        argument: String,
        domain: String,
    },

    #[error("unsupported argument: {0}")]
    Unsupported(String),

    #[error("declared ratio bound {0} is not below 1")]
    RatioNotConvergent(String),

    #[error("term budget of {budget} exhausted before reaching 1e-{target_digits} (best bound {best_bound})")]
    BudgetExhausted {
        budget: u64,
        target_digits: u32,
        best_bound: String,
    },

    #[error("dual-method disagreement on {series}: |{a} - {b}| exceeds combined bound {bound}")]
    MethodDisagreement {
        series: String,
        a: String,
        b: String,
        bound: String,
    },

    #[error("unknown identifier {0}")]
    UnknownId(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
