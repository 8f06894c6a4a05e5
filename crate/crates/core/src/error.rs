use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("working precision of {0} digits is below the 15-digit minimum")]
    PrecisionTooLow(u32),
    #[error("argument {name} = {value} is outside the domain ({expected})")]
    Domain {
        name: &'static str,
        value: String,
        expected: &'static str,
    },
    #[error("{what} did not reach tolerance {tol:e} within its cap of {cap}")]
    NotConverged {
        what: &'static str,
        tol: f64,
        cap: usize,
    },
    #[error("bracket [{lo}, {hi}] does not enclose a sign change")]
    InvalidBracket { lo: f64, hi: f64 },
    #[error("root family `{family}` failed for k = {k}: {source}")]
    Family {
        family: &'static str,
        k: u32,
        #[source]
        source: Box<Error>,
    },
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(name: &'static str, value: impl ToString, expected: &'static str) -> Error {
    Error::Domain {
        name,
        value: value.to_string(),
        expected,
    }
}
