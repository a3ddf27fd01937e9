use core::fmt;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter fell outside its domain. `constraint` names the violated
    /// condition, e.g. `"0 < gamma <= 1"`.
    Domain {
        param: &'static str,
        constraint: &'static str,
        value: f64,
    },
    /// The operation is undefined for a degenerate (point-mass) law.
    Degenerate(&'static str),
    /// A numerical backend failed to reach its tolerance.
    NumericFailure {
        what: &'static str,
        estimate: f64,
        residual: f64,
        /// Monte Carlo estimate computed after the quadrature failed, if any.
        fallback: Option<f64>,
    },
    /// A goodness-of-fit statistic was requested for an empty sample.
    EmptySample,
    /// A sample contained NaN or an infinity.
    NonFiniteSample,
    /// The law does not provide the requested operation.
    Unsupported(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(param: &'static str, constraint: &'static str, value: f64) -> Self {
        Error::Domain {
            param,
            constraint,
            value,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain {
                param,
                constraint,
                value,
            } => write!(f, "invalid {param} = {value}: requires {constraint}"),
            Error::Degenerate(what) => write!(f, "{what} is undefined for a degenerate law"),
            Error::NumericFailure {
                what,
                estimate,
                residual,
                fallback,
            } => {
                write!(
                    f,
                    "{what} did not converge (estimate {estimate}, residual {residual})"
                )?;
                if let Some(mc) = fallback {
                    write!(f, "; Monte Carlo fallback {mc}")?;
                }
                Ok(())
            }
            Error::EmptySample => f.write_str("empty sample"),
            Error::NonFiniteSample => f.write_str("sample contains non-finite values"),
            Error::Unsupported(what) => write!(f, "{what} is not available for this law"),
        }
    }
}

impl core::error::Error for Error {}
