use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid basket point ({b},{r}): need r >= 2 and 1 <= b <= r-1")]
    InvalidPoint { b: i64, r: i64 },

    #[error("basket point ({b},{r}) is not terminal: gcd(b, r) = {gcd}")]
    NonTerminalPoint { b: i64, r: i64, gcd: i64 },

    #[error("P[-{m}] = {value} is not an integer")]
    NonIntegerPlurigenus { m: u64, value: String },

    #[error("residual of P[-(n*{r}+{t})] is not linear in n")]
    NonLinearResidual { r: u64, t: u64 },

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("points ({b1},{r1}) and ({b2},{r2}) do not form a prime packing (determinant {det})")]
    NotPrimePacking {
        b1: u32,
        r1: u32,
        b2: u32,
        r2: u32,
        det: i64,
    },

    #[error("a non-pencil degree m1 is required when the image is a curve")]
    MissingM1,

    #[error("unsupported case: {0}")]
    UnsupportedCase(String),

    #[error("invalid case: {0}")]
    InvalidCase(String),

    #[error("zeta refinement did not reach a fixed point after {0} iterations")]
    NonConvergence(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
