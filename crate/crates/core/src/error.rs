use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Every coefficient is below tolerance.
    IdenticallyZero,
    /// All inputs of a Fourier-support query are constant.
    AllConstant,
    /// A Laurent polynomial is not conjugate symmetric.
    NotInA { asymmetry: f64 },
    /// The inner factor of a composition is constant.
    ConstantInner,
    /// `F` is not a polynomial in `H`.
    NoSolution { residual: f64 },
    /// Both coefficients of the equation vanish.
    BothZero,
    /// A crossing where both `b` and `b'` vanish.
    TangencyAmbiguous { t: f64 },
    /// `b` has a multiple zero.
    NonSimpleB { t: f64 },
    /// Sampled zero counts disagree inside one band.
    InconsistentBand { lo: f64, hi: f64 },
    /// No band whose solutions have exactly two simple zeros.
    NoTwoZeroBand,
    /// Malformed input data.
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::IdenticallyZero => f.write_str("polynomial is identically zero"),
            Error::AllConstant => f.write_str("every input is constant"),
            Error::NotInA { asymmetry } => {
                write!(f, "Laurent polynomial is not conjugate symmetric (defect {asymmetry:e})")
            }
            Error::ConstantInner => f.write_str("inner factor h is constant"),
            Error::NoSolution { residual } => {
                write!(f, "no outer polynomial found (residual {residual:e})")
            }
            Error::BothZero => f.write_str("a and b are both zero"),
            Error::TangencyAmbiguous { t } => {
                write!(f, "ambiguous tangency at t = {t}: b and b' both vanish")
            }
            Error::NonSimpleB { t } => write!(f, "b has a non-simple zero at t = {t}"),
            Error::InconsistentBand { lo, hi } => {
                write!(f, "zero count is not constant on band ({lo}, {hi})")
            }
            Error::NoTwoZeroBand => f.write_str("no band with exactly two simple zeros"),
            Error::Invalid(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
