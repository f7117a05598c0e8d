use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// Sector-level failures carry the Fock labels so that sweep drivers can
/// report exactly which photon-number sector broke.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EitError {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("non-finite value at n = {n}")]
    NonFinite { n: u64 },

    #[error("singular system in sector (n1 = {n1}, n2 = {n2}): {what}")]
    Singular { n1: u64, n2: u64, what: String },

    #[error("unknown case tag `{0}` (expected a, b or c)")]
    UnknownCase(String),

    #[error("degenerate dark state: all Rabi frequencies vanish")]
    Degenerate,
}

pub type Result<T, E = EitError> = std::result::Result<T, E>;

pub(crate) fn check(ok: bool, name: &'static str, value: f64, reason: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(EitError::InvalidParameter {
            name,
            value,
            reason,
        })
    }
}
