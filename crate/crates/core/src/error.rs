use thiserror::Error;

/// Errors raised by contract violations across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("matrix is not Hermitian: max asymmetry {max_asymmetry:.3e}")]
    NotHermitian { max_asymmetry: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps: off-diagonal residual {residual:.3e}")]
    EigenNoConvergence { residual: f64, sweeps: usize },

    #[error("modulus must be an odd prime, got {n}")]
    NotOddPrime { n: u64 },

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("shift power must be nonzero mod n")]
    ZeroShiftPower,

    #[error("diagonal entry {index} has modulus {modulus} (must be 1 within {tol:.1e})")]
    NotUnitModulus { index: usize, modulus: f64, tol: f64 },

    #[error("parameter {name} must be nonzero mod n")]
    ZeroParameter { name: &'static str },

    #[error("matrix is not unitary: residual {residual:.3e}")]
    NotUnitary { residual: f64 },

    #[error("entry ({row},{col}) has modulus {value} exceeding the hypothesis bound {bound}")]
    EntryBoundViolated {
        row: usize,
        col: usize,
        value: f64,
        bound: f64,
    },

    #[error("vector has norm {norm} (must be 1 within {tol:.1e})")]
    NotUnitNorm { norm: f64, tol: f64 },

    #[error("|S||T| = {product} violates the size hypothesis {bound}")]
    SupportSizeBound { product: usize, bound: f64 },

    #[error("weights sum to {sum} (must be 1 within 1e-12)")]
    WeightSum { sum: f64 },

    #[error("pairing indices are not disjoint or out of range")]
    InvalidPairing,

    #[error("pair ({i},{j}) has equal slopes: r_i*s_j = r_j*s_i mod n")]
    EqualSlopesPair { i: usize, j: usize },

    #[error("not an equal-slopes quadruple: r1*s2 = {lhs}, r2*s1 = {rhs} mod n")]
    NotEqualSlopes { lhs: u64, rhs: u64 },

    #[error("central character index c must be nonzero mod p")]
    ZeroCentralCharacter,

    #[error("resource guard exceeded: size {size} > limit {limit}")]
    ResourceGuard { size: u64, limit: u64 },

    #[error("the two representation constructions disagree: max deviation {residual:.3e}")]
    ConstructionMismatch { residual: f64 },

    #[error("generator set is not closed under inversion")]
    NotSymmetric,

    #[error("index {index} out of range for size {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("threshold {value} outside [0,1)")]
    ThresholdOutOfRange { value: f64 },

    #[error("epsilon {value} outside (0,1)")]
    EpsilonOutOfRange { value: f64 },
}
