//! Twisted circulants and random walks on finite Heisenberg groups.
//!
//! A twisted circulant is a unitary of the form `A(r,s) = R^r S^s`, where `S`
//! is the cyclic shift on `C^n` and `R = diag(omega^j)` is the clock matrix,
//! for an odd prime `n`. These matrices (and their Hermitian counterparts
//! `M(r,s)`) are, up to scalars, the images of the natural generating sets of
//! the Heisenberg group `H(n)` under its `n`-dimensional irreducible
//! representations, so spectral bounds for sums of twisted circulants
//! translate directly into mixing-time bounds for random walks on `H(n)`.
//!
//! The crate provides:
//!
//! - [`linalg`]: dense complex matrices and a self-contained cyclic Jacobi
//!   eigensolver for Hermitian matrices;
//! - [`twisted`]: the structured matrices `S`, `R`, `F`, `Pi_s`, the exact
//!   flat diagonalizers `X(r,s)`, Gauss sums, and change-of-basis matrices;
//! - [`uncertainty`]: a Donoho-Stark style uncertainty principle for flat
//!   unitaries;
//! - [`spectra`]: operator-norm scans for weighted sums of `M(r,s)`,
//!   including the closed-form equal-slopes spectrum and its parameter grid;
//! - [`heisenberg`]: group arithmetic for `H(n)` and `H(p,d)`, irreducible
//!   representations, exact random-walk simulation, and Fourier upper bounds
//!   on total-variation mixing.
//!
//! Each major capability has a runnable walkthrough under `examples/`, and
//! the `twisted-circulants` binary exposes the same sweeps as subcommands
//! with deterministic CSV/JSON output.

pub mod cli;
pub mod heisenberg;
pub mod linalg;
pub mod spectra;
pub mod twisted;
pub mod uncertainty;

mod error;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Derives a per-task seed by stable hashing of a root seed and task
/// coordinates. The mix is a fixed SplitMix64 chain, so derived streams are
/// reproducible across platforms and independent of scheduling.
pub fn derive_seed(seed: u64, coords: &[u64]) -> u64 {
    fn splitmix64(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    let mut h = splitmix64(seed);
    for &c in coords {
        h = splitmix64(h ^ c);
    }
    h
}
