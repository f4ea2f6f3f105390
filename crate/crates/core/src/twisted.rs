//! Structured matrices over an odd prime modulus: the cyclic shift `S`, the
//! clock `R = diag(omega^j)`, the Fourier matrix `F`, the index permutations
//! `Pi_s`, twisted circulants `A(r,s) = R^r S^s` with their Hermitian
//! counterparts, and the unitaries that diagonalize them exactly.
//!
//! All phase bookkeeping happens in integer exponents mod `n` before any
//! floating-point root of unity is taken, so constructions are exact up to a
//! single table lookup per entry.

use crate::linalg::{Complex, ComplexMatrix, ComplexVector};
use crate::{Error, Result};

/// Unit-modulus tolerance for diagonal specs.
pub const UNIT_MODULUS_TOL: f64 = 1e-12;

/// Width of the branch snap used when taking the principal n-th root of the
/// diagonal product: arguments within this distance below 2*pi collapse to 0,
/// so a product that is exactly 1 up to rounding yields lambda_0 = 1.
pub const ARG_BRANCH_SNAP: f64 = 1e-9;

/// An odd prime modulus, checked by trial division.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        if n < 3 || n % 2 == 0 || !is_prime(n) {
            return Err(Error::NotOddPrime { n });
        }
        Ok(Self(n))
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn size(self) -> usize {
        self.0 as usize
    }

    pub fn reduce(self, v: i64) -> u64 {
        v.rem_euclid(self.0 as i64) as u64
    }

    /// Product mod n.
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        (a % self.0 + b % self.0) % self.0
    }

    pub fn neg(self, a: u64) -> u64 {
        (self.0 - a % self.0) % self.0
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        base %= self.0;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue (Fermat).
    pub fn inv(self, a: u64) -> Result<u64> {
        if a % self.0 == 0 {
            return Err(Error::ZeroParameter { name: "inverse base" });
        }
        Ok(self.pow(a, self.0 - 2))
    }

    /// `k(k-1)/2 mod n`, with the exact integer halving done before reduction.
    pub fn binom2(self, k: u64) -> u64 {
        ((k as u128 * (k as u128).wrapping_sub(1) / 2) % self.0 as u128) as u64
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Table of the n-th roots of unity: `table[j] = exp(2 pi i j / n)`.
pub fn root_table(n: Modulus) -> Vec<Complex> {
    let nn = n.size();
    (0..nn)
        .map(|j| Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / nn as f64))
        .collect()
}

/// The shift matrix: entry (i, j) is 1 iff j = i+1 mod n, so `S e_j = e_{j-1}`.
pub fn shift(n: Modulus) -> ComplexMatrix {
    let nn = n.size();
    let mut m = ComplexMatrix::zeros(nn, nn);
    for i in 0..nn {
        m.set(i, (i + 1) % nn, Complex::ONE);
    }
    m
}

/// The clock matrix `diag(1, omega, ..., omega^{n-1})`.
pub fn clock(n: Modulus) -> ComplexMatrix {
    ComplexMatrix::diagonal(&root_table(n))
}

/// Symmetric unitary Fourier matrix with entries `omega^{kl} / sqrt(n)`.
pub fn fourier(n: Modulus) -> ComplexMatrix {
    let nn = n.size();
    let table = root_table(n);
    let scale = 1.0 / (nn as f64).sqrt();
    ComplexMatrix::from_fn(nn, nn, |k, l| {
        table[n.mul(k as u64, l as u64) as usize] * scale
    })
}

/// The permutation with entry 1 at (s*i mod n, i), i.e. `Pi_s e_i = e_{si}`.
pub fn permutation(n: Modulus, s: u64) -> Result<ComplexMatrix> {
    if s % n.value() == 0 {
        return Err(Error::ZeroShiftPower);
    }
    let nn = n.size();
    let mut m = ComplexMatrix::zeros(nn, nn);
    for i in 0..nn {
        m.set(n.mul(s, i as u64) as usize, i, Complex::ONE);
    }
    Ok(m)
}

/// A phased twisted circulant `omega^t R^r S^s`, closed under products,
/// powers, and adjoints with exact integer exponent arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwistedCirculant {
    modulus: Modulus,
    phase_exp: u64,
    clock_exp: u64,
    shift_exp: u64,
}

impl TwistedCirculant {
    /// `A(r,s) = R^r S^s` with no scalar phase.
    pub fn new(n: Modulus, r: i64, s: i64) -> Self {
        Self::with_phase(n, 0, r, s)
    }

    /// `omega^t R^r S^s`.
    pub fn with_phase(n: Modulus, t: i64, r: i64, s: i64) -> Self {
        Self {
            modulus: n,
            phase_exp: n.reduce(t),
            clock_exp: n.reduce(r),
            shift_exp: n.reduce(s),
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn phase_exp(&self) -> u64 {
        self.phase_exp
    }

    pub fn clock_exp(&self) -> u64 {
        self.clock_exp
    }

    pub fn shift_exp(&self) -> u64 {
        self.shift_exp
    }

    /// Symbolic product. Moving `S^{s_a}` past `R^{r_b}` costs the phase
    /// `omega^{s_a r_b}`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        let n = self.modulus;
        if n != rhs.modulus {
            return Err(Error::ModulusMismatch {
                left: n.value(),
                right: rhs.modulus.value(),
            });
        }
        let phase = n.add(
            n.add(self.phase_exp, rhs.phase_exp),
            n.mul(self.shift_exp, rhs.clock_exp),
        );
        Ok(Self {
            modulus: n,
            phase_exp: phase,
            clock_exp: n.add(self.clock_exp, rhs.clock_exp),
            shift_exp: n.add(self.shift_exp, rhs.shift_exp),
        })
    }

    /// `(omega^t A(r,s))^k = omega^{kt + k(k-1)/2 rs} A(kr, ks)`.
    pub fn pow(&self, k: u64) -> Self {
        let n = self.modulus;
        let comm = n.mul(n.binom2(k), n.mul(self.clock_exp, self.shift_exp));
        Self {
            modulus: n,
            phase_exp: n.add(n.mul(k, self.phase_exp), comm),
            clock_exp: n.mul(k, self.clock_exp),
            shift_exp: n.mul(k, self.shift_exp),
        }
    }

    /// `(omega^t R^r S^s)* = omega^{rs - t} R^{-r} S^{-s}`.
    pub fn adjoint(&self) -> Self {
        let n = self.modulus;
        let rs = n.mul(self.clock_exp, self.shift_exp);
        Self {
            modulus: n,
            phase_exp: n.add(rs, n.neg(self.phase_exp)),
            clock_exp: n.neg(self.clock_exp),
            shift_exp: n.neg(self.shift_exp),
        }
    }

    /// Dense form: the entry at (i, i+s mod n) is `omega^{t + r i}`.
    pub fn to_matrix(&self) -> ComplexMatrix {
        let n = self.modulus;
        let nn = n.size();
        let table = root_table(n);
        let mut m = ComplexMatrix::zeros(nn, nn);
        for i in 0..nn {
            let e = n.add(self.phase_exp, n.mul(self.clock_exp, i as u64));
            m.set(
                i,
                n.add(i as u64, self.shift_exp) as usize,
                table[e as usize],
            );
        }
        m
    }
}

/// The Hermitian counterpart `M(r,s) = (A(r,s) + A(r,s)*) / 2`.
pub fn hermitian_twisted(n: Modulus, r: i64, s: i64) -> ComplexMatrix {
    let a = TwistedCirculant::new(n, r, s);
    let half = Complex::new(0.5, 0.0);
    a.to_matrix()
        .add(&a.adjoint().to_matrix())
        .expect("same shape")
        .scale(half)
}

/// Unit-modulus diagonal `D = diag(a_0, ..., a_{n-1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalSpec {
    modulus: Modulus,
    entries: Vec<Complex>,
}

impl DiagonalSpec {
    pub fn new(n: Modulus, entries: Vec<Complex>) -> Result<Self> {
        if entries.len() != n.size() {
            return Err(Error::DimensionMismatch {
                left_rows: entries.len(),
                left_cols: 1,
                right_rows: n.size(),
                right_cols: 1,
            });
        }
        for (i, e) in entries.iter().enumerate() {
            if (e.norm() - 1.0).abs() > UNIT_MODULUS_TOL {
                return Err(Error::NotUnitModulus {
                    index: i,
                    modulus: e.norm(),
                    tol: UNIT_MODULUS_TOL,
                });
            }
        }
        Ok(Self { modulus: n, entries })
    }

    /// The diagonal of `R^r`.
    pub fn clock_power(n: Modulus, r: i64) -> Self {
        let table = root_table(n);
        let rr = n.reduce(r);
        let entries = (0..n.value())
            .map(|j| table[n.mul(rr, j) as usize])
            .collect();
        Self { modulus: n, entries }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn entries(&self) -> &[Complex] {
        &self.entries
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::diagonal(&self.entries)
    }
}

/// Diagonalizer for `D C` with `C = S^s`: returns the unitary `U = Pi_s B F`
/// and the eigenvalues `(omega^j lambda_0)_j`, where `U* (DC) U` is diagonal
/// with exactly those entries in index order.
///
/// `lambda_0` is the principal n-th root of `alpha = a_0 a_1 ... a_{n-1}`:
/// `exp(i theta / n)` with `theta = arg(alpha)` in `[0, 2pi)`, snapped to 0
/// within [`ARG_BRANCH_SNAP`] of the cut so that `alpha = 1` up to rounding
/// gives `lambda_0 = 1`.
pub fn dc_diagonalizer(d: &DiagonalSpec, s: u64) -> Result<(ComplexMatrix, ComplexVector)> {
    let n = d.modulus;
    if s % n.value() == 0 {
        return Err(Error::ZeroShiftPower);
    }
    let nn = n.size();
    let alpha: Complex = d.entries.iter().product();
    let mut theta = alpha.arg();
    if theta < 0.0 {
        theta += 2.0 * std::f64::consts::PI;
    }
    if 2.0 * std::f64::consts::PI - theta < ARG_BRANCH_SNAP {
        theta = 0.0;
    }
    let lambda0 = |k: usize| Complex::from_polar(1.0, theta * k as f64 / nn as f64);

    // B_kk = lambda_0^k / prod_{l<k} a_{sl}
    let mut b = Vec::with_capacity(nn);
    let mut denom = Complex::ONE;
    for k in 0..nn {
        b.push(lambda0(k) / denom);
        denom *= d.entries[n.mul(s, k as u64) as usize];
    }

    // U = Pi_s B F assembled directly: row s*k of U is row k of B F.
    let table = root_table(n);
    let scale = 1.0 / (nn as f64).sqrt();
    let mut u = ComplexMatrix::zeros(nn, nn);
    for k in 0..nn {
        let row = n.mul(s, k as u64) as usize;
        for l in 0..nn {
            u.set(row, l, b[k] * table[n.mul(k as u64, l as u64) as usize] * scale);
        }
    }

    let l0 = lambda0(1);
    let eigenvalues = ComplexVector::from_fn(nn, |j| table[j] * l0);
    Ok((u, eigenvalues))
}

/// The flat diagonalizer `X(r,s) = Pi_s B F` with
/// `B_kk = omega^{-rs k(k-1)/2}`; unitary, diagonalizes `A(r,s)` to
/// `diag(omega^j)` in index order, and every entry has modulus `1/sqrt(n)`.
/// `X(r,0)` is the identity (`A(r,0) = R^r` is already diagonal).
pub fn flat_diagonalizer(n: Modulus, r: u64, s: u64) -> ComplexMatrix {
    if s % n.value() == 0 {
        return ComplexMatrix::identity(n.size());
    }
    let nn = n.size();
    let table = root_table(n);
    let scale = 1.0 / (nn as f64).sqrt();
    let rs = n.mul(r, s);
    let mut x = ComplexMatrix::zeros(nn, nn);
    for k in 0..nn {
        let row = n.mul(s, k as u64) as usize;
        let b_exp = n.neg(n.mul(rs, n.binom2(k as u64)));
        for l in 0..nn {
            let e = n.add(b_exp, n.mul(k as u64, l as u64));
            x.set(row, l, table[e as usize] * scale);
        }
    }
    x
}

/// The change-of-basis matrix `X(r1,s1)* X(r2,s2)` between the eigenbases of
/// two twisted circulants. All four parameters must be nonzero mod n; when
/// `r1 s2 != r2 s1` every entry is a Gauss sum of modulus `1/sqrt(n)`, and in
/// the equal-slopes case the result is a permutation matrix.
pub fn change_of_basis(
    n: Modulus,
    (r1, s1): (u64, u64),
    (r2, s2): (u64, u64),
) -> Result<ComplexMatrix> {
    for (value, name) in [(r1, "r1"), (s1, "s1"), (r2, "r2"), (s2, "s2")] {
        if value % n.value() == 0 {
            return Err(Error::ZeroParameter { name });
        }
    }
    flat_diagonalizer(n, r1, s1)
        .adjoint()
        .mul(&flat_diagonalizer(n, r2, s2))
}

/// The quadratic Gauss sum `sum_j Omega^{a j^2 + b j}` where `Omega` is the
/// n-th root of unity with `Omega^2 = omega`, i.e. `Omega = omega^{(n+1)/2}`.
/// Has modulus `sqrt(n)` for `a != 0`; for `a = 0` it is `n` if `b = 0` and
/// `0` otherwise.
pub fn gauss_sum(n: Modulus, a: u64, b: u64) -> Complex {
    let table = root_table(n);
    let half = (n.value() + 1) / 2; // exponent giving Omega = omega^{(n+1)/2}
    let mut sum = Complex::ZERO;
    for j in 0..n.value() {
        let quad = n.add(n.mul(a, n.mul(j, j)), n.mul(b, j));
        sum += table[n.mul(half, quad) as usize];
    }
    sum
}
