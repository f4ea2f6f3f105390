//! A Donoho-Stark style uncertainty principle for flat unitaries.
//!
//! If every entry of a unitary `U` has modulus at most `c/sqrt(n)`, a unit
//! vector cannot be concentrated on a small index set in both the standard
//! basis and the `U`-transformed basis:
//!
//! ```text
//! |S||T|/n >= ( (sqrt(1 - ||(Uv)_Tbar||^2) - ||v_Sbar||)_+ / (c ||v_S||) )^2
//! ```
//!
//! The squared inequality comes from a triangle-inequality bound on
//! `||(Uv)_T||`, which only constrains the numerator when it is nonnegative;
//! the numerator is therefore clamped at zero. A corollary: when
//! `|S||T| <= n/(2c^2)`, one of the two tail norms is at least 1/5.

use crate::linalg::{Complex, ComplexMatrix, ComplexVector};
use crate::{Error, Result};

/// Unitarity and entry-bound checks run at this tolerance.
pub const HYPOTHESIS_TOL: f64 = 1e-10;

/// The corollary's tail-norm floor.
pub const COROLLARY_FLOOR: f64 = 0.2;

/// A subset of coordinate indices `{0, ..., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSet {
    ambient: usize,
    members: Vec<usize>, // sorted, distinct
}

impl IndexSet {
    pub fn new(ambient: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&last) = members.last() {
            if last >= ambient {
                return Err(Error::IndexOutOfRange {
                    index: last,
                    len: ambient,
                });
            }
        }
        Ok(Self { ambient, members })
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            members: (0..ambient).collect(),
        }
    }

    pub fn empty(ambient: usize) -> Self {
        Self {
            ambient,
            members: Vec::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.binary_search(&index).is_ok()
    }

    pub fn complement(&self) -> Self {
        Self {
            ambient: self.ambient,
            members: (0..self.ambient).filter(|i| !self.contains(*i)).collect(),
        }
    }
}

/// Zeroes the coordinates outside `s`.
pub fn project(v: &ComplexVector, s: &IndexSet) -> Result<ComplexVector> {
    if v.len() != s.ambient() {
        return Err(Error::DimensionMismatch {
            left_rows: v.len(),
            left_cols: 1,
            right_rows: s.ambient(),
            right_cols: 1,
        });
    }
    Ok(ComplexVector::from_fn(v.len(), |i| {
        if s.contains(i) {
            v.get(i)
        } else {
            Complex::ZERO
        }
    }))
}

/// Both sides of the uncertainty inequality for one `(U, c, S, T, v)`.
#[derive(Debug, Clone)]
pub struct UncertaintyReport {
    /// `|S||T|/n`.
    pub lhs: f64,
    /// The squared quotient; `f64::INFINITY` when `||v_S|| = 0`.
    pub rhs: f64,
    /// `lhs - rhs`; `None` when the rhs is the infinity sentinel.
    pub slack: Option<f64>,
    /// `max(||v_Sbar||, ||(Uv)_Tbar||)`.
    pub corollary_max: f64,
    /// True when the raw numerator was negative and clamped to zero.
    pub numerator_clamped: bool,
}

/// Evaluates the uncertainty inequality. Checks that `u` is unitary, that its
/// entries obey the `c/sqrt(n)` bound, and that `v` has unit norm; a zero
/// `||v_S||` is reported through the infinity sentinel rather than an error.
pub fn evaluate(
    u: &ComplexMatrix,
    c: f64,
    s: &IndexSet,
    t: &IndexSet,
    v: &ComplexVector,
) -> Result<UncertaintyReport> {
    let n = v.len();
    if !u.is_square() || u.rows() != n || s.ambient() != n || t.ambient() != n {
        return Err(Error::DimensionMismatch {
            left_rows: u.rows(),
            left_cols: u.cols(),
            right_rows: n,
            right_cols: 1,
        });
    }
    let ur = u.unitarity_residual();
    if ur > HYPOTHESIS_TOL {
        return Err(Error::NotUnitary { residual: ur });
    }
    let bound = c / (n as f64).sqrt() + HYPOTHESIS_TOL;
    for i in 0..n {
        for j in 0..n {
            let value = u.get(i, j).norm();
            if value > bound {
                return Err(Error::EntryBoundViolated {
                    row: i,
                    col: j,
                    value,
                    bound,
                });
            }
        }
    }
    let vnorm = v.norm();
    if (vnorm - 1.0).abs() > HYPOTHESIS_TOL {
        return Err(Error::NotUnitNorm {
            norm: vnorm,
            tol: HYPOTHESIS_TOL,
        });
    }

    let vs_norm = project(v, s)?.norm();
    let vsbar_norm = project(v, &s.complement())?.norm();
    let uv = u.apply(v)?;
    let tail = project(&uv, &t.complement())?.norm();

    let lhs = (s.len() * t.len()) as f64 / n as f64;
    let inside = (1.0 - tail * tail).max(0.0);
    let raw_numerator = inside.sqrt() - vsbar_norm;
    let numerator_clamped = raw_numerator < 0.0;
    let numerator = raw_numerator.max(0.0);
    let corollary_max = vsbar_norm.max(tail);

    if vs_norm == 0.0 {
        return Ok(UncertaintyReport {
            lhs,
            rhs: f64::INFINITY,
            slack: None,
            corollary_max,
            numerator_clamped,
        });
    }
    let rhs = (numerator / (c * vs_norm)).powi(2);
    Ok(UncertaintyReport {
        lhs,
        rhs,
        slack: Some(lhs - rhs),
        corollary_max,
        numerator_clamped,
    })
}

/// The corollary check: under `|S||T| <= n/(2c^2)`, returns
/// `(value >= 1/5 - 1e-12, value)` with `value = max(||v_Sbar||, ||(Uv)_Tbar||)`.
pub fn corollary_check(
    u: &ComplexMatrix,
    c: f64,
    s: &IndexSet,
    t: &IndexSet,
    v: &ComplexVector,
) -> Result<(bool, f64)> {
    let n = v.len();
    let product = s.len() * t.len();
    let bound = n as f64 / (2.0 * c * c);
    if product as f64 > bound {
        return Err(Error::SupportSizeBound { product, bound });
    }
    let report = evaluate(u, c, s, t, v)?;
    let value = report.corollary_max;
    Ok((value >= COROLLARY_FLOOR - 1e-12, value))
}

/// Summary of a randomized sweep of the inequality.
#[derive(Debug, Clone)]
pub struct SweepSummary {
    pub samples: usize,
    pub min_slack: f64,
    pub min_corollary_value: f64,
    /// Number of samples violating the asserted floor (slack or corollary).
    pub violations: usize,
}

/// Random unit vector with independent uniform real and imaginary parts,
/// normalized. The inequality holds for every unit vector, so the sampling
/// distribution only affects coverage.
pub fn random_unit_vector(n: usize, rng: &mut impl rand::Rng) -> ComplexVector {
    loop {
        let v = ComplexVector::from_fn(n, |_| {
            Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        let norm = v.norm();
        if norm > 1e-3 {
            return v.scale(Complex::new(1.0 / norm, 0.0));
        }
    }
}

/// Random nonempty index subset.
pub fn random_index_set(n: usize, rng: &mut impl rand::Rng) -> IndexSet {
    loop {
        let members: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
        if !members.is_empty() {
            return IndexSet::new(n, members).expect("indices in range");
        }
    }
}

/// Sweeps `samples` random `(v, S, T)` triples against the inequality and
/// records the minimum slack. Samples whose `||v_S||` falls below 1e-6 are
/// redrawn; the quotient is numerically meaningless that close to the
/// sentinel.
pub fn slack_sweep(u: &ComplexMatrix, c: f64, samples: usize, seed: u64) -> Result<SweepSummary> {
    use rand::SeedableRng;
    let n = u.rows();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut min_slack = f64::INFINITY;
    let mut min_value = f64::INFINITY;
    let mut violations = 0usize;
    for _ in 0..samples {
        let (v, s) = loop {
            let v = random_unit_vector(n, &mut rng);
            let s = random_index_set(n, &mut rng);
            if project(&v, &s)?.norm() > 1e-6 {
                break (v, s);
            }
        };
        let t = random_index_set(n, &mut rng);
        let report = evaluate(u, c, &s, &t, &v)?;
        let slack = report.slack.expect("nonzero ||v_S|| by construction");
        min_slack = min_slack.min(slack);
        min_value = min_value.min(report.corollary_max);
        if slack < -1e-10 {
            violations += 1;
        }
    }
    Ok(SweepSummary {
        samples,
        min_slack,
        min_corollary_value: min_value,
        violations,
    })
}

/// Sweeps random triples restricted to the corollary hypothesis
/// `|S||T| <= n/(2c^2)` and records the minimum tail-norm maximum.
pub fn corollary_sweep(
    u: &ComplexMatrix,
    c: f64,
    samples: usize,
    seed: u64,
) -> Result<SweepSummary> {
    use rand::{Rng, SeedableRng};
    let n = u.rows();
    let budget = ((n as f64 / (2.0 * c * c)).floor() as usize).max(1);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut min_slack = f64::INFINITY;
    let mut min_value = f64::INFINITY;
    let mut violations = 0usize;
    for _ in 0..samples {
        let s_len = rng.random_range(1..=budget);
        let t_len = rng.random_range(1..=(budget / s_len).max(1));
        let s = random_subset_of_size(n, s_len, &mut rng);
        let t = random_subset_of_size(n, t_len, &mut rng);
        let v = loop {
            let v = random_unit_vector(n, &mut rng);
            if project(&v, &s)?.norm() > 1e-6 {
                break v;
            }
        };
        let report = evaluate(u, c, &s, &t, &v)?;
        if let Some(slack) = report.slack {
            min_slack = min_slack.min(slack);
        }
        let (ok, value) = corollary_check(u, c, &s, &t, &v)?;
        min_value = min_value.min(value);
        if !ok {
            violations += 1;
        }
    }
    Ok(SweepSummary {
        samples,
        min_slack,
        min_corollary_value: min_value,
        violations,
    })
}

fn random_subset_of_size(n: usize, size: usize, rng: &mut impl rand::Rng) -> IndexSet {
    let mut picked = Vec::with_capacity(size);
    while picked.len() < size {
        let i = rng.random_range(0..n);
        if !picked.contains(&i) {
            picked.push(i);
        }
    }
    IndexSet::new(n, picked).expect("indices in range")
}
