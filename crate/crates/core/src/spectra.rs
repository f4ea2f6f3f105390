//! Operator norms of weighted sums of the Hermitian twisted circulants
//! `M(r,s)`, the quantities that control random-walk mixing on `H(n)`.
//!
//! A pair `M(r1,s1), M(r2,s2)` with `r1 s2 != r2 s1 mod n` has average norm
//! bounded away from 1 by a gap on the order of `1/n`; the scans here measure
//! that gap. In the equal-slopes regime the two operators commute and the
//! full spectrum has a closed cosine form, evaluated without any eigensolver.

use crate::linalg::{Complex, ComplexMatrix};
use crate::twisted::{hermitian_twisted, Modulus};
use crate::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;

/// Exhaustive pair scans enumerate n^4 quadruples; larger n must sample.
pub const EXHAUSTIVE_SCAN_LIMIT: u64 = 13;

/// One term of a convex combination of Hermitian twisted circulants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumTerm {
    pub weight: f64,
    pub r: u64,
    pub s: u64,
}

/// A convex combination `sum_i w_i M(r_i, s_i)`; weights must sum to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SumSpec {
    modulus: Modulus,
    terms: Vec<SumTerm>,
}

impl SumSpec {
    pub fn new(modulus: Modulus, terms: Vec<SumTerm>) -> Result<Self> {
        let sum: f64 = terms.iter().map(|t| t.weight).sum();
        if (sum - 1.0).abs() > 1e-12 || terms.iter().any(|t| t.weight <= 0.0) {
            return Err(Error::WeightSum { sum });
        }
        Ok(Self { modulus, terms })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn terms(&self) -> &[SumTerm] {
        &self.terms
    }
}

/// Dense Hermitian matrix of the weighted sum.
pub fn weighted_sum(spec: &SumSpec) -> ComplexMatrix {
    let n = spec.modulus().size();
    let mut acc = ComplexMatrix::zeros(n, n);
    for term in spec.terms() {
        let m = hermitian_twisted(spec.modulus(), term.r as i64, term.s as i64);
        acc = acc
            .add(&m.scale(Complex::new(term.weight, 0.0)))
            .expect("same shape");
    }
    acc
}

/// One measured point of a norm scan.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralScanRecord {
    pub n: u64,
    pub r1: u64,
    pub s1: u64,
    pub r2: u64,
    pub s2: u64,
    /// True when `r1 s2 = r2 s1 mod n` (commuting, equal-slopes regime).
    pub equal_slopes: bool,
    pub norm: f64,
    pub gap: f64,
    pub scaled_gap: f64,
}

/// Operator norm of `(M(r1,s1) + M(r2,s2)) / 2` with the regime tag.
pub fn pair_norm(n: Modulus, r1: u64, s1: u64, r2: u64, s2: u64) -> Result<SpectralScanRecord> {
    let spec = SumSpec::new(
        n,
        vec![
            SumTerm { weight: 0.5, r: r1, s: s1 },
            SumTerm { weight: 0.5, r: r2, s: s2 },
        ],
    )?;
    let m = weighted_sum(&spec);
    let norm = m.operator_norm_hermitian(1e-12 * n.value() as f64)?;
    let gap = 1.0 - norm;
    Ok(SpectralScanRecord {
        n: n.value(),
        r1: r1 % n.value(),
        s1: s1 % n.value(),
        r2: r2 % n.value(),
        s2: s2 % n.value(),
        equal_slopes: n.mul(r1, s2) == n.mul(r2, s1),
        norm,
        gap,
        scaled_gap: n.value() as f64 * gap,
    })
}

#[derive(Debug, Clone, Copy)]
pub enum ScanMode {
    /// All quadruples with `r1 s2 != r2 s1`; guarded to `n <= 13`.
    Exhaustive,
    /// `count` seeded random quadruples from the same regime.
    Sampled { count: usize, seed: u64 },
}

/// Result of a gap scan over the generating (non-equal-slopes) regime.
#[derive(Debug, Clone)]
pub struct GapScan {
    pub records: Vec<SpectralScanRecord>,
}

impl GapScan {
    pub fn min_gap(&self) -> f64 {
        self.records.iter().map(|r| r.gap).fold(f64::INFINITY, f64::min)
    }

    pub fn min_scaled_gap(&self) -> f64 {
        self.records
            .iter()
            .map(|r| r.scaled_gap)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn argmin(&self) -> Option<&SpectralScanRecord> {
        self.records
            .iter()
            .min_by(|a, b| a.gap.partial_cmp(&b.gap).expect("finite gaps"))
    }
}

/// Scans pair norms over quadruples in the generating regime. Exhaustive
/// scans enumerate lexicographically; sampled scans draw quadruples from a
/// ChaCha stream seeded by `seed`, rejecting the equal-slopes regime. Records
/// come back in enumeration order regardless of thread count.
pub fn gap_scan(n: Modulus, mode: ScanMode) -> Result<GapScan> {
    let quadruples: Vec<(u64, u64, u64, u64)> = match mode {
        ScanMode::Exhaustive => {
            if n.value() > EXHAUSTIVE_SCAN_LIMIT {
                return Err(Error::ResourceGuard {
                    size: n.value(),
                    limit: EXHAUSTIVE_SCAN_LIMIT,
                });
            }
            let nn = n.value();
            let mut list = Vec::new();
            for r1 in 0..nn {
                for s1 in 0..nn {
                    for r2 in 0..nn {
                        for s2 in 0..nn {
                            if n.mul(r1, s2) != n.mul(r2, s1) {
                                list.push((r1, s1, r2, s2));
                            }
                        }
                    }
                }
            }
            list
        }
        ScanMode::Sampled { count, seed } => {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(crate::derive_seed(
                seed,
                &[n.value()],
            ));
            let nn = n.value();
            let mut list = Vec::with_capacity(count);
            while list.len() < count {
                let q = (
                    rng.random_range(0..nn),
                    rng.random_range(0..nn),
                    rng.random_range(0..nn),
                    rng.random_range(0..nn),
                );
                if n.mul(q.0, q.3) != n.mul(q.2, q.1) {
                    list.push(q);
                }
            }
            list
        }
    };
    let records: Result<Vec<SpectralScanRecord>> = quadruples
        .par_iter()
        .map(|&(r1, s1, r2, s2)| pair_norm(n, r1, s1, r2, s2))
        .collect();
    Ok(GapScan { records: records? })
}

/// Norm of the equal-weight average of `M(r1,0)` and the Hermitian
/// counterpart of `DC`, i.e. `M(r1,0)/2 + (DC + (DC)*)/4`, for a
/// unit-modulus diagonal `D` and `C = S^s`. For `D = R^r` this is exactly
/// `(M(r1,0) + M(r,s))/2`.
pub fn diagonal_case_norm(
    n: Modulus,
    r1: u64,
    d: &crate::twisted::DiagonalSpec,
    s: u64,
) -> Result<SpectralScanRecord> {
    if s % n.value() == 0 {
        return Err(Error::ZeroShiftPower);
    }
    let mut shift_pow = ComplexMatrix::identity(n.size());
    let shift = crate::twisted::shift(n);
    for _ in 0..(s % n.value()) {
        shift_pow = shift_pow.mul(&shift)?;
    }
    let dc = d.to_matrix().mul(&shift_pow)?;
    let half = Complex::new(0.5, 0.0);
    let quarter = Complex::new(0.25, 0.0);
    let m = hermitian_twisted(n, r1 as i64, 0)
        .scale(half)
        .add(&dc.add(&dc.adjoint())?.scale(quarter))?;
    let norm = m.operator_norm_hermitian(1e-12 * n.value() as f64)?;
    let gap = 1.0 - norm;
    Ok(SpectralScanRecord {
        n: n.value(),
        r1: r1 % n.value(),
        s1: 0,
        r2: 0,
        s2: s % n.value(),
        equal_slopes: false,
        norm,
        gap,
        scaled_gap: n.value() as f64 * gap,
    })
}

/// Verdict for one disjoint pair in an averaging check.
#[derive(Debug, Clone, Serialize)]
pub struct PairCheck {
    pub i: usize,
    pub j: usize,
    /// `||M_i + M_j||`.
    pub norm: f64,
    /// Whether the literal constant `||M_i + M_j|| <= 2 - 2/n` holds.
    pub within_literal: bool,
}

/// Outcome of the averaging bound check for `M = (1/d) sum_i M(r_i, s_i)`.
#[derive(Debug, Clone, Serialize)]
pub struct AveragingReport {
    pub aggregate_norm: f64,
    /// `1 - 2k/(dn)` for `k` provided pairs.
    pub literal_bound: f64,
    /// `1 - k (2 - max_pair_norm) / d`, the bound with the measured constant.
    pub measured_bound: f64,
    pub aggregate_within_literal: bool,
    pub aggregate_within_measured: bool,
    pub max_pair_norm: f64,
    pub pairs: Vec<PairCheck>,
}

/// Checks the averaging bound: each provided disjoint pair must be in the
/// generating regime, and the aggregate norm is compared against both the
/// literal `1 - 2k/(dn)` and the bound recomputed from the measured maximal
/// pair norm.
pub fn averaging_bound_check(
    n: Modulus,
    params: &[(u64, u64)],
    pairing: &[(usize, usize)],
) -> Result<AveragingReport> {
    let d = params.len();
    let mut used = vec![false; d];
    for &(i, j) in pairing {
        if i >= d || j >= d || i == j || used[i] || used[j] {
            return Err(Error::InvalidPairing);
        }
        used[i] = true;
        used[j] = true;
        let (ri, si) = params[i];
        let (rj, sj) = params[j];
        if n.mul(ri, sj) == n.mul(rj, si) {
            return Err(Error::EqualSlopesPair { i, j });
        }
    }

    let terms: Vec<SumTerm> = params
        .iter()
        .map(|&(r, s)| SumTerm { weight: 1.0 / d as f64, r, s })
        .collect();
    let aggregate = weighted_sum(&SumSpec::new(n, terms)?);
    let tol = 1e-12 * n.value() as f64;
    let aggregate_norm = aggregate.operator_norm_hermitian(tol)?;

    let mut pairs = Vec::with_capacity(pairing.len());
    let literal_pair_bound = 2.0 - 2.0 / n.value() as f64;
    let mut max_pair_norm: f64 = 0.0;
    for &(i, j) in pairing {
        let (ri, si) = params[i];
        let (rj, sj) = params[j];
        let sum = hermitian_twisted(n, ri as i64, si as i64)
            .add(&hermitian_twisted(n, rj as i64, sj as i64))?;
        let norm = sum.operator_norm_hermitian(tol)?;
        max_pair_norm = max_pair_norm.max(norm);
        pairs.push(PairCheck {
            i,
            j,
            norm,
            within_literal: norm <= literal_pair_bound + 1e-12,
        });
    }

    let k = pairing.len() as f64;
    let dd = d as f64;
    let literal_bound = 1.0 - 2.0 * k / (dd * n.value() as f64);
    let measured_bound = if pairing.is_empty() {
        1.0
    } else {
        1.0 - k * (2.0 - max_pair_norm) / dd
    };
    Ok(AveragingReport {
        aggregate_norm,
        literal_bound,
        measured_bound,
        aggregate_within_literal: aggregate_norm <= literal_bound + 1e-12,
        aggregate_within_measured: aggregate_norm <= measured_bound + 1e-12,
        max_pair_norm,
        pairs,
    })
}

/// Closed-form spectrum of `(M(r1,s1) + M(r2,s2)) / 2` in the equal-slopes
/// regime `r2 = k r1, s2 = k s1`:
///
/// ```text
/// lambda_d = (cos(2 pi d / n) + cos(2 pi (-k(k-1)/2 r1 s1 + k d) / n)) / 2
/// ```
#[derive(Debug, Clone)]
pub struct EqualSlopeSpectrum {
    pub n: u64,
    /// `k = r1^{-1} r2 = s1^{-1} s2 mod n`.
    pub k: u64,
    /// `r1 s1 mod n`.
    pub product: u64,
    /// `lambda_d` in index order `d = 0, ..., n-1`.
    pub lambdas: Vec<f64>,
}

impl EqualSlopeSpectrum {
    pub fn operator_norm(&self) -> f64 {
        self.lambdas.iter().map(|l| l.abs()).fold(0.0, f64::max)
    }

    pub fn top_eigenvalue(&self) -> f64 {
        self.lambdas.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Evaluates the closed form; all four parameters must be nonzero and the
/// quadruple must satisfy `r1 s2 = r2 s1 mod n`.
pub fn equal_slope_spectrum(
    n: Modulus,
    r1: u64,
    s1: u64,
    r2: u64,
    s2: u64,
) -> Result<EqualSlopeSpectrum> {
    for (value, name) in [(r1, "r1"), (s1, "s1"), (r2, "r2"), (s2, "s2")] {
        if value % n.value() == 0 {
            return Err(Error::ZeroParameter { name });
        }
    }
    let lhs = n.mul(r1, s2);
    let rhs = n.mul(r2, s1);
    if lhs != rhs {
        return Err(Error::NotEqualSlopes { lhs, rhs });
    }
    let k = n.mul(n.inv(r1)?, r2);
    debug_assert_eq!(k, n.mul(n.inv(s1)?, s2));
    let product = n.mul(r1, s1);
    Ok(EqualSlopeSpectrum {
        n: n.value(),
        k,
        product,
        lambdas: closed_form_lambdas(n, k, product),
    })
}

/// The closed form as a function of `(k, r1 s1)` only.
fn closed_form_lambdas(n: Modulus, k: u64, r1s1: u64) -> Vec<f64> {
    let nn = n.size();
    let cos_table: Vec<f64> = (0..nn)
        .map(|j| (2.0 * std::f64::consts::PI * j as f64 / nn as f64).cos())
        .collect();
    let offset = n.neg(n.mul(n.binom2(k), r1s1));
    (0..nn)
        .map(|d| {
            let idx = n.add(offset, n.mul(k, d as u64)) as usize;
            0.5 * (cos_table[d] + cos_table[idx])
        })
        .collect()
}

/// One cell of the equal-slopes parameter grid.
#[derive(Debug, Clone, Serialize)]
pub struct GridCell {
    /// `r2 s2 mod n` (horizontal coordinate).
    pub product: u64,
    pub k: u64,
    /// `k * product mod n` (the other published coordinate reading).
    pub k_times_product: u64,
    /// Operator norm `max_d |lambda_d|` from the closed form.
    pub norm: f64,
    pub marked: bool,
    /// `k = 1`: the two summands coincide and the norm is exactly 1.
    pub degenerate: bool,
}

/// Named threshold presets for the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridThreshold {
    /// `1 - 1/n`.
    Caption,
    /// `cos(2 pi / n)`, i.e. within `1 - cos(2 pi / n)` of 1.
    Text,
    Value(f64),
}

impl GridThreshold {
    pub fn value(self, n: Modulus) -> f64 {
        match self {
            GridThreshold::Caption => 1.0 - 1.0 / n.value() as f64,
            GridThreshold::Text => (2.0 * std::f64::consts::PI / n.value() as f64).cos(),
            GridThreshold::Value(v) => v,
        }
    }
}

/// Evaluates the closed-form norm on every cell `(product = r2 s2, k)` with
/// `product in 1..n`, `k in 1..n`; `k = 1` cells are kept but flagged
/// degenerate. Uses only the closed form, so the n = 401 grid takes seconds.
pub fn equal_slope_grid(n: Modulus, threshold: f64) -> Result<Vec<GridCell>> {
    if !(0.0..1.0).contains(&threshold) {
        return Err(Error::ThresholdOutOfRange { value: threshold });
    }
    let nn = n.value();
    let cells: Vec<GridCell> = (1..nn)
        .into_par_iter()
        .flat_map_iter(|product| {
            let kk_inv_sq: Vec<u64> = (1..nn)
                .map(|k| {
                    let kinv = n.inv(k).expect("nonzero k");
                    n.mul(kinv, kinv)
                })
                .collect();
            (1..nn).map(move |k| {
                // product is r2 s2; the closed form wants r1 s1 = k^{-2} r2 s2.
                let r1s1 = n.mul(kk_inv_sq[(k - 1) as usize], product);
                let lambdas = closed_form_lambdas(n, k, r1s1);
                let norm = lambdas.iter().map(|l| l.abs()).fold(0.0, f64::max);
                GridCell {
                    product,
                    k,
                    k_times_product: n.mul(k, product),
                    norm,
                    marked: norm > threshold,
                    degenerate: k == 1,
                }
            })
        })
        .collect();
    Ok(cells)
}

/// Fraction of non-degenerate cells with norm strictly below `1 - 1/n`.
pub fn fraction_below_caption(cells: &[GridCell], n: Modulus) -> f64 {
    let caption = GridThreshold::Caption.value(n);
    let nondeg: Vec<&GridCell> = cells.iter().filter(|c| !c.degenerate).collect();
    let below = nondeg.iter().filter(|c| c.norm < caption).count();
    below as f64 / nondeg.len() as f64
}
