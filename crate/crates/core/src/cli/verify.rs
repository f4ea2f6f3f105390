//! Named verification suites: each one re-runs a family of module invariants
//! across a modulus list and reports every violation with its parameters and
//! residual.

use crate::heisenberg::{
    char_hd, fourier_at_rep, irreps, rho_hd_function_space, rho_hd_tensor, rho_principal,
    standard_hd_set, standard_pair_set, Group, Heisenberg, HeisenbergHd, Representation,
};
use crate::linalg::{Complex, ComplexMatrix};
use crate::spectra::{equal_slope_spectrum, weighted_sum, SumSpec, SumTerm};
use crate::twisted::{
    change_of_basis, dc_diagonalizer, flat_diagonalizer, gauss_sum, DiagonalSpec, Modulus,
    TwistedCirculant,
};
use crate::uncertainty::{corollary_sweep, slack_sweep};
use crate::{derive_seed, Result};
use serde::Serialize;
use std::time::Instant;

#[derive(Debug, Clone, Serialize)]
pub struct VerifyFailure {
    pub case: String,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifySuiteReport {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<VerifyFailure>,
    pub wall_ms: u64,
}

impl VerifySuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn suite_names() -> &'static [&'static str] {
    &[
        "lemma3",
        "corollary4",
        "lemma5",
        "uncertainty",
        "equal-slopes",
        "representations",
        "bridge",
    ]
}

pub fn run_suite(name: &str, moduli: &[Modulus], seed: u64) -> VerifySuiteReport {
    let start = Instant::now();
    let mut cases = 0usize;
    let mut failures = Vec::new();
    match name {
        "lemma3" => suite_lemma3(moduli, seed, &mut cases, &mut failures),
        "corollary4" => suite_corollary4(moduli, &mut cases, &mut failures),
        "lemma5" => suite_lemma5(moduli, &mut cases, &mut failures),
        "uncertainty" => suite_uncertainty(moduli, seed, &mut cases, &mut failures),
        "equal-slopes" => suite_equal_slopes(moduli, &mut cases, &mut failures),
        "representations" => suite_representations(moduli, seed, &mut cases, &mut failures),
        "bridge" => suite_bridge(moduli, &mut cases, &mut failures),
        other => panic!("unknown suite {other}"),
    }
    VerifySuiteReport {
        suite: name.to_string(),
        cases,
        failures,
        wall_ms: start.elapsed().as_millis() as u64,
    }
}

fn record(failures: &mut Vec<VerifyFailure>, ok: bool, case: String, residual: f64) {
    if !ok {
        failures.push(VerifyFailure { case, residual });
    }
}

/// 100 seeded unit-modulus diagonals per n, every s != 0: the diagonalizer
/// conjugates DC to the predicted diagonal.
fn suite_lemma3(
    moduli: &[Modulus],
    seed: u64,
    cases: &mut usize,
    failures: &mut Vec<VerifyFailure>,
) {
    use rand::{Rng, SeedableRng};
    for &n in moduli {
        let nn = n.size();
        let shift = crate::twisted::shift(n);
        for trial in 0..100u64 {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(derive_seed(
                seed,
                &[n.value(), 3, trial],
            ));
            let entries: Vec<Complex> = (0..nn)
                .map(|_| Complex::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU)))
                .collect();
            let d = DiagonalSpec::new(n, entries).expect("unit modulus by construction");
            for s in 1..n.value() {
                *cases += 1;
                let (u, eigs) = dc_diagonalizer(&d, s).expect("valid spec");
                let mut spow = ComplexMatrix::identity(nn);
                for _ in 0..s {
                    spow = spow.mul(&shift).expect("square");
                }
                let dc = d.to_matrix().mul(&spow).expect("square");
                let t = u.adjoint().mul(&dc).expect("square").mul(&u).expect("square");
                let mut off = 0.0f64;
                let mut diag_dev = 0.0f64;
                for i in 0..nn {
                    for j in 0..nn {
                        if i == j {
                            diag_dev = diag_dev.max((t.get(i, i) - eigs.get(i)).norm());
                        } else {
                            off = off.max(t.get(i, j).norm());
                        }
                    }
                }
                record(
                    failures,
                    off < 1e-10 && diag_dev < 1e-10,
                    format!("lemma3 n={} trial={trial} s={s}", n.value()),
                    off.max(diag_dev),
                );
            }
        }
    }
}

/// Every X(r,s), s != 0: unitary, flat entries, diagonalizes A(r,s) to
/// diag(omega^j) in index order.
fn suite_corollary4(moduli: &[Modulus], cases: &mut usize, failures: &mut Vec<VerifyFailure>) {
    for &n in moduli {
        let nn = n.size();
        let flat = 1.0 / (nn as f64).sqrt();
        let table = crate::twisted::root_table(n);
        for r in 0..n.value() {
            for s in 1..n.value() {
                *cases += 1;
                let x = flat_diagonalizer(n, r, s);
                let mut dev = x.unitarity_residual();
                for i in 0..nn {
                    for j in 0..nn {
                        dev = dev.max((x.get(i, j).norm() - flat).abs());
                    }
                }
                let a = TwistedCirculant::new(n, r as i64, s as i64).to_matrix();
                let t = x.adjoint().mul(&a).expect("square").mul(&x).expect("square");
                let want = ComplexMatrix::diagonal(&table);
                let diag_dev = t.max_abs_diff(&want);
                record(
                    failures,
                    dev < 1e-12 && diag_dev < 1e-11,
                    format!("corollary4 n={} r={r} s={s}", n.value()),
                    dev.max(diag_dev),
                );
            }
        }
    }
}

/// Gauss-sum magnitudes (exhaustive per n) and flat change-of-basis entries
/// for every nonzero quadruple off the equal-slopes regime.
fn suite_lemma5(moduli: &[Modulus], cases: &mut usize, failures: &mut Vec<VerifyFailure>) {
    for &n in moduli {
        let sqrt_n = (n.value() as f64).sqrt();
        for a in 1..n.value() {
            for b in 0..n.value() {
                *cases += 1;
                let dev = (gauss_sum(n, a, b).norm() - sqrt_n).abs();
                record(
                    failures,
                    dev < 1e-9,
                    format!("gauss n={} a={a} b={b}", n.value()),
                    dev,
                );
            }
        }
        let flat = 1.0 / sqrt_n;
        for r1 in 1..n.value() {
            for s1 in 1..n.value() {
                for r2 in 1..n.value() {
                    for s2 in 1..n.value() {
                        if n.mul(r1, s2) == n.mul(r2, s1) {
                            continue;
                        }
                        *cases += 1;
                        let y = change_of_basis(n, (r1, s1), (r2, s2)).expect("nonzero params");
                        let mut dev = 0.0f64;
                        for i in 0..n.size() {
                            for j in 0..n.size() {
                                dev = dev.max((y.get(i, j).norm() - flat).abs());
                            }
                        }
                        record(
                            failures,
                            dev < 1e-11,
                            format!(
                                "change-of-basis n={} ({r1},{s1}),({r2},{s2})",
                                n.value()
                            ),
                            dev,
                        );
                    }
                }
            }
        }
    }
}

/// Slack and corollary sweeps over the three flat-unitary families.
fn suite_uncertainty(
    moduli: &[Modulus],
    seed: u64,
    cases: &mut usize,
    failures: &mut Vec<VerifyFailure>,
) {
    for &n in moduli {
        let families: Vec<(&str, ComplexMatrix)> = vec![
            ("fourier", crate::twisted::fourier(n)),
            ("flat-diagonalizer", flat_diagonalizer(n, 1, 1)),
            (
                "change-of-basis",
                change_of_basis(n, (1, 1), (1, 2)).expect("nonzero, distinct slopes"),
            ),
        ];
        for (label, u) in families {
            *cases += 2;
            let sweep = slack_sweep(&u, 1.0, 1000, derive_seed(seed, &[n.value(), 7]))
                .expect("hypotheses hold");
            record(
                failures,
                sweep.violations == 0,
                format!("lemma1 {label} n={} min-slack", n.value()),
                sweep.min_slack,
            );
            let cor = corollary_sweep(&u, 1.0, 1000, derive_seed(seed, &[n.value(), 8]))
                .expect("hypotheses hold");
            record(
                failures,
                cor.violations == 0,
                format!("corollary2 {label} n={} min-value", n.value()),
                cor.min_corollary_value,
            );
        }
    }
}

/// Closed-form equal-slopes spectra match the eigensolver, and the
/// change-of-basis degenerates to a permutation.
fn suite_equal_slopes(moduli: &[Modulus], cases: &mut usize, failures: &mut Vec<VerifyFailure>) {
    for &n in moduli {
        for r1 in 1..n.value() {
            for s1 in 1..n.value() {
                for k in 1..n.value() {
                    let r2 = n.mul(k, r1);
                    let s2 = n.mul(k, s1);
                    *cases += 1;
                    let spec = equal_slope_spectrum(n, r1, s1, r2, s2).expect("equal slopes");
                    let matrix = weighted_sum(
                        &SumSpec::new(
                            n,
                            vec![
                                SumTerm { weight: 0.5, r: r1, s: s1 },
                                SumTerm { weight: 0.5, r: r2, s: s2 },
                            ],
                        )
                        .expect("weights sum to 1"),
                    );
                    let eig = matrix.hermitian_eigen_default().expect("Hermitian");
                    let mut closed = spec.lambdas.clone();
                    closed.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
                    let dev = eig
                        .eigenvalues
                        .iter()
                        .zip(&closed)
                        .map(|(a, b)| (a - b).abs())
                        .fold(0.0f64, f64::max);
                    record(
                        failures,
                        dev < 1e-9,
                        format!("equal-slopes n={} ({r1},{s1}) k={k}", n.value()),
                        dev,
                    );

                    *cases += 1;
                    let y = change_of_basis(n, (r1, s1), (r2, s2)).expect("nonzero params");
                    let mut nonzero = 0usize;
                    let mut unit_dev = 0.0f64;
                    for i in 0..n.size() {
                        for j in 0..n.size() {
                            let v = y.get(i, j).norm();
                            if v > 1e-9 {
                                nonzero += 1;
                                unit_dev = unit_dev.max((v - 1.0).abs());
                            }
                        }
                    }
                    record(
                        failures,
                        nonzero == n.size() && unit_dev < 1e-9,
                        format!("equal-slopes-perm n={} ({r1},{s1}) k={k}", n.value()),
                        unit_dev.max((nonzero as f64 - n.size() as f64).abs()),
                    );
                }
            }
        }
    }
}

/// Homomorphism residuals, completeness of the irrep list, and the dual
/// construction of the H(p,d) principal series.
fn suite_representations(
    moduli: &[Modulus],
    seed: u64,
    cases: &mut usize,
    failures: &mut Vec<VerifyFailure>,
) {
    for &n in moduli {
        let group = Heisenberg::new(n);
        *cases += 1;
        let total: usize = irreps(n).iter().map(|r| r.dim(n).pow(2)).sum();
        record(
            failures,
            total == group.order(),
            format!("completeness n={}", n.value()),
            (total as f64 - group.order() as f64).abs(),
        );
        let c = 1 + (n.value() - 1) / 2;
        let mut state = derive_seed(seed, &[n.value(), 9]);
        let mut dev = 0.0f64;
        for _ in 0..500 {
            state = derive_seed(state, &[1]);
            let a = group.element((state % group.order() as u64) as usize);
            let b = group.element(((state >> 17) % group.order() as u64) as usize);
            let lhs = rho_principal(n, c, &group.mul(&a, &b)).expect("c nonzero");
            let rhs = rho_principal(n, c, &a)
                .expect("c nonzero")
                .mul(&rho_principal(n, c, &b).expect("c nonzero"))
                .expect("square");
            dev = dev.max(lhs.max_abs_diff(&rhs));
        }
        *cases += 1;
        record(
            failures,
            dev < 1e-11,
            format!("homomorphism rho_{c} n={}", n.value()),
            dev,
        );
    }
    // Dual construction for small H(p,d).
    for (p, d) in [(3u64, 1usize), (3, 2), (5, 1), (5, 2)] {
        let modulus = Modulus::new(p).expect("odd prime");
        let group = HeisenbergHd::new(modulus, d).expect("within guard");
        let mut state = derive_seed(seed, &[p, d as u64, 10]);
        for c in 1..p {
            *cases += 1;
            let mut dev = 0.0f64;
            let mut sample = Vec::new();
            for i in 0..d {
                sample.push(group.e(i));
                sample.push(group.f(i));
            }
            for _ in 0..25 {
                state = derive_seed(state, &[1]);
                sample.push(group.element((state % group.order() as u64) as usize));
            }
            for g in &sample {
                let direct = rho_hd_function_space(modulus, d, c, g).expect("guarded");
                let tensored = rho_hd_tensor(modulus, d, c, g).expect("guarded");
                dev = dev.max(direct.max_abs_diff(&tensored));
            }
            record(
                failures,
                dev < 1e-12,
                format!("dual-construction p={p} d={d} c={c}"),
                dev,
            );
        }
    }
}

/// The Fourier coefficient of the standard pair walk at rho_c equals
/// (M(c r1, s1) + M(c r2, s2)) / 2 entrywise.
fn suite_bridge(moduli: &[Modulus], cases: &mut usize, failures: &mut Vec<VerifyFailure>) {
    for &n in moduli {
        let group = Heisenberg::new(n);
        for (s1, r1, s2, r2) in [(1u64, 0u64, 0u64, 1u64), (1, 1, 1, 2), (2, 1, 1, 3)] {
            let gens = match standard_pair_set(&group, (s1, r1), (s2, r2)) {
                Ok(g) => g,
                Err(_) => continue,
            };
            for c in 1..n.value() {
                *cases += 1;
                let got = fourier_at_rep(n, &gens, &Representation::Principal { c })
                    .expect("principal rep");
                let want = weighted_sum(
                    &SumSpec::new(
                        n,
                        vec![
                            SumTerm { weight: 0.5, r: n.mul(c, r1), s: s1 },
                            SumTerm { weight: 0.5, r: n.mul(c, r2), s: s2 },
                        ],
                    )
                    .expect("weights sum to 1"),
                );
                let dev = got.max_abs_diff(&want);
                record(
                    failures,
                    dev < 1e-13,
                    format!("bridge n={} ({s1},{r1}),({s2},{r2}) c={c}", n.value()),
                    dev,
                );
            }
        }
    }
}

/// Cross-check data for one principal-series representation of H(p,d).
#[derive(Debug, Clone)]
pub struct RepCrossCheck {
    pub construction_discrepancy: f64,
    pub homomorphism_residual: f64,
    /// Norm of the generator average at rho_c.
    pub average_norm: f64,
    /// Largest nontrivial character coefficient of the same walk.
    pub onedim_max: f64,
}

/// Builds rho_c both ways on a deterministic element sample, measures
/// homomorphism residuals on seeded pairs, and computes the generator-average
/// norm next to the one-dimensional maximum.
pub fn rep_cross_check(group: &HeisenbergHd, c: u64, seed: u64) -> Result<RepCrossCheck> {
    let p = group.modulus();
    let d = group.dim();
    let mut sample = Vec::new();
    for i in 0..d {
        sample.push(group.e(i));
        sample.push(group.f(i));
        sample.push(group.inv(&group.e(i)));
        sample.push(group.inv(&group.f(i)));
    }
    let mut state = derive_seed(seed, &[p.value(), d as u64, c, 11]);
    for _ in 0..25 {
        state = derive_seed(state, &[1]);
        sample.push(group.element((state % group.order() as u64) as usize));
    }
    let mut construction_discrepancy = 0.0f64;
    for g in &sample {
        let direct = rho_hd_function_space(p, d, c, g)?;
        let tensored = rho_hd_tensor(p, d, c, g)?;
        construction_discrepancy = construction_discrepancy.max(direct.max_abs_diff(&tensored));
    }

    let mut homomorphism_residual = 0.0f64;
    for _ in 0..100 {
        state = derive_seed(state, &[2]);
        let a = group.element((state % group.order() as u64) as usize);
        let b = group.element(((state >> 13) % group.order() as u64) as usize);
        let lhs = rho_hd_function_space(p, d, c, &group.mul(&a, &b))?;
        let rhs = rho_hd_function_space(p, d, c, &a)?.mul(&rho_hd_function_space(p, d, c, &b)?)?;
        homomorphism_residual = homomorphism_residual.max(lhs.max_abs_diff(&rhs));
    }

    let gens = standard_hd_set(group);
    let dim = p.size().pow(d as u32);
    let mut avg = ComplexMatrix::zeros(dim, dim);
    for (step, prob) in gens.steps() {
        avg = avg.add(&rho_hd_function_space(p, d, c, step)?.scale(Complex::new(*prob, 0.0)))?;
    }
    let average_norm = avg.operator_norm_hermitian(1e-12 * dim as f64)?;

    let mut onedim_max = 0.0f64;
    let mut coeffs = vec![0u64; 2 * d];
    let total = p.value().pow(2 * d as u32);
    for flat in 0..total {
        let mut idx = flat;
        for slot in coeffs.iter_mut().rev() {
            *slot = idx % p.value();
            idx /= p.value();
        }
        if coeffs.iter().all(|&v| v == 0) {
            continue;
        }
        let (a, b) = coeffs.split_at(d);
        let mut acc = Complex::ZERO;
        for (step, prob) in gens.steps() {
            acc += char_hd(p, a, b, step) * *prob;
        }
        onedim_max = onedim_max.max(acc.norm());
    }

    Ok(RepCrossCheck {
        construction_discrepancy,
        homomorphism_residual,
        average_norm,
        onedim_max,
    })
}
