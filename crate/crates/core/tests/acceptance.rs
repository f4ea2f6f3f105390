//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (visible with `--nocapture`). Tolerances are pinned in the
//! assertions, not configurable.
//!
//! Criterion 9's representation-governance clause is asserted exactly as
//! specified and is expected to fail at small p; see the test comment.

use twisted_circulants::cli::{self, Command, OutputFormat, RunConfig};
use twisted_circulants::heisenberg::{
    self, irreps, mixing_time, rho_hd_function_space, rho_hd_tensor, standard_hd_set,
    standard_pair_set, tv_curve, FourierBound, Group, Heisenberg, HeisenbergHd, Representation,
};
use twisted_circulants::linalg::{Complex, ComplexMatrix};
use twisted_circulants::spectra::{
    equal_slope_grid, equal_slope_spectrum, fraction_below_caption, gap_scan,
    weighted_sum, GridThreshold, ScanMode, SumSpec, SumTerm,
};
use twisted_circulants::twisted::{
    change_of_basis, dc_diagonalizer, flat_diagonalizer, gauss_sum, DiagonalSpec, Modulus,
    TwistedCirculant,
};
use twisted_circulants::uncertainty::{
    corollary_sweep, evaluate, slack_sweep, IndexSet,
};
use twisted_circulants::derive_seed;

fn modulus(n: u64) -> Modulus {
    Modulus::new(n).unwrap()
}

#[test]
fn criterion_01_flat_diagonalizer_entry_norms() {
    let mut worst_entry = 0.0f64;
    let mut worst_unitarity = 0.0f64;
    for n in [3u64, 5, 7, 11, 13, 17] {
        let m = modulus(n);
        let flat = 1.0 / (n as f64).sqrt();
        for r in 0..n {
            for s in 1..n {
                let x = flat_diagonalizer(m, r, s);
                worst_unitarity = worst_unitarity.max(x.unitarity_residual());
                for i in 0..n as usize {
                    for j in 0..n as usize {
                        worst_entry = worst_entry.max((x.get(i, j).norm() - flat).abs());
                    }
                }
            }
        }
    }
    println!(
        "[acceptance] 01 flat-diagonalizer entry norms: worst entry dev {worst_entry:.2e}, worst unitarity {worst_unitarity:.2e} {}",
        verdict(worst_entry < 1e-12 && worst_unitarity < 1e-12)
    );
    assert!(worst_entry < 1e-12);
    assert!(worst_unitarity < 1e-12);
}

#[test]
fn criterion_02_dc_diagonalization() {
    use rand::{Rng, SeedableRng};
    let mut worst = 0.0f64;
    for n in [5u64, 7, 11] {
        let m = modulus(n);
        let shift = twisted_circulants::twisted::shift(m);
        for trial in 0..100u64 {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(derive_seed(0, &[n, 2, trial]));
            let entries: Vec<Complex> = (0..n)
                .map(|_| Complex::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU)))
                .collect();
            let d = DiagonalSpec::new(m, entries).unwrap();
            for s in 1..n {
                let (u, eigs) = dc_diagonalizer(&d, s).unwrap();
                let mut spow = ComplexMatrix::identity(n as usize);
                for _ in 0..s {
                    spow = spow.mul(&shift).unwrap();
                }
                let dc = d.to_matrix().mul(&spow).unwrap();
                let t = u.adjoint().mul(&dc).unwrap().mul(&u).unwrap();
                for i in 0..n as usize {
                    for j in 0..n as usize {
                        let dev = if i == j {
                            (t.get(i, i) - eigs.get(i)).norm()
                        } else {
                            t.get(i, j).norm()
                        };
                        worst = worst.max(dev);
                    }
                }
            }
        }
    }
    println!(
        "[acceptance] 02 DC diagonalization: worst residual {worst:.2e} {}",
        verdict(worst < 1e-10)
    );
    assert!(worst < 1e-10);
}

#[test]
fn criterion_03_gauss_sums_and_change_of_basis() {
    let mut worst_gauss = 0.0f64;
    for n in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        let m = modulus(n);
        let sqrt_n = (n as f64).sqrt();
        for a in 1..n {
            for b in 0..n {
                worst_gauss = worst_gauss.max((gauss_sum(m, a, b).norm() - sqrt_n).abs());
            }
        }
    }
    let mut worst_entry = 0.0f64;
    for n in [5u64, 7, 11] {
        let m = modulus(n);
        let flat = 1.0 / (n as f64).sqrt();
        for r1 in 1..n {
            for s1 in 1..n {
                for r2 in 1..n {
                    for s2 in 1..n {
                        if m.mul(r1, s2) == m.mul(r2, s1) {
                            continue;
                        }
                        let y = change_of_basis(m, (r1, s1), (r2, s2)).unwrap();
                        for i in 0..n as usize {
                            for j in 0..n as usize {
                                worst_entry =
                                    worst_entry.max((y.get(i, j).norm() - flat).abs());
                            }
                        }
                    }
                }
            }
        }
    }
    println!(
        "[acceptance] 03 Gauss sums / change of basis: worst gauss dev {worst_gauss:.2e}, worst entry dev {worst_entry:.2e} {}",
        verdict(worst_gauss < 1e-9 && worst_entry < 1e-11)
    );
    assert!(worst_gauss < 1e-9);
    assert!(worst_entry < 1e-11);
}

#[test]
fn criterion_04_equal_slopes_closed_form() {
    let mut worst_spectrum = 0.0f64;
    let mut perm_ok = true;
    for n in [3u64, 5, 7, 11] {
        let m = modulus(n);
        for r1 in 1..n {
            for s1 in 1..n {
                for k in 1..n {
                    let r2 = m.mul(k, r1);
                    let s2 = m.mul(k, s1);
                    let spec = equal_slope_spectrum(m, r1, s1, r2, s2).unwrap();
                    let matrix = weighted_sum(
                        &SumSpec::new(
                            m,
                            vec![
                                SumTerm { weight: 0.5, r: r1, s: s1 },
                                SumTerm { weight: 0.5, r: r2, s: s2 },
                            ],
                        )
                        .unwrap(),
                    );
                    let eig = matrix.hermitian_eigen_default().unwrap();
                    let mut closed = spec.lambdas.clone();
                    closed.sort_by(|a, b| b.partial_cmp(a).unwrap());
                    for (a, b) in eig.eigenvalues.iter().zip(&closed) {
                        worst_spectrum = worst_spectrum.max((a - b).abs());
                    }

                    let y = change_of_basis(m, (r1, s1), (r2, s2)).unwrap();
                    let mut nonzero = 0usize;
                    for i in 0..n as usize {
                        for j in 0..n as usize {
                            let v = y.get(i, j).norm();
                            if v > 1e-9 {
                                nonzero += 1;
                                if (v - 1.0).abs() > 1e-9 {
                                    perm_ok = false;
                                }
                            }
                        }
                    }
                    if nonzero != n as usize {
                        perm_ok = false;
                    }
                }
            }
        }
    }
    println!(
        "[acceptance] 04 equal slopes: worst multiset dev {worst_spectrum:.2e}, permutation structure {} {}",
        perm_ok,
        verdict(worst_spectrum < 1e-9 && perm_ok)
    );
    assert!(worst_spectrum < 1e-9);
    assert!(perm_ok);
}

#[test]
fn criterion_05_grid_statistics_at_401() {
    let m = modulus(401);
    let cells = equal_slope_grid(m, GridThreshold::Caption.value(m)).unwrap();
    assert_eq!(cells.len(), 400 * 400);
    assert_eq!(cells.iter().filter(|c| !c.degenerate).count(), 400 * 399);
    let fraction = fraction_below_caption(&cells, m);

    // Both presets emitted as CSV through the CLI path.
    let dir = tempfile::tempdir().unwrap();
    for preset in ["caption", "text"] {
        let path = dir.path().join(format!("grid-{preset}.csv"));
        let config = RunConfig {
            command: Command::Grid { n: 401, threshold: preset.into() },
            seed: 0,
            out: Some(path.clone()),
            format: OutputFormat::Csv,
            threads: None,
        };
        assert_eq!(cli::run(&config), 0, "grid CSV emission for {preset}");
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 400 * 400 + 1, "header + one row per cell");
        assert!(text.starts_with("product,k,k_times_product,norm,marked,degenerate"));
    }

    println!(
        "[acceptance] 05 grid statistics n=401: fraction below 1-1/n = {fraction:.4} (window [0.40, 0.60]) {}",
        verdict((0.40..=0.60).contains(&fraction))
    );
    assert!((0.40..=0.60).contains(&fraction), "fraction {fraction}");
}

#[test]
fn criterion_06_gap_positivity_and_scaled_floor() {
    let mut scaled_mins = Vec::new();
    for n in [5u64, 7, 11, 13] {
        let scan = gap_scan(modulus(n), ScanMode::Exhaustive).unwrap();
        assert!(
            scan.records.iter().all(|r| r.gap > 0.0),
            "n={n}: exhaustive gap violation"
        );
        scaled_mins.push((n, scan.min_scaled_gap()));
    }
    let c5 = scaled_mins[0].1;
    for n in [17u64, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61] {
        let scan = gap_scan(modulus(n), ScanMode::Sampled { count: 500, seed: 0 }).unwrap();
        assert!(
            scan.records.iter().all(|r| r.gap > 0.0),
            "n={n}: sampled gap violation"
        );
        scaled_mins.push((n, scan.min_scaled_gap()));
    }
    let floor = 0.5 * c5;
    let global_min = scaled_mins
        .iter()
        .map(|&(_, v)| v)
        .fold(f64::INFINITY, f64::min);
    for (n, v) in &scaled_mins {
        println!("[acceptance] 06   n={n}: min scaled gap {v:.4}");
    }
    println!(
        "[acceptance] 06 gap positivity: all gaps > 0; min scaled gap {global_min:.4} vs floor 0.5*c5 = {floor:.4} {}",
        verdict(global_min >= floor)
    );
    assert!(global_min >= floor, "min {global_min} below floor {floor}");
}

#[test]
fn criterion_07_uncertainty_suite() {
    let mut worst_slack = f64::INFINITY;
    let mut worst_value = f64::INFINITY;
    for n in [5u64, 7, 11, 13] {
        let m = modulus(n);
        let families = [
            twisted_circulants::twisted::fourier(m),
            flat_diagonalizer(m, 1, 1),
            change_of_basis(m, (1, 1), (1, 2)).unwrap(),
        ];
        for (fam, u) in families.iter().enumerate() {
            let sweep =
                slack_sweep(u, 1.0, 1000, derive_seed(0, &[n, fam as u64, 7])).unwrap();
            assert_eq!(sweep.violations, 0, "n={n} family {fam}: slack violations");
            worst_slack = worst_slack.min(sweep.min_slack);
            let cor =
                corollary_sweep(u, 1.0, 1000, derive_seed(0, &[n, fam as u64, 8])).unwrap();
            assert_eq!(cor.violations, 0, "n={n} family {fam}: corollary violations");
            worst_value = worst_value.min(cor.min_corollary_value);
        }
    }
    // Tightness witness: the exact Fourier pair has slack 0.
    let m = modulus(7);
    let u = twisted_circulants::twisted::fourier(m);
    let v = twisted_circulants::linalg::ComplexVector::from_fn(7, |_| {
        Complex::new(1.0 / 7.0f64.sqrt(), 0.0)
    });
    let report = evaluate(&u, 1.0, &IndexSet::full(7), &IndexSet::new(7, [0]).unwrap(), &v).unwrap();
    let boundary = report.slack.unwrap().abs();
    println!(
        "[acceptance] 07 uncertainty: min slack {worst_slack:.3e}, min corollary value {worst_value:.4}, boundary slack {boundary:.2e} {}",
        verdict(worst_slack >= -1e-10 && worst_value >= 0.2 - 1e-12 && boundary < 1e-12)
    );
    assert!(worst_slack >= -1e-10);
    assert!(worst_value >= 0.2 - 1e-12);
    assert!(boundary < 1e-12);
}

#[test]
fn criterion_08_mixing_quadratic_scaling() {
    let kstar = |n: u64, pairs: ((u64, u64), (u64, u64))| -> usize {
        let group = Heisenberg::new(modulus(n));
        let gens = standard_pair_set(&group, pairs.0, pairs.1).unwrap();
        mixing_time(&group, &gens, 0.25, 100_000).unwrap().unwrap()
    };
    let standard = ((1u64, 0u64), (0u64, 1u64));
    let skew = ((1u64, 1u64), (1u64, 2u64));
    let mut all_ok = true;
    for pairs in [standard, skew] {
        let k5 = kstar(5, pairs);
        let k7 = kstar(7, pairs);
        let k11 = kstar(11, pairs);
        let k13 = kstar(13, pairs);
        let ra = k11 as f64 / k5 as f64;
        let rb = k13 as f64 / k7 as f64;
        let wa = (11.0f64 / 5.0).powi(2);
        let wb = (13.0f64 / 7.0).powi(2);
        let ok = ra >= 0.5 * wa && ra <= 2.0 * wa && rb >= 0.5 * wb && rb <= 2.0 * wb;
        all_ok &= ok;
        println!(
            "[acceptance] 08   gens {pairs:?}: k*(5,7,11,13) = ({k5},{k7},{k11},{k13}); ratios {ra:.2}, {rb:.2}"
        );
    }
    // Non-generating sets are rejected with exit code 2 through the CLI.
    let config = RunConfig {
        command: Command::Mix {
            n: Some(5),
            p: None,
            d: None,
            gens: Some("1,1;2,2".into()),
            eps: 0.25,
            max_steps: 1000,
            bound: false,
        },
        seed: 0,
        out: Some(std::env::temp_dir().join("twisted-circulants-reject.csv")),
        format: OutputFormat::Csv,
        threads: None,
    };
    let code = cli::run(&config);
    println!(
        "[acceptance] 08 mixing quadratic scaling: windows ok = {all_ok}, non-generating exit = {code} {}",
        verdict(all_ok && code == 2)
    );
    assert!(all_ok);
    assert_eq!(code, 2);
}

#[test]
fn criterion_09a_higher_dimensional_walk_and_dual_construction() {
    // d-scaling of the mixing time at p = 3.
    let k1 = {
        let g = HeisenbergHd::new(modulus(3), 1).unwrap();
        mixing_time(&g, &standard_hd_set(&g), 0.25, 100_000).unwrap().unwrap()
    };
    let k2 = {
        let g = HeisenbergHd::new(modulus(3), 2).unwrap();
        mixing_time(&g, &standard_hd_set(&g), 0.25, 100_000).unwrap().unwrap()
    };
    let ratio = k2 as f64 / k1 as f64;
    let ratio_ok = (1.0..=4.0).contains(&ratio);

    // Dual construction agreement for p in {3,5}, d in {1,2}, all c != 0,
    // exhaustively over every group element.
    let mut worst = 0.0f64;
    for (p, d) in [(3u64, 1usize), (3, 2), (5, 1), (5, 2)] {
        let m = modulus(p);
        let group = HeisenbergHd::new(m, d).unwrap();
        for c in 1..p {
            for idx in 0..group.order() {
                let g = group.element(idx);
                let direct = rho_hd_function_space(m, d, c, &g).unwrap();
                let tensored = rho_hd_tensor(m, d, c, &g).unwrap();
                worst = worst.max(direct.max_abs_diff(&tensored));
            }
        }
    }
    println!(
        "[acceptance] 09a higher-dimensional walk: k*(3,2)/k*(3,1) = {k2}/{k1} = {ratio:.2} (window [1,4]); dual-construction dev {worst:.2e} {}",
        verdict(ratio_ok && worst < 1e-12)
    );
    assert!(ratio_ok, "ratio {ratio}");
    assert!(worst < 1e-12);
}

#[test]
fn criterion_09b_representation_governance_as_specified() {
    // As specified, every principal-series generator-average norm must lie
    // below cos(2 pi / p) by a positive margin, for p in {3,5}, d in {1,2}.
    //
    // This is an asymptotic separation applied below its threshold and it is
    // not attainable at these p: at p = 3 the stated bound cos(2 pi/3) = -1/2
    // is negative while norms are nonnegative, and the measured norms also
    // exceed the true one-dimensional maxima at p = 3 (0.683 vs 0.625 at
    // d = 2). The assertion is kept as specified; the printed table records
    // the measured values, and the companion test below verifies the real
    // separation where it holds (p >= 7).
    let mut rows = Vec::new();
    let mut all_ok = true;
    for (p, d) in [(3u64, 1usize), (3, 2), (5, 1), (5, 2)] {
        let m = modulus(p);
        let group = HeisenbergHd::new(m, d).unwrap();
        let gens = standard_hd_set(&group);
        let dim = (p as usize).pow(d as u32);
        for c in 1..p {
            let mut avg = ComplexMatrix::zeros(dim, dim);
            for (step, prob) in gens.steps() {
                avg = avg
                    .add(&rho_hd_function_space(m, d, c, step).unwrap()
                        .scale(Complex::new(*prob, 0.0)))
                    .unwrap();
            }
            let norm = avg.operator_norm_hermitian(1e-12 * dim as f64).unwrap();
            let stated_bound = (2.0 * std::f64::consts::PI / p as f64).cos();
            let ok = norm < stated_bound;
            all_ok &= ok;
            rows.push((p, d, c, norm, stated_bound, ok));
        }
    }
    for (p, d, c, norm, bound, ok) in &rows {
        println!(
            "[acceptance] 09b   p={p} d={d} c={c}: |rho_hat| = {norm:.6} vs stated bound cos(2pi/p) = {bound:.6} -> {}",
            if *ok { "ok" } else { "violated" }
        );
    }
    println!(
        "[acceptance] 09b representation governance (as specified): {}",
        verdict(all_ok)
    );
    assert!(
        all_ok,
        "the stated bound norm < cos(2 pi/p) fails at p in {{3,5}}; see printed table"
    );
}

#[test]
fn governance_holds_with_true_onedim_maximum_for_larger_p() {
    // The real phenomenon: the slowest one-dimensional coefficient magnitude
    // of the {X,Y} walk on H(p) is cos(pi/p) = 1 - O(1/p^2), while every
    // principal-series coefficient has norm at most 1 - O(1/p). The
    // separation holds from p = 5 up (it genuinely inverts at p = 3, where
    // the high-dimensional coefficient 0.683 exceeds the one-dim 0.5).
    for p in [5u64, 7, 11, 13] {
        let m = modulus(p);
        let group = Heisenberg::new(m);
        let gens = standard_pair_set(&group, (1, 0), (0, 1)).unwrap();
        let onedim_max = (std::f64::consts::PI / p as f64).cos();
        for c in 1..p {
            let avg = heisenberg::fourier_at_rep(m, &gens, &Representation::Principal { c })
                .unwrap();
            let norm = avg.operator_norm_hermitian(1e-12 * p as f64).unwrap();
            assert!(
                norm < onedim_max,
                "p={p} c={c}: principal norm {norm} not below one-dim max {onedim_max}"
            );
        }
    }
    println!("[acceptance] 09c governance with the true one-dim maximum holds for p in {{5,7,11,13}}: PASS");
}

#[test]
fn criterion_10_fourier_machinery_soundness() {
    // Completeness.
    for n in [3u64, 5, 7, 11] {
        let m = modulus(n);
        let total: usize = irreps(m).iter().map(|r| r.dim(m).pow(2)).sum();
        assert_eq!(total as u64, n * n * n, "sum of squared dims at n={n}");
    }
    // Domination of exact TV by the Fourier bound for k <= 200.
    let mut worst_margin = f64::INFINITY;
    for n in [5u64, 7] {
        let group = Heisenberg::new(modulus(n));
        let gens = standard_pair_set(&group, (1, 0), (0, 1)).unwrap();
        let bound = FourierBound::heisenberg(&group, &gens).unwrap();
        let curve = tv_curve(&group, &gens, 200);
        for (k, tv) in curve.iter().enumerate() {
            let margin = bound.at(k) - tv;
            worst_margin = worst_margin.min(margin);
            assert!(margin >= -1e-12, "n={n} k={k}: bound below exact TV");
        }
    }
    // Bridge identity at 1e-13.
    let mut worst_bridge = 0.0f64;
    for n in [5u64, 7, 11] {
        let m = modulus(n);
        let group = Heisenberg::new(m);
        let gens = standard_pair_set(&group, (1, 1), (1, 2)).unwrap();
        for c in 1..n {
            let got = heisenberg::fourier_at_rep(m, &gens, &Representation::Principal { c })
                .unwrap();
            let want = weighted_sum(
                &SumSpec::new(
                    m,
                    vec![
                        SumTerm { weight: 0.5, r: m.mul(c, 1), s: 1 },
                        SumTerm { weight: 0.5, r: m.mul(c, 2), s: 1 },
                    ],
                )
                .unwrap(),
            );
            worst_bridge = worst_bridge.max(got.max_abs_diff(&want));
        }
    }
    println!(
        "[acceptance] 10 Fourier machinery: completeness ok, min domination margin {worst_margin:.3e}, bridge dev {worst_bridge:.2e} {}",
        verdict(worst_margin >= -1e-12 && worst_bridge < 1e-13)
    );
    assert!(worst_bridge < 1e-13);
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "-> PASS"
    } else {
        "-> FAIL"
    }
}

// Keep the twisted-circulant symbolic layer honest against the dense layer
// in the same binary, since several criteria route through it.
#[test]
fn symbolic_layer_consistency_spot_check() {
    let m = modulus(13);
    let a = TwistedCirculant::new(m, 5, 8);
    let b = TwistedCirculant::new(m, 11, 3);
    let sym = a.mul(&b).unwrap().to_matrix();
    let dense = a.to_matrix().mul(&b.to_matrix()).unwrap();
    assert!(sym.max_abs_diff(&dense) < 1e-13);
}
