//! The commuting (equal-slopes) regime r1 s2 = r2 s1.
//!
//! Here the two Hermitian twisted circulants commute and the spectrum of
//! their average has a closed cosine form indexed by k = r1^{-1} r2 and the
//! product r1 s1. This example compares the closed form against the dense
//! eigensolver, shows the permutation structure of the change-of-basis
//! matrix, and reproduces the n = 401 statistic: the norm falls below
//! 1 - 1/n for roughly half of the (product, k) cells.
//!
//! Run:
//!   cargo run --example equal_slopes -p twisted-circulants --release

use twisted_circulants::spectra::{
    equal_slope_grid, equal_slope_spectrum, fraction_below_caption, weighted_sum, GridThreshold,
    SumSpec, SumTerm,
};
use twisted_circulants::twisted::{change_of_basis, Modulus};

fn main() {
    eprintln!("=== Equal slopes: closed-form spectra and the parameter grid ===\n");

    println!("# Section 1: closed form vs eigensolver");
    println!("n\tr1\ts1\tr2\ts2\tk\tnorm\tmultiset_dev");
    for (n, r1, s1, r2, s2) in [(5u64, 1u64, 1u64, 2u64, 2u64), (7, 1, 2, 3, 6), (11, 2, 3, 8, 1)] {
        let m = Modulus::new(n).unwrap();
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
        let dev = eig
            .eigenvalues
            .iter()
            .zip(&closed)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        println!(
            "{n}\t{r1}\t{s1}\t{r2}\t{s2}\t{}\t{:.6}\t{:.2e}",
            spec.k,
            spec.operator_norm(),
            dev
        );
    }
    println!();

    println!("# Section 2: change of basis degenerates to a permutation");
    println!("n\tr1\ts1\tk\tnonzero_entries\tunit_modulus_dev");
    let m = Modulus::new(7).unwrap();
    for k in [2u64, 3, 5] {
        let (r1, s1) = (1u64, 3u64);
        let y = change_of_basis(m, (r1, s1), (m.mul(k, r1), m.mul(k, s1))).unwrap();
        let mut nonzero = 0usize;
        let mut dev = 0.0f64;
        for i in 0..7 {
            for j in 0..7 {
                let v = y.get(i, j).norm();
                if v > 1e-9 {
                    nonzero += 1;
                    dev = dev.max((v - 1.0).abs());
                }
            }
        }
        println!("7\t{r1}\t{s1}\t{k}\t{nonzero}\t{dev:.2e}");
    }
    println!();

    println!("# Section 3: the n = 401 grid");
    let m = Modulus::new(401).unwrap();
    for (label, preset) in [("caption 1-1/n", GridThreshold::Caption), ("text cos(2pi/n)", GridThreshold::Text)] {
        let threshold = preset.value(m);
        let cells = equal_slope_grid(m, threshold).unwrap();
        let nondeg = cells.iter().filter(|c| !c.degenerate).count();
        let marked = cells.iter().filter(|c| c.marked && !c.degenerate).count();
        println!(
            "threshold[{label}] = {threshold:.6}\tnon_degenerate={nondeg}\tmarked={marked}\tmarked_fraction={:.4}",
            marked as f64 / nondeg as f64
        );
    }
    let cells = equal_slope_grid(m, GridThreshold::Caption.value(m)).unwrap();
    println!(
        "fraction_below_1_minus_1_over_n\t{:.4}\t(\"approximately half\")",
        fraction_below_caption(&cells, m)
    );

    eprintln!("\n=== done ===");
}
