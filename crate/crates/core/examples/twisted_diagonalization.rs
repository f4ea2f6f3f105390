//! Exact diagonalization of twisted circulants.
//!
//! Builds the shift/clock pair, verifies the commutation phase, then shows
//! that the flat unitary X(r,s) diagonalizes A(r,s) = R^r S^s with every
//! entry of modulus 1/sqrt(n), that the same construction handles an
//! arbitrary unit-modulus diagonal times a circulant, and that change-of-
//! basis matrices between two such eigenbases are Gauss-sum flat.
//!
//! Run:
//!   cargo run --example twisted_diagonalization -p twisted-circulants --release

use rand::{Rng, SeedableRng};
use twisted_circulants::linalg::Complex;
use twisted_circulants::twisted::{
    change_of_basis, clock, dc_diagonalizer, flat_diagonalizer, gauss_sum, root_table, shift,
    DiagonalSpec, Modulus, TwistedCirculant,
};

fn main() {
    let n = Modulus::new(7).unwrap();
    eprintln!("=== Twisted circulant diagonalization (n = {}) ===\n", n.value());

    // 1. Clock and shift generate the Weyl commutation relation SR = omega RS.
    let s = shift(n);
    let r = clock(n);
    let omega = root_table(n)[1];
    let lhs = s.mul(&r).unwrap();
    let rhs = r.mul(&s).unwrap().scale(omega);
    println!("# Section 1: commutation");
    println!("commutation_residual\t{:.3e}", lhs.max_abs_diff(&rhs));
    println!();

    // 2. X(r,s) diagonalizes A(r,s) with flat entries.
    println!("# Section 2: flat diagonalizers");
    println!("r\ts\tentry_flatness\tunitarity\tdiag_residual");
    let table = root_table(n);
    for (rr, ss) in [(1u64, 1u64), (2, 3), (6, 5)] {
        let x = flat_diagonalizer(n, rr, ss);
        let a = TwistedCirculant::new(n, rr as i64, ss as i64).to_matrix();
        let conj = x.adjoint().mul(&a).unwrap().mul(&x).unwrap();
        let mut diag_residual = 0.0f64;
        for i in 0..n.size() {
            for j in 0..n.size() {
                let want = if i == j { table[i] } else { Complex::ZERO };
                diag_residual = diag_residual.max((conj.get(i, j) - want).norm());
            }
        }
        let flat = 1.0 / (n.value() as f64).sqrt();
        let mut flatness = 0.0f64;
        for i in 0..n.size() {
            for j in 0..n.size() {
                flatness = flatness.max((x.get(i, j).norm() - flat).abs());
            }
        }
        println!(
            "{rr}\t{ss}\t{:.3e}\t{:.3e}\t{:.3e}",
            flatness,
            x.unitarity_residual(),
            diag_residual
        );
    }
    println!();

    // 3. Random unit-modulus diagonal times a circulant.
    println!("# Section 3: D*S^s for random unit-modulus D");
    println!("trial\ts\toff_diag\teigenvalue_residual");
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    for trial in 0..3 {
        let entries: Vec<Complex> = (0..n.size())
            .map(|_| Complex::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU)))
            .collect();
        let d = DiagonalSpec::new(n, entries).unwrap();
        let ss = rng.random_range(1..n.value());
        let (u, eigs) = dc_diagonalizer(&d, ss).unwrap();
        let mut spow = twisted_circulants::linalg::ComplexMatrix::identity(n.size());
        for _ in 0..ss {
            spow = spow.mul(&shift(n)).unwrap();
        }
        let dc = d.to_matrix().mul(&spow).unwrap();
        let conj = u.adjoint().mul(&dc).unwrap().mul(&u).unwrap();
        let mut off = 0.0f64;
        let mut eig_dev = 0.0f64;
        for i in 0..n.size() {
            for j in 0..n.size() {
                if i == j {
                    eig_dev = eig_dev.max((conj.get(i, i) - eigs.get(i)).norm());
                } else {
                    off = off.max(conj.get(i, j).norm());
                }
            }
        }
        println!("{trial}\t{ss}\t{off:.3e}\t{eig_dev:.3e}");
    }
    println!();

    // 4. Gauss sums and the change-of-basis matrix.
    println!("# Section 4: Gauss sums |sum_j Omega^(a j^2 + b j)| = sqrt(n) for a != 0");
    println!("a\tb\tmagnitude\tsqrt_n_dev");
    for (a, b) in [(1u64, 0u64), (3, 5), (6, 2)] {
        let g = gauss_sum(n, a, b);
        println!(
            "{a}\t{b}\t{:.6}\t{:.3e}",
            g.norm(),
            (g.norm() - (n.value() as f64).sqrt()).abs()
        );
    }
    println!();

    println!("# Section 5: change-of-basis entry flatness (generating regime)");
    println!("r1\ts1\tr2\ts2\tmax_entry_dev");
    for (r1, s1, r2, s2) in [(1u64, 1u64, 1u64, 2u64), (2, 3, 4, 5), (1, 6, 5, 2)] {
        let y = change_of_basis(n, (r1, s1), (r2, s2)).unwrap();
        let flat = 1.0 / (n.value() as f64).sqrt();
        let mut dev = 0.0f64;
        for i in 0..n.size() {
            for j in 0..n.size() {
                dev = dev.max((y.get(i, j).norm() - flat).abs());
            }
        }
        println!("{r1}\t{s1}\t{r2}\t{s2}\t{dev:.3e}");
    }

    eprintln!("\n=== done ===");
}
