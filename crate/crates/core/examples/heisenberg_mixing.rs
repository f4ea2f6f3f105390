//! Exact mixing of random walks on H(n).
//!
//! Simulates the four-step walk exactly (dense convolution over all n^3
//! elements), prints the total-variation decay next to the representation-
//! theoretic upper bound, and tabulates quarter-TV mixing times across n for
//! the standard and a skew generating set. The mixing time scales like n^2.
//!
//! Run:
//!   cargo run --example heisenberg_mixing -p twisted-circulants --release

use twisted_circulants::heisenberg::{
    mixing_time, standard_pair_set, tv_curve, FourierBound, Heisenberg,
};
use twisted_circulants::twisted::Modulus;

fn main() {
    eprintln!("=== Random-walk mixing on H(n) ===\n");

    // 1. TV decay with the Fourier bound for H(5).
    let group = Heisenberg::new(Modulus::new(5).unwrap());
    let gens = standard_pair_set(&group, (1, 0), (0, 1)).unwrap();
    let bound = FourierBound::heisenberg(&group, &gens).unwrap();
    let curve = tv_curve(&group, &gens, 30);
    println!("# Section 1: H(5), standard generators");
    println!("k\ttv\tfourier_bound");
    for (k, tv) in curve.iter().enumerate() {
        println!("{k}\t{:.6}\t{:.6}", tv, bound.at(k));
    }
    println!();

    // 2. Mixing times across n for two generating sets.
    println!("# Section 2: quarter-TV mixing times");
    println!("n\tk_standard\tk_skew\tk_standard/n^2");
    for n in [5u64, 7, 11, 13] {
        let m = Modulus::new(n).unwrap();
        let group = Heisenberg::new(m);
        let std_set = standard_pair_set(&group, (1, 0), (0, 1)).unwrap();
        let skew_set = standard_pair_set(&group, (1, 1), (1, 2)).unwrap();
        let k_std = mixing_time(&group, &std_set, 0.25, 100_000).unwrap().unwrap();
        let k_skew = mixing_time(&group, &skew_set, 0.25, 100_000).unwrap().unwrap();
        println!(
            "{n}\t{k_std}\t{k_skew}\t{:.3}",
            k_std as f64 / (n * n) as f64
        );
    }
    println!();

    // 3. Quadratic scaling ratios.
    println!("# Section 3: scaling ratios (expect within [0.5, 2] of (n2/n1)^2)");
    let kstar = |n: u64| {
        let g = Heisenberg::new(Modulus::new(n).unwrap());
        let gens = standard_pair_set(&g, (1, 0), (0, 1)).unwrap();
        mixing_time(&g, &gens, 0.25, 100_000).unwrap().unwrap() as f64
    };
    let (k5, k7, k11, k13) = (kstar(5), kstar(7), kstar(11), kstar(13));
    println!("pair\tratio\tquadratic_prediction");
    println!("k*(11)/k*(5)\t{:.3}\t{:.3}", k11 / k5, (11.0f64 / 5.0).powi(2));
    println!("k*(13)/k*(7)\t{:.3}\t{:.3}", k13 / k7, (13.0f64 / 7.0).powi(2));

    eprintln!("\n=== done ===");
}
