//! Higher-dimensional Heisenberg groups H(p,d).
//!
//! The p^d-dimensional principal-series representations factor as tensor
//! products of clock/shift blocks, so the generator average at each of them
//! reduces to the d = 1 analysis. This example cross-checks the two
//! constructions, tabulates per-representation coefficient norms next to the
//! one-dimensional maximum (the decay comparison genuinely inverts at small
//! p), and measures the linear-in-d growth of the mixing time.
//!
//! Run:
//!   cargo run --example higher_dimensional -p twisted-circulants --release

use twisted_circulants::heisenberg::{
    char_hd, mixing_time, rho_hd_function_space, rho_hd_tensor, standard_hd_set, Group,
    HeisenbergHd,
};
use twisted_circulants::linalg::{Complex, ComplexMatrix};
use twisted_circulants::twisted::Modulus;

fn main() {
    eprintln!("=== Higher-dimensional Heisenberg groups ===\n");

    println!("# Section 1: function-space vs tensor construction of rho_c");
    println!("p\td\tc\tmax_entry_discrepancy");
    for (p, d) in [(3u64, 1usize), (3, 2), (5, 1), (5, 2)] {
        let m = Modulus::new(p).unwrap();
        let group = HeisenbergHd::new(m, d).unwrap();
        for c in 1..p {
            let mut dev = 0.0f64;
            let mut sample = Vec::new();
            for i in 0..d {
                sample.push(group.e(i));
                sample.push(group.f(i));
            }
            let mut state = 1u64;
            for _ in 0..20 {
                state = twisted_circulants::derive_seed(state, &[c]);
                sample.push(group.element((state % group.order() as u64) as usize));
            }
            for g in &sample {
                let a = rho_hd_function_space(m, d, c, g).unwrap();
                let b = rho_hd_tensor(m, d, c, g).unwrap();
                dev = dev.max(a.max_abs_diff(&b));
            }
            println!("{p}\t{d}\t{c}\t{dev:.3e}");
        }
    }
    println!();

    println!("# Section 2: coefficient norms of the standard 4d-step walk");
    println!("p\td\tmax_principal_norm\tmax_onedim_norm\tprincipal_decays_faster");
    for (p, d) in [(3u64, 1usize), (3, 2), (5, 1), (5, 2)] {
        let m = Modulus::new(p).unwrap();
        let group = HeisenbergHd::new(m, d).unwrap();
        let gens = standard_hd_set(&group);
        let dim = (p as usize).pow(d as u32);
        let mut max_principal = 0.0f64;
        for c in 1..p {
            let mut avg = ComplexMatrix::zeros(dim, dim);
            for (step, prob) in gens.steps() {
                avg = avg
                    .add(&rho_hd_function_space(m, d, c, step).unwrap()
                        .scale(Complex::new(*prob, 0.0)))
                    .unwrap();
            }
            max_principal =
                max_principal.max(avg.operator_norm_hermitian(1e-12 * dim as f64).unwrap());
        }
        let mut max_onedim = 0.0f64;
        let mut coeffs = vec![0u64; 2 * d];
        for flat in 1..p.pow(2 * d as u32) {
            let mut idx = flat;
            for slot in coeffs.iter_mut().rev() {
                *slot = idx % p;
                idx /= p;
            }
            let (a, b) = coeffs.split_at(d);
            let mut acc = Complex::ZERO;
            for (step, prob) in gens.steps() {
                acc += char_hd(m, a, b, step) * *prob;
            }
            max_onedim = max_onedim.max(acc.norm());
        }
        println!(
            "{p}\t{d}\t{max_principal:.6}\t{max_onedim:.6}\t{}",
            max_principal < max_onedim
        );
    }
    eprintln!("\nAt p = 3 the principal-series coefficient exceeds every");
    eprintln!("one-dimensional one; the asymptotic separation starts at p = 5.");
    println!();

    println!("# Section 3: mixing time grows linearly in d (p = 3)");
    println!("d\torder\tk_star\tk_star/d");
    for d in [1usize, 2] {
        let m = Modulus::new(3).unwrap();
        let group = HeisenbergHd::new(m, d).unwrap();
        let gens = standard_hd_set(&group);
        let k = mixing_time(&group, &gens, 0.25, 100_000).unwrap().unwrap();
        println!("{d}\t{}\t{k}\t{:.2}", group.order(), k as f64 / d as f64);
    }

    eprintln!("\n=== done ===");
}
