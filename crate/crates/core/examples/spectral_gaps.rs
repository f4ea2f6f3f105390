//! Spectral gaps of averaged pairs of Hermitian twisted circulants.
//!
//! For quadruples with r1 s2 != r2 s1 the average (M(r1,s1)+M(r2,s2))/2 has
//! operator norm at most 1 - O(1/n). This example scans the regime
//! exhaustively at small n and by seeded sampling at larger n, reporting the
//! minimum gap and the scaled gap n*(1 - norm) per modulus.
//!
//! Run:
//!   cargo run --example spectral_gaps -p twisted-circulants --release

use twisted_circulants::spectra::{gap_scan, pair_norm, ScanMode};
use twisted_circulants::twisted::Modulus;

fn main() {
    eprintln!("=== Spectral gaps for sums of twisted circulants ===\n");

    println!("# Section 1: selected pair norms");
    println!("n\tr1\ts1\tr2\ts2\tregime\tnorm\tgap");
    for (n, r1, s1, r2, s2) in [
        (3u64, 1u64, 0u64, 0u64, 1u64), // the classic generator pair
        (5, 1, 1, 1, 2),
        (5, 1, 1, 2, 2), // equal slopes: commuting pair
        (11, 3, 7, 2, 5),
    ] {
        let m = Modulus::new(n).unwrap();
        let rec = pair_norm(m, r1, s1, r2, s2).unwrap();
        println!(
            "{n}\t{r1}\t{s1}\t{r2}\t{s2}\t{}\t{:.6}\t{:.6}",
            if rec.equal_slopes { "equal-slopes" } else { "generic" },
            rec.norm,
            rec.gap
        );
    }
    println!();

    println!("# Section 2: exhaustive scans (all generating-regime quadruples)");
    println!("n\tquadruples\tmin_gap\tmin_scaled_gap\targmin");
    for n in [5u64, 7, 11, 13] {
        let m = Modulus::new(n).unwrap();
        let scan = gap_scan(m, ScanMode::Exhaustive).unwrap();
        let argmin = scan.argmin().unwrap();
        println!(
            "{n}\t{}\t{:.6}\t{:.6}\t({},{},{},{})",
            scan.records.len(),
            scan.min_gap(),
            scan.min_scaled_gap(),
            argmin.r1,
            argmin.s1,
            argmin.r2,
            argmin.s2
        );
    }
    println!();

    println!("# Section 3: sampled scans (500 quadruples each, seed 0)");
    println!("n\tmin_gap\tmin_scaled_gap");
    for n in [17u64, 23, 31, 41, 53, 61] {
        let m = Modulus::new(n).unwrap();
        let scan = gap_scan(m, ScanMode::Sampled { count: 500, seed: 0 }).unwrap();
        println!("{n}\t{:.6}\t{:.6}", scan.min_gap(), scan.min_scaled_gap());
    }
    eprintln!("\nThe scaled gap stays bounded away from zero as n grows, the");
    eprintln!("numerical face of the 1 - O(1/n) norm bound.");
    eprintln!("\n=== done ===");
}
