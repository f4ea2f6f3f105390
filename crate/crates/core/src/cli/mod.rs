//! Command implementations behind the `twisted-circulants` binary.
//!
//! Every run is a pure function of its [`RunConfig`]: seeds flow top-down,
//! sweeps derive per-task seeds by stable hashing, and records are emitted in
//! a fixed order, so repeated runs produce byte-identical output. Exit codes:
//! 0 = all checks passed, 1 = a mathematical claim was violated, 2 = usage
//! error.

pub mod verify;

use crate::heisenberg::{
    self, generating_check, mixing_time, standard_hd_set, standard_pair_set, FourierBound,
    Heisenberg, HeisenbergHd,
};
use crate::spectra::{
    self, equal_slope_grid, fraction_below_caption, gap_scan, pair_norm, GridThreshold, ScanMode,
    SpectralScanRecord,
};
use crate::twisted::Modulus;
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// One subcommand with its parameters, as parsed from the command line.
#[derive(Debug, Clone)]
pub enum Command {
    /// Pair-norm scan: explicit pairs, exhaustive, or sampled.
    Spectrum {
        n: u64,
        /// `"r1,s1,r2,s2[;...]"`.
        pairs: Option<String>,
        exhaustive: bool,
        samples: usize,
    },
    /// Equal-slopes closed-form grid.
    Grid {
        n: u64,
        /// `"caption"`, `"text"`, or a numeric threshold in [0,1).
        threshold: String,
    },
    /// Exact walk simulation with TV rows and optional Fourier bound.
    Mix {
        n: Option<u64>,
        p: Option<u64>,
        d: Option<usize>,
        /// `"s1,r1;s2,r2"`; H(n) only.
        gens: Option<String>,
        eps: f64,
        max_steps: usize,
        bound: bool,
    },
    /// Named invariant suites with a JSON report.
    Verify { suite: String, n_list: Vec<u64> },
    /// Principal-series construction cross-check for H(p,d).
    Rep { p: u64, d: usize, c: u64 },
}

/// A full deterministic run description.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            seed: 0,
            out: None,
            format: OutputFormat::Csv,
            threads: None,
        }
    }
}

/// Runs a command, writing records to `--out` (or stdout) and diagnostics to
/// stderr; returns the process exit code.
pub fn run(config: &RunConfig) -> i32 {
    if let Some(threads) = config.threads {
        // Affects speed only; results are collected in deterministic order.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let mut out: Box<dyn Write> = match &config.out {
        None => Box::new(std::io::stdout().lock()),
        Some(path) => match std::fs::File::create(path) {
            Ok(f) => Box::new(std::io::BufWriter::new(f)),
            Err(e) => {
                eprintln!("cannot open {}: {e}", path.display());
                return EXIT_USAGE;
            }
        },
    };
    let code = match &config.command {
        Command::Spectrum { n, pairs, exhaustive, samples } => cmd_spectrum(
            config,
            &mut out,
            *n,
            pairs.as_deref(),
            *exhaustive,
            *samples,
        ),
        Command::Grid { n, threshold } => cmd_grid(config, &mut out, *n, threshold),
        Command::Mix { n, p, d, gens, eps, max_steps, bound } => cmd_mix(
            config,
            &mut out,
            *n,
            *p,
            *d,
            gens.as_deref(),
            *eps,
            *max_steps,
            *bound,
        ),
        Command::Verify { suite, n_list } => cmd_verify(config, &mut out, suite, n_list),
        Command::Rep { p, d, c } => cmd_rep(config, &mut out, *p, *d, *c),
    };
    let _ = out.flush();
    code
}

/// 17 significant digits, enough to round-trip any f64.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_rows<T: Serialize>(
    out: &mut dyn Write,
    format: OutputFormat,
    header: &str,
    rows: &[T],
    csv_row: impl Fn(&T) -> String,
) -> std::io::Result<()> {
    match format {
        OutputFormat::Csv => {
            writeln!(out, "{header}")?;
            for row in rows {
                writeln!(out, "{}", csv_row(row))?;
            }
        }
        OutputFormat::Json => {
            let text = serde_json::to_string_pretty(rows).expect("serializable records");
            writeln!(out, "{text}")?;
        }
    }
    Ok(())
}

fn parse_modulus(n: u64) -> Result<Modulus, i32> {
    Modulus::new(n).map_err(|_| {
        eprintln!("modulus must be an odd prime, got {n}");
        EXIT_USAGE
    })
}

fn spectrum_csv_row(r: &SpectralScanRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        r.n,
        r.r1,
        r.s1,
        r.r2,
        r.s2,
        if r.equal_slopes { "equal-slopes" } else { "generic" },
        fmt_f64(r.norm),
        fmt_f64(r.gap),
        fmt_f64(r.scaled_gap)
    )
}

const SPECTRUM_HEADER: &str = "n,r1,s1,r2,s2,regime,norm,gap,scaled_gap";

fn cmd_spectrum(
    config: &RunConfig,
    out: &mut dyn Write,
    n: u64,
    pairs: Option<&str>,
    exhaustive: bool,
    samples: usize,
) -> i32 {
    let modulus = match parse_modulus(n) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let records: Vec<SpectralScanRecord> = if let Some(pairs) = pairs {
        let mut records = Vec::new();
        for quad in pairs.split(';') {
            let parts: Vec<&str> = quad.split(',').collect();
            let parsed: Option<Vec<u64>> =
                parts.iter().map(|p| p.trim().parse::<u64>().ok()).collect();
            match parsed.as_deref() {
                Some([r1, s1, r2, s2]) => {
                    match pair_norm(modulus, *r1, *s1, *r2, *s2) {
                        Ok(rec) => records.push(rec),
                        Err(e) => {
                            eprintln!("pair ({quad}) failed: {e}");
                            return EXIT_USAGE;
                        }
                    }
                }
                _ => {
                    eprintln!("malformed pair list entry: {quad:?} (want r1,s1,r2,s2)");
                    return EXIT_USAGE;
                }
            }
        }
        records
    } else {
        let mode = if exhaustive {
            ScanMode::Exhaustive
        } else {
            ScanMode::Sampled { count: samples, seed: config.seed }
        };
        match gap_scan(modulus, mode) {
            Ok(scan) => scan.records,
            Err(e) => {
                eprintln!("scan failed: {e}");
                return EXIT_USAGE;
            }
        }
    };
    if write_rows(out, config.format, SPECTRUM_HEADER, &records, spectrum_csv_row).is_err() {
        return EXIT_USAGE;
    }
    let violations = records
        .iter()
        .filter(|r| !r.equal_slopes && r.gap <= 0.0)
        .count();
    if violations > 0 {
        eprintln!("{violations} generic-regime record(s) violate gap > 0");
        return EXIT_CLAIM_VIOLATION;
    }
    EXIT_OK
}

const GRID_HEADER: &str = "product,k,k_times_product,norm,marked,degenerate";

fn cmd_grid(config: &RunConfig, out: &mut dyn Write, n: u64, threshold: &str) -> i32 {
    let modulus = match parse_modulus(n) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let threshold_value = match threshold {
        "caption" => GridThreshold::Caption.value(modulus),
        "text" => GridThreshold::Text.value(modulus),
        other => match other.parse::<f64>() {
            Ok(v) if (0.0..1.0).contains(&v) => v,
            _ => {
                eprintln!("bad threshold {other:?}: want caption, text, or a number in [0,1)");
                return EXIT_USAGE;
            }
        },
    };
    let cells = match equal_slope_grid(modulus, threshold_value) {
        Ok(cells) => cells,
        Err(e) => {
            eprintln!("grid failed: {e}");
            return EXIT_USAGE;
        }
    };
    let row = |c: &spectra::GridCell| {
        format!(
            "{},{},{},{},{},{}",
            c.product,
            c.k,
            c.k_times_product,
            fmt_f64(c.norm),
            c.marked,
            c.degenerate
        )
    };
    if write_rows(out, config.format, GRID_HEADER, &cells, row).is_err() {
        return EXIT_USAGE;
    }
    let marked = cells.iter().filter(|c| c.marked && !c.degenerate).count();
    let fraction = fraction_below_caption(&cells, modulus);
    eprintln!(
        "grid n={n} threshold={}: {marked} non-degenerate cells marked; fraction with norm < 1-1/n: {}",
        fmt_f64(threshold_value),
        fmt_f64(fraction)
    );
    EXIT_OK
}

#[derive(Serialize)]
struct MixRow {
    k: usize,
    tv: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<f64>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_mix(
    config: &RunConfig,
    out: &mut dyn Write,
    n: Option<u64>,
    p: Option<u64>,
    d: Option<usize>,
    gens: Option<&str>,
    eps: f64,
    max_steps: usize,
    bound: bool,
) -> i32 {
    if !(eps > 0.0 && eps < 1.0) {
        eprintln!("eps must lie in (0,1), got {eps}");
        return EXIT_USAGE;
    }
    let (curve, bound_curve): (Vec<f64>, Option<FourierBound>) = match (n, p, d) {
        (Some(n), None, None) => {
            let modulus = match parse_modulus(n) {
                Ok(m) => m,
                Err(code) => return code,
            };
            let ((s1, r1), (s2, r2)) = match parse_gens(gens) {
                Ok(pairs) => pairs,
                Err(msg) => {
                    eprintln!("{msg}");
                    return EXIT_USAGE;
                }
            };
            if !generating_check(modulus, r1, s1, r2, s2) {
                eprintln!(
                    "r1*s2 = r2*s1 (mod {n}): step set ({s1},{r1}),({s2},{r2}) does not generate H({n})"
                );
                return EXIT_USAGE;
            }
            let group = Heisenberg::new(modulus);
            let gens = match standard_pair_set(&group, (s1, r1), (s2, r2)) {
                Ok(g) => g,
                Err(e) => {
                    eprintln!("{e}");
                    return EXIT_USAGE;
                }
            };
            let fb = if bound {
                match FourierBound::heisenberg(&group, &gens) {
                    Ok(fb) => Some(fb),
                    Err(e) => {
                        eprintln!("bound unavailable: {e}");
                        return EXIT_USAGE;
                    }
                }
            } else {
                None
            };
            let kstar = match mixing_time(&group, &gens, eps, max_steps) {
                Ok(k) => k,
                Err(e) => {
                    eprintln!("{e}");
                    return EXIT_USAGE;
                }
            };
            let last = kstar.unwrap_or(max_steps);
            (heisenberg::tv_curve(&group, &gens, last), fb)
        }
        (None, Some(p), Some(d)) => {
            if gens.is_some() {
                eprintln!("--gens applies to H(n) only; H(p,d) uses the standard 4d-element set");
                return EXIT_USAGE;
            }
            let modulus = match parse_modulus(p) {
                Ok(m) => m,
                Err(code) => return code,
            };
            let group = match HeisenbergHd::new(modulus, d) {
                Ok(g) => g,
                Err(e) => {
                    eprintln!("{e}");
                    return EXIT_USAGE;
                }
            };
            let gens = standard_hd_set(&group);
            let fb = if bound {
                match FourierBound::heisenberg_hd(&group, &gens) {
                    Ok(fb) => Some(fb),
                    Err(e) => {
                        eprintln!("bound unavailable: {e}");
                        return EXIT_USAGE;
                    }
                }
            } else {
                None
            };
            let kstar = match mixing_time(&group, &gens, eps, max_steps) {
                Ok(k) => k,
                Err(e) => {
                    eprintln!("{e}");
                    return EXIT_USAGE;
                }
            };
            let last = kstar.unwrap_or(max_steps);
            (heisenberg::tv_curve(&group, &gens, last), fb)
        }
        _ => {
            eprintln!("specify either --n N or both --p P and --d D");
            return EXIT_USAGE;
        }
    };

    let rows: Vec<MixRow> = curve
        .iter()
        .enumerate()
        .map(|(k, &tv)| MixRow {
            k,
            tv,
            bound: bound_curve.as_ref().map(|fb| fb.at(k)),
        })
        .collect();
    let header = if bound { "k,tv,bound" } else { "k,tv" };
    let row = |r: &MixRow| match r.bound {
        Some(b) => format!("{},{},{}", r.k, fmt_f64(r.tv), fmt_f64(b)),
        None => format!("{},{}", r.k, fmt_f64(r.tv)),
    };
    if write_rows(out, config.format, header, &rows, row).is_err() {
        return EXIT_USAGE;
    }

    let last = rows.last().expect("k = 0 row always present");
    if last.tv <= eps {
        eprintln!("mixing time k*(eps={eps}) = {}", last.k);
    } else {
        eprintln!("walk saturated max-steps={max_steps} with tv = {}", fmt_f64(last.tv));
    }
    for r in &rows {
        if let Some(b) = r.bound {
            if b < r.tv - 1e-12 {
                eprintln!("Fourier bound {b} below exact tv {} at k = {}", r.tv, r.k);
                return EXIT_CLAIM_VIOLATION;
            }
        }
    }
    EXIT_OK
}

type GenPairs = ((u64, u64), (u64, u64));

/// Parses `"s1,r1;s2,r2"` (paper tuple order: shift component first).
fn parse_gens(gens: Option<&str>) -> Result<GenPairs, String> {
    let text = gens.unwrap_or("1,0;0,1");
    let pairs: Vec<&str> = text.split(';').collect();
    if pairs.len() != 2 {
        return Err(format!("malformed --gens {text:?}: want \"s1,r1;s2,r2\""));
    }
    let mut parsed = Vec::new();
    for pair in pairs {
        let comps: Vec<&str> = pair.split(',').collect();
        let values: Option<Vec<u64>> = comps.iter().map(|c| c.trim().parse().ok()).collect();
        match values.as_deref() {
            Some([s, r]) => parsed.push((*s, *r)),
            _ => return Err(format!("malformed --gens component {pair:?}: want \"s,r\"")),
        }
    }
    Ok((parsed[0], parsed[1]))
}

fn cmd_verify(config: &RunConfig, out: &mut dyn Write, suite: &str, n_list: &[u64]) -> i32 {
    let mut moduli = Vec::new();
    for &n in n_list {
        match parse_modulus(n) {
            Ok(m) => moduli.push(m),
            Err(code) => return code,
        }
    }
    let known = verify::suite_names();
    let selected: Vec<&str> = if suite == "all" {
        known.to_vec()
    } else if known.contains(&suite) {
        vec![known.iter().copied().find(|s| *s == suite).unwrap()]
    } else {
        eprintln!("unknown suite {suite:?}; available: all, {}", known.join(", "));
        return EXIT_USAGE;
    };

    let mut reports = Vec::new();
    for name in selected {
        reports.push(verify::run_suite(name, &moduli, config.seed));
    }
    let text = serde_json::to_string_pretty(&reports).expect("serializable report");
    if writeln!(out, "{text}").is_err() {
        return EXIT_USAGE;
    }
    let failures: usize = reports.iter().map(|r| r.failures.len()).sum();
    if failures > 0 {
        for report in &reports {
            for failure in &report.failures {
                eprintln!(
                    "[{}] {} (residual {})",
                    report.suite, failure.case, failure.residual
                );
            }
        }
        return EXIT_CLAIM_VIOLATION;
    }
    EXIT_OK
}

#[derive(Serialize)]
struct RepRow {
    p: u64,
    d: usize,
    c: u64,
    construction_discrepancy: f64,
    homomorphism_residual: f64,
    average_norm: f64,
    /// Largest nontrivial one-dimensional coefficient magnitude of the same
    /// walk, for the high- vs low-dimensional decay comparison.
    onedim_max: f64,
}

fn cmd_rep(config: &RunConfig, out: &mut dyn Write, p: u64, d: usize, c: u64) -> i32 {
    let modulus = match parse_modulus(p) {
        Ok(m) => m,
        Err(code) => return code,
    };
    if c % p == 0 {
        eprintln!("c must be nonzero mod p");
        return EXIT_USAGE;
    }
    if d == 0 {
        eprintln!("d must be at least 1");
        return EXIT_USAGE;
    }
    let group = match HeisenbergHd::new(modulus, d) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_USAGE;
        }
    };
    match verify::rep_cross_check(&group, c, config.seed) {
        Ok(check) => {
            let row = RepRow {
                p,
                d,
                c,
                construction_discrepancy: check.construction_discrepancy,
                homomorphism_residual: check.homomorphism_residual,
                average_norm: check.average_norm,
                onedim_max: check.onedim_max,
            };
            let header = "p,d,c,construction_discrepancy,homomorphism_residual,average_norm,onedim_max";
            let fmt = |r: &RepRow| {
                format!(
                    "{},{},{},{},{},{},{}",
                    r.p,
                    r.d,
                    r.c,
                    fmt_f64(r.construction_discrepancy),
                    fmt_f64(r.homomorphism_residual),
                    fmt_f64(r.average_norm),
                    fmt_f64(r.onedim_max)
                )
            };
            if write_rows(out, config.format, header, &[row], fmt).is_err() {
                return EXIT_USAGE;
            }
            if check.construction_discrepancy > 1e-12 {
                eprintln!(
                    "construction discrepancy {} exceeds 1e-12",
                    check.construction_discrepancy
                );
                return EXIT_CLAIM_VIOLATION;
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("{e}");
            EXIT_CLAIM_VIOLATION
        }
    }
}
