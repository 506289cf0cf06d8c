//! A small edge-count sweep with a fitted log-log slope.

use tempmotif::bench::{default_base, fit_slope, run_suite, write_csv, BenchConfig, Suite};

fn main() {
    let mut base = default_base();
    base.k = 4;
    base.t = 40;
    let cfg = BenchConfig { repeats: 2, ..BenchConfig::default() };
    let sizes = [2_000, 4_000, 8_000, 16_000];
    let rows = run_suite(Suite::Edges, &sizes, &base, &cfg).unwrap();
    write_csv(&rows, std::io::stdout().lock()).unwrap();

    let summary: Vec<_> = rows.iter().filter(|r| r.solver == "algebraic" && r.repeat == "max").collect();
    let xs: Vec<f64> = summary.iter().map(|r| (r.m as f64).ln()).collect();
    let ys: Vec<f64> = summary.iter().map(|r| r.decision_secs.ln()).collect();
    println!("# log-log slope of decision time in m: {:.2}", fit_slope(&xs, &ys));
}
