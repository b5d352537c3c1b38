//! Benchmark sweeps: times each method on generated generic instances,
//! emits CSV records, and reports doubling ratios and the naive-vs-fast
//! crossover when both methods are swept.

use std::io::Write;
use std::time::{Duration, Instant};

use bieval::bipoly::{BiPoly, PointSet};

use crate::instance::{self, PointMode};
use crate::{run_method, CliError, Method};

#[derive(Clone, Debug)]
pub struct BenchRecord {
    pub method: Method,
    pub n: usize,
    pub m: usize,
    pub point_count: usize,
    pub modulus: u64,
    pub seed: u64,
    pub wall_time_ns: u128,
}

pub const CSV_HEADER: &str = "method,n,m,N,modulus,seed,wall_time_ns";

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.method.name(),
            self.n,
            self.m,
            self.point_count,
            self.modulus,
            self.seed,
            self.wall_time_ns
        )
    }
}

fn median_ns(reps: usize, mut run: impl FnMut()) -> u128 {
    run(); // warm-up, discarded
    let mut times: Vec<Duration> = (0..reps.max(1))
        .map(|_| {
            let t = Instant::now();
            run();
            t.elapsed()
        })
        .collect();
    times.sort();
    times[times.len() / 2].as_nanos()
}

pub fn run(
    sizes: &[(usize, usize)],
    modulus: u64,
    methods: &[Method],
    repetitions: usize,
    seed: u64,
    csv: &mut dyn Write,
    report: &mut dyn Write,
) -> Result<Vec<BenchRecord>, CliError> {
    writeln!(csv, "{CSV_HEADER}").map_err(|e| CliError::Input(e.to_string()))?;
    let mut records = Vec::new();

    for (idx, &(n, m)) in sizes.iter().enumerate() {
        // One instance per size cell, derived deterministically from the
        // sweep seed.
        let cell_seed = seed ^ ((idx as u64 + 1) << 32);
        let inst = instance::generate(n, m, modulus, cell_seed, PointMode::Generic)?;
        let field = inst.field()?;
        let poly: BiPoly = inst.to_bipoly(field);
        let pts: PointSet = inst.to_pointset(field);

        for &method in methods {
            let wall_time_ns = median_ns(repetitions, || {
                run_method(method, &poly, &pts, cell_seed).expect("bench instance evaluates");
            });
            let rec = BenchRecord {
                method,
                n,
                m,
                point_count: pts.len(),
                modulus,
                seed: cell_seed,
                wall_time_ns,
            };
            writeln!(csv, "{}", rec.csv_row()).map_err(|e| CliError::Input(e.to_string()))?;
            records.push(rec);
        }
    }

    write_report(&records, sizes, methods, report).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(records)
}

fn write_report(
    records: &[BenchRecord],
    sizes: &[(usize, usize)],
    methods: &[Method],
    out: &mut dyn Write,
) -> std::io::Result<()> {
    let time_of = |method: Method, n: usize, m: usize| -> Option<u128> {
        records
            .iter()
            .find(|r| r.method == method && r.n == n && r.m == m)
            .map(|r| r.wall_time_ns)
    };

    // Doubling ratios time(2n)/time(n) for consecutive doubled sizes.
    for &method in methods {
        for w in sizes.windows(2) {
            let ((n1, m1), (n2, m2)) = (w[0], w[1]);
            if n2 != 2 * n1 || m2 != 2 * m1 {
                continue;
            }
            if let (Some(t1), Some(t2)) = (time_of(method, n1, m1), time_of(method, n2, m2)) {
                if t1 > 0 {
                    writeln!(
                        out,
                        "doubling {} {}x{} -> {}x{}: {:.2}x",
                        method.name(),
                        n1,
                        m1,
                        n2,
                        m2,
                        t2 as f64 / t1 as f64
                    )?;
                }
            }
        }
    }

    // Naive-vs-fast crossover within the sweep.
    if methods.contains(&Method::Naive) && methods.contains(&Method::Fast) {
        let mut crossover = None;
        let mut last_ratio = None;
        for &(n, m) in sizes {
            if let (Some(tn), Some(tf)) =
                (time_of(Method::Naive, n, m), time_of(Method::Fast, n, m))
            {
                last_ratio = Some((n, m, tf as f64 / tn as f64));
                if tf < tn && crossover.is_none() {
                    crossover = Some((n, m));
                }
            }
        }
        match (crossover, last_ratio) {
            (Some((n, m)), _) => writeln!(out, "crossover: fast beats naive from {n}x{m}")?,
            (None, Some((n, m, ratio))) => writeln!(
                out,
                "crossover: none within sweep; fast/naive ratio at {n}x{m} is {ratio:.2}"
            )?,
            (None, None) => {}
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bench_produces_records_and_ratio_lines() {
        let sizes = [(2usize, 2usize), (4, 4)];
        let methods = [Method::Naive, Method::Fast];
        let mut csv = Vec::new();
        let mut report = Vec::new();
        let records = run(&sizes, 65537, &methods, 2, 7, &mut csv, &mut report).unwrap();
        assert_eq!(records.len(), 4);
        let text = String::from_utf8(csv).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert_eq!(lines.count(), 4);
        let report = String::from_utf8(report).unwrap();
        assert!(report.contains("doubling naive 2x2 -> 4x4"));
        assert!(report.contains("crossover:"));
    }
}
