//! Instance files: a line-oriented text format holding a modulus, the
//! coefficient grid of a bivariate polynomial, and a list of evaluation
//! points. All integers are reduced modulo the modulus on load.
//!
//! ```text
//! # optional comments and blank lines
//! modulus 7
//! n 2
//! m 2
//! coeffs
//! 0 1        <- row i holds the m coefficients of X^i Y^0 .. X^i Y^(m-1)
//! 1 0
//! points 4
//! 0 1        <- x y
//! 1 2
//! 2 3
//! 3 4
//! ```

use std::fmt;

use bieval::bipoly::{BiPoly, PointSet};
use bieval::{Fe, PrimeField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::CliError;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InstanceFile {
    pub modulus: u64,
    pub n: usize,
    pub m: usize,
    /// n rows of m residues; row i holds the coefficients of X^i.
    pub coeffs: Vec<Vec<u64>>,
    pub points: Vec<(u64, u64)>,
}

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    current: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            current: 0,
        }
    }

    /// Next line that is neither blank nor a comment.
    fn next_content(&mut self) -> Option<&'a str> {
        for (idx, line) in self.inner.by_ref() {
            self.current = idx + 1;
            let trimmed = line.trim();
            if !trimmed.is_empty() && !trimmed.starts_with('#') {
                return Some(trimmed);
            }
        }
        None
    }

    fn fail(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            line: self.current,
            msg: msg.into(),
        }
    }
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = Lines::new(text);

        let modulus = parse_keyword_u64(&mut lines, "modulus")?;
        if modulus < 2 {
            return Err(lines.fail(format!("modulus {modulus} is too small")));
        }
        let n = parse_keyword_u64(&mut lines, "n")? as usize;
        let m = parse_keyword_u64(&mut lines, "m")? as usize;
        if n == 0 || m == 0 {
            return Err(lines.fail("n and m must be at least 1"));
        }

        match lines.next_content() {
            Some("coeffs") => {}
            Some(other) => return Err(lines.fail(format!("expected 'coeffs', found '{other}'"))),
            None => return Err(lines.fail("expected 'coeffs'")),
        }
        let mut coeffs = Vec::with_capacity(n);
        for _ in 0..n {
            let line = lines
                .next_content()
                .ok_or_else(|| lines.fail("missing coefficient row"))?;
            coeffs.push(parse_residue_row(&lines, line, m, modulus)?);
        }

        let count = match lines.next_content() {
            Some(line) => match line.strip_prefix("points") {
                Some(rest) => rest
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| lines.fail(format!("bad point count in '{line}'")))?,
                None => {
                    return Err(lines.fail(format!("expected 'points <count>', found '{line}'")))
                }
            },
            None => return Err(lines.fail("expected 'points <count>'")),
        };
        let mut points = Vec::with_capacity(count);
        for _ in 0..count {
            let line = lines
                .next_content()
                .ok_or_else(|| lines.fail("missing point row"))?;
            let row = parse_residue_row(&lines, line, 2, modulus)?;
            points.push((row[0], row[1]));
        }
        if let Some(extra) = lines.next_content() {
            return Err(lines.fail(format!("unexpected trailing content '{extra}'")));
        }

        Ok(InstanceFile {
            modulus,
            n,
            m,
            coeffs,
            points,
        })
    }

    pub fn serialize(&self) -> String {
        let mut out = String::from("# bieval instance\n");
        out.push_str(&format!("modulus {}\n", self.modulus));
        out.push_str(&format!("n {}\n", self.n));
        out.push_str(&format!("m {}\n", self.m));
        out.push_str("coeffs\n");
        for row in &self.coeffs {
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out.push_str(&format!("points {}\n", self.points.len()));
        for &(x, y) in &self.points {
            out.push_str(&format!("{x} {y}\n"));
        }
        out
    }

    pub fn field(&self) -> Result<PrimeField, CliError> {
        PrimeField::new(self.modulus).map_err(|e| CliError::Input(e.to_string()))
    }

    pub fn to_bipoly(&self, field: PrimeField) -> BiPoly {
        let coeffs: Vec<Fe> = self
            .coeffs
            .iter()
            .flat_map(|row| row.iter().map(|&c| field.elem(c)))
            .collect();
        BiPoly::new(field, self.n, self.m, coeffs).expect("dimensions validated on parse")
    }

    pub fn to_pointset(&self, field: PrimeField) -> PointSet {
        PointSet::new(
            field,
            self.points
                .iter()
                .map(|&(x, y)| (field.elem(x), field.elem(y)))
                .collect(),
        )
    }
}

fn parse_keyword_u64(lines: &mut Lines<'_>, key: &str) -> Result<u64, ParseError> {
    let line = lines
        .next_content()
        .ok_or_else(|| lines.fail(format!("expected '{key} <value>'")))?;
    let rest = line
        .strip_prefix(key)
        .ok_or_else(|| lines.fail(format!("expected '{key} <value>', found '{line}'")))?;
    rest.trim()
        .parse::<u64>()
        .map_err(|_| lines.fail(format!("bad value for '{key}' in '{line}'")))
}

fn parse_residue_row(
    lines: &Lines<'_>,
    line: &str,
    expected: usize,
    modulus: u64,
) -> Result<Vec<u64>, ParseError> {
    let mut out = Vec::with_capacity(expected);
    for tok in line.split_whitespace() {
        let v: i128 = tok
            .parse()
            .map_err(|_| lines.fail(format!("bad integer '{tok}'")))?;
        out.push(v.rem_euclid(modulus as i128) as u64);
    }
    if out.len() != expected {
        return Err(lines.fail(format!("expected {expected} integers, found {}", out.len())));
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum PointMode {
    /// Pairwise distinct x-coordinates.
    Generic,
    /// A small pool of x values, forcing collisions (the shear path).
    #[value(alias = "shared_x")]
    SharedX,
    /// A Cartesian n x m grid in row-major order.
    Grid,
}

/// Deterministic pseudorandom instance for the given mode.
pub fn generate(
    n: usize,
    m: usize,
    modulus: u64,
    seed: u64,
    mode: PointMode,
) -> Result<InstanceFile, CliError> {
    let field = PrimeField::new(modulus).map_err(|e| CliError::Input(e.to_string()))?;
    if n == 0 || m == 0 {
        return Err(CliError::Input("n and m must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = n * m;

    let coeffs: Vec<Vec<u64>> = (0..n)
        .map(|_| (0..m).map(|_| field.sample(&mut rng).value()).collect())
        .collect();

    let distinct = |want: usize, rng: &mut ChaCha8Rng| -> Result<Vec<u64>, CliError> {
        if want as u64 > modulus {
            return Err(CliError::Input(format!(
                "cannot sample {want} distinct values in a field of {modulus} elements"
            )));
        }
        let mut seen = std::collections::HashSet::with_capacity(want);
        let mut out = Vec::with_capacity(want);
        while out.len() < want {
            let v = field.sample(rng).value();
            if seen.insert(v) {
                out.push(v);
            }
        }
        Ok(out)
    };

    let points: Vec<(u64, u64)> = match mode {
        PointMode::Generic => distinct(count, &mut rng)?
            .into_iter()
            .map(|x| (x, field.sample(&mut rng).value()))
            .collect(),
        PointMode::SharedX => {
            if (modulus as u128) < (count as u128) * (count as u128) {
                log::warn!(
                    "field of {modulus} elements is below N^2 = {}; the shear search may fail on this instance",
                    count * count
                );
            }
            let pool = distinct(count.div_ceil(2).max(1), &mut rng)?;
            (0..count)
                .map(|_| {
                    (
                        pool[rng.gen_range(0..pool.len())],
                        field.sample(&mut rng).value(),
                    )
                })
                .collect()
        }
        PointMode::Grid => {
            let xs = distinct(n, &mut rng)?;
            let ys = distinct(m, &mut rng)?;
            xs.iter()
                .flat_map(|&x| ys.iter().map(move |&y| (x, y)))
                .collect()
        }
    };

    Ok(InstanceFile {
        modulus,
        n,
        m,
        coeffs,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str =
        "# demo\nmodulus 7\nn 2\nm 2\ncoeffs\n0 1\n1 0\npoints 4\n0 1\n1 2\n2 3\n3 4\n";

    #[test]
    fn parse_round_trip() {
        let inst = InstanceFile::parse(SAMPLE).unwrap();
        assert_eq!(inst.n, 2);
        assert_eq!(inst.m, 2);
        assert_eq!(inst.coeffs, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(inst.points.len(), 4);
        let again = InstanceFile::parse(&inst.serialize()).unwrap();
        assert_eq!(inst, again);
    }

    #[test]
    fn parse_reduces_mod_modulus() {
        let text = "modulus 7\nn 1\nm 2\ncoeffs\n-1 15\npoints 1\n-3 700\n";
        let inst = InstanceFile::parse(text).unwrap();
        assert_eq!(inst.coeffs, vec![vec![6, 1]]);
        assert_eq!(inst.points, vec![(4, 0)]);
    }

    #[test]
    fn parse_reports_line_numbers() {
        let text = "modulus 7\nn 2\nm 2\ncoeffs\n0 1\n1 2 3\npoints 0\n";
        let err = InstanceFile::parse(text).unwrap_err();
        assert_eq!(err.line, 6);
        assert!(err.msg.contains("expected 2 integers"));
    }

    #[test]
    fn generate_modes() {
        let g = generate(2, 2, 7, 1, PointMode::Generic).unwrap();
        assert_eq!(g.points.len(), 4);
        let mut xs: Vec<u64> = g.points.iter().map(|&(x, _)| x).collect();
        xs.sort_unstable();
        xs.dedup();
        assert_eq!(xs.len(), 4, "generic mode guarantees distinct x");

        let grid = generate(2, 2, 7, 5, PointMode::Grid).unwrap();
        assert_eq!(grid.points.len(), 4);
        assert_eq!(grid.points[0].0, grid.points[1].0);
        assert_eq!(grid.points[2].0, grid.points[3].0);
        assert_eq!(grid.points[0].1, grid.points[2].1);

        let shared = generate(4, 4, 65537, 9, PointMode::SharedX).unwrap();
        let mut sx: Vec<u64> = shared.points.iter().map(|&(x, _)| x).collect();
        sx.sort_unstable();
        sx.dedup();
        assert!(sx.len() < 16, "shared-x mode forces collisions");

        assert_eq!(
            generate(2, 2, 7, 1, PointMode::Generic).unwrap(),
            generate(2, 2, 7, 1, PointMode::Generic).unwrap(),
            "same seed, same instance"
        );

        assert!(matches!(
            generate(2, 2, 15, 1, PointMode::Generic),
            Err(CliError::Input(_))
        ));
        assert!(matches!(
            generate(3, 3, 7, 1, PointMode::Generic),
            Err(CliError::Input(_))
        ));
    }
}
