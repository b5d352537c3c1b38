//! Dense matrix multiplication over the field and over the polynomial
//! ring K[X] (scalar extension: the same bilinear algorithm runs with
//! ring multiplications in place of field multiplications), plus the
//! chunked matrix-times-long-vector product used by modular composition.

use crate::error::{Error, Result};
use crate::field::{Fe, PrimeField};
use crate::unipoly::UniPoly;

/// Default Strassen cutoff for field matrices.
pub const FIELD_STRASSEN_CUTOFF: usize = 64;
/// Default Strassen cutoff for polynomial matrices, where each entry
/// multiplication is itself expensive, so recursion pays off earlier.
pub const POLY_STRASSEN_CUTOFF: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MatMulKind {
    Naive,
    Strassen,
    /// Strassen when the smallest dimension reaches the cutoff, naive
    /// otherwise.
    Auto,
}

/// Which bilinear algorithm to run and where its recursion bottoms out.
/// The exponent estimate is a descriptor of the algorithm (3 for the
/// cubic method, log2 7 for Strassen), not a measured quantity.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct MatMulStrategy {
    pub kind: MatMulKind,
    pub strassen_cutoff: usize,
}

impl MatMulStrategy {
    pub fn new(kind: MatMulKind, strassen_cutoff: usize) -> Self {
        assert!(strassen_cutoff >= 2, "cutoff below 2 cannot terminate");
        MatMulStrategy {
            kind,
            strassen_cutoff,
        }
    }

    pub fn naive() -> Self {
        Self::new(MatMulKind::Naive, FIELD_STRASSEN_CUTOFF)
    }

    pub fn strassen(cutoff: usize) -> Self {
        Self::new(MatMulKind::Strassen, cutoff)
    }

    pub fn auto_field() -> Self {
        Self::new(MatMulKind::Auto, FIELD_STRASSEN_CUTOFF)
    }

    pub fn auto_poly() -> Self {
        Self::new(MatMulKind::Auto, POLY_STRASSEN_CUTOFF)
    }

    pub fn exponent_estimate(&self) -> f64 {
        match self.kind {
            MatMulKind::Naive => 3.0,
            MatMulKind::Strassen | MatMulKind::Auto => 7f64.log2(),
        }
    }

    fn use_strassen(&self, min_dim: usize) -> bool {
        match self.kind {
            MatMulKind::Naive => false,
            MatMulKind::Strassen => true,
            MatMulKind::Auto => min_dim >= self.strassen_cutoff,
        }
    }
}

impl Default for MatMulStrategy {
    fn default() -> Self {
        Self::auto_field()
    }
}

/// Entry trait for the shared bilinear engine. Strassen is bilinear (no
/// divisions), so the same recursion serves field entries and polynomial
/// entries alike.
pub(crate) trait RingEntry: Clone {
    fn r_zero(f: &PrimeField) -> Self;
    fn r_add(f: &PrimeField, a: &Self, b: &Self) -> Self;
    fn r_sub(f: &PrimeField, a: &Self, b: &Self) -> Self;
    fn r_mul(f: &PrimeField, a: &Self, b: &Self) -> Self;
}

impl RingEntry for Fe {
    fn r_zero(_f: &PrimeField) -> Self {
        Fe::ZERO
    }
    fn r_add(f: &PrimeField, a: &Self, b: &Self) -> Self {
        f.add(*a, *b)
    }
    fn r_sub(f: &PrimeField, a: &Self, b: &Self) -> Self {
        f.sub(*a, *b)
    }
    fn r_mul(f: &PrimeField, a: &Self, b: &Self) -> Self {
        f.mul(*a, *b)
    }
}

impl RingEntry for UniPoly {
    fn r_zero(f: &PrimeField) -> Self {
        UniPoly::zero(*f)
    }
    fn r_add(_f: &PrimeField, a: &Self, b: &Self) -> Self {
        a.add(b).expect("entries share the matrix field")
    }
    fn r_sub(_f: &PrimeField, a: &Self, b: &Self) -> Self {
        a.sub(b).expect("entries share the matrix field")
    }
    fn r_mul(_f: &PrimeField, a: &Self, b: &Self) -> Self {
        a.mul(b).expect("entries share the matrix field")
    }
}

/// Internal dense row-major storage shared by both public matrix types.
struct Raw<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: RingEntry> Raw<T> {
    fn zero(f: &PrimeField, rows: usize, cols: usize) -> Self {
        Raw {
            rows,
            cols,
            data: vec![T::r_zero(f); rows * cols],
        }
    }

    fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    /// Copy of the block starting at (r0, c0), zero-padded to rows x cols.
    fn block(&self, f: &PrimeField, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Raw::zero(f, rows, cols);
        for i in 0..rows.min(self.rows.saturating_sub(r0)) {
            for j in 0..cols.min(self.cols.saturating_sub(c0)) {
                out.set(i, j, self.at(r0 + i, c0 + j).clone());
            }
        }
        out
    }

    fn add(&self, f: &PrimeField, rhs: &Self) -> Self {
        debug_assert!(self.rows == rhs.rows && self.cols == rhs.cols);
        Raw {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(rhs.data.iter())
                .map(|(a, b)| T::r_add(f, a, b))
                .collect(),
        }
    }

    fn sub(&self, f: &PrimeField, rhs: &Self) -> Self {
        debug_assert!(self.rows == rhs.rows && self.cols == rhs.cols);
        Raw {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(rhs.data.iter())
                .map(|(a, b)| T::r_sub(f, a, b))
                .collect(),
        }
    }
}

fn mm_naive<T: RingEntry>(f: &PrimeField, a: &Raw<T>, b: &Raw<T>) -> Raw<T> {
    debug_assert_eq!(a.cols, b.rows);
    let mut out = Raw::zero(f, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.at(i, k);
            for j in 0..b.cols {
                let t = T::r_mul(f, aik, b.at(k, j));
                let cur = T::r_add(f, out.at(i, j), &t);
                out.set(i, j, cur);
            }
        }
    }
    out
}

/// Strassen recursion. Odd dimensions are padded to even at each level
/// and the padding is stripped on return; the recursion bottoms out into
/// the cubic kernel once the smallest dimension reaches the cutoff.
fn mm_strassen<T: RingEntry>(f: &PrimeField, a: &Raw<T>, b: &Raw<T>, cutoff: usize) -> Raw<T> {
    debug_assert_eq!(a.cols, b.rows);
    let (m, k, n) = (a.rows, a.cols, b.cols);
    if m.min(k).min(n) < cutoff {
        return mm_naive(f, a, b);
    }
    let (mp, kp, np) = (m + m % 2, k + k % 2, n + n % 2);
    if (mp, kp, np) != (m, k, n) {
        let ap = a.block(f, 0, 0, mp, kp);
        let bp = b.block(f, 0, 0, kp, np);
        let cp = mm_strassen(f, &ap, &bp, cutoff);
        return cp.block(f, 0, 0, m, n);
    }

    let (hm, hk, hn) = (m / 2, k / 2, n / 2);
    let a11 = a.block(f, 0, 0, hm, hk);
    let a12 = a.block(f, 0, hk, hm, hk);
    let a21 = a.block(f, hm, 0, hm, hk);
    let a22 = a.block(f, hm, hk, hm, hk);
    let b11 = b.block(f, 0, 0, hk, hn);
    let b12 = b.block(f, 0, hn, hk, hn);
    let b21 = b.block(f, hk, 0, hk, hn);
    let b22 = b.block(f, hk, hn, hk, hn);

    let m1 = mm_strassen(f, &a11.add(f, &a22), &b11.add(f, &b22), cutoff);
    let m2 = mm_strassen(f, &a21.add(f, &a22), &b11, cutoff);
    let m3 = mm_strassen(f, &a11, &b12.sub(f, &b22), cutoff);
    let m4 = mm_strassen(f, &a22, &b21.sub(f, &b11), cutoff);
    let m5 = mm_strassen(f, &a11.add(f, &a12), &b22, cutoff);
    let m6 = mm_strassen(f, &a21.sub(f, &a11), &b11.add(f, &b12), cutoff);
    let m7 = mm_strassen(f, &a12.sub(f, &a22), &b21.add(f, &b22), cutoff);

    let c11 = m1.add(f, &m4).sub(f, &m5).add(f, &m7);
    let c12 = m3.add(f, &m5);
    let c21 = m2.add(f, &m4);
    let c22 = m1.sub(f, &m2).add(f, &m3).add(f, &m6);

    let mut out = Raw::zero(f, m, n);
    for i in 0..hm {
        for j in 0..hn {
            out.set(i, j, c11.at(i, j).clone());
            out.set(i, j + hn, c12.at(i, j).clone());
            out.set(i + hm, j, c21.at(i, j).clone());
            out.set(i + hm, j + hn, c22.at(i, j).clone());
        }
    }
    out
}

fn mm_dispatch<T: RingEntry>(
    f: &PrimeField,
    a: &Raw<T>,
    b: &Raw<T>,
    strategy: &MatMulStrategy,
) -> Raw<T> {
    let min_dim = a.rows.min(a.cols).min(b.cols);
    if strategy.use_strassen(min_dim) {
        mm_strassen(f, a, b, strategy.strassen_cutoff.max(2))
    } else {
        mm_naive(f, a, b)
    }
}

/// Dense row-major matrix with field entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<Fe>,
}

impl FieldMatrix {
    pub fn new(field: PrimeField, rows: usize, cols: usize, entries: Vec<Fe>) -> Result<Self> {
        if entries.len() != rows * cols || rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(FieldMatrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            entries: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Fe::ONE;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn at(&self, i: usize, j: usize) -> Fe {
        self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Fe] {
        &self.entries
    }

    /// Exact product; the naive and Strassen routes agree bit-exactly.
    pub fn mul(&self, rhs: &FieldMatrix, strategy: &MatMulStrategy) -> Result<FieldMatrix> {
        self.field.expect_same(&rhs.field)?;
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let a = Raw {
            rows: self.rows,
            cols: self.cols,
            data: self.entries.clone(),
        };
        let b = Raw {
            rows: rhs.rows,
            cols: rhs.cols,
            data: rhs.entries.clone(),
        };
        let c = mm_dispatch(&self.field, &a, &b, strategy);
        Ok(FieldMatrix {
            field: self.field,
            rows: c.rows,
            cols: c.cols,
            entries: c.data,
        })
    }
}

/// Dense row-major matrix with univariate polynomial entries. Every entry
/// has degree strictly below `degree_bound`.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<UniPoly>,
    degree_bound: usize,
}

impl PolyMatrix {
    /// The degree bound is taken as the tightest bound covering the given
    /// entries (at least 1).
    pub fn new(field: PrimeField, rows: usize, cols: usize, entries: Vec<UniPoly>) -> Result<Self> {
        if entries.len() != rows * cols || rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        for e in &entries {
            field.expect_same(&e.field())?;
        }
        let degree_bound = entries
            .iter()
            .filter_map(|e| e.degree())
            .max()
            .map_or(1, |d| d + 1);
        Ok(PolyMatrix {
            field,
            rows,
            cols,
            entries,
            degree_bound,
        })
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut entries = vec![UniPoly::zero(field); n * n];
        for i in 0..n {
            entries[i * n + i] = UniPoly::one(field);
        }
        PolyMatrix {
            field,
            rows: n,
            cols: n,
            entries,
            degree_bound: 1,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn at(&self, i: usize, j: usize) -> &UniPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[UniPoly] {
        &self.entries
    }

    /// Product by scalar extension: the chosen bilinear algorithm runs
    /// with entry multiplications done by polynomial multiplication. The
    /// result's degree bound is the sum of the inputs' bounds minus one.
    pub fn mul(&self, rhs: &PolyMatrix, strategy: &MatMulStrategy) -> Result<PolyMatrix> {
        self.field.expect_same(&rhs.field)?;
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let a = Raw {
            rows: self.rows,
            cols: self.cols,
            data: self.entries.clone(),
        };
        let b = Raw {
            rows: rhs.rows,
            cols: rhs.cols,
            data: rhs.entries.clone(),
        };
        let c = mm_dispatch(&self.field, &a, &b, strategy);
        Ok(PolyMatrix {
            field: self.field,
            rows: c.rows,
            cols: c.cols,
            entries: c.data,
            degree_bound: self.degree_bound + rhs.degree_bound - 1,
        })
    }
}

/// Computes `out_i = sum_j a_ij * b_j` for long vector components: each
/// b_j (of degree < n * chunk_count, n the matrix degree bound) is split
/// into chunk_count blocks of degree < n, the blocks form a matrix that
/// is multiplied by `a`, and the product rows are reassembled with
/// overlapping adds of the degree < 2n-1 block products.
pub fn mat_times_longvec(
    a: &PolyMatrix,
    b: &[UniPoly],
    chunk_count: usize,
    strategy: &MatMulStrategy,
) -> Result<Vec<UniPoly>> {
    if b.len() != a.cols() || chunk_count == 0 {
        return Err(Error::DimensionMismatch(format!(
            "vector of {} components, {} chunks, for a {}x{} matrix",
            b.len(),
            chunk_count,
            a.rows(),
            a.cols()
        )));
    }
    let field = a.field();
    let n = a.degree_bound();
    let bound = n * chunk_count;
    for bj in b {
        field.expect_same(&bj.field())?;
        if let Some(d) = bj.degree() {
            if d >= bound {
                return Err(Error::ChunkDegreeOverflow { degree: d, bound });
            }
        }
    }

    // Chunk matrix B = (b_jk), deg b_jk < n, with b_j = sum_k b_jk X^{kn}.
    let mut chunks = Vec::with_capacity(b.len() * chunk_count);
    for bj in b {
        let cs = bj.coeffs();
        for k in 0..chunk_count {
            let lo = (k * n).min(cs.len());
            let hi = ((k + 1) * n).min(cs.len());
            chunks.push(UniPoly::from_elems(field, cs[lo..hi].to_vec()));
        }
    }
    let bmat = PolyMatrix::new(field, b.len(), chunk_count, chunks)?;
    let prod = a.mul(&bmat, strategy)?;

    let mut out = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let mut acc = vec![Fe::ZERO; n * (chunk_count - 1) + prod.degree_bound()];
        for k in 0..chunk_count {
            for (t, &c) in prod.at(i, k).coeffs().iter().enumerate() {
                let idx = k * n + t;
                acc[idx] = field.add(acc[idx], c);
            }
        }
        out.push(UniPoly::from_elems(field, acc));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f7() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    fn random_field_matrix(
        f: PrimeField,
        rows: usize,
        cols: usize,
        rng: &mut impl Rng,
    ) -> FieldMatrix {
        let entries = (0..rows * cols).map(|_| f.sample(rng)).collect();
        FieldMatrix::new(f, rows, cols, entries).unwrap()
    }

    fn random_poly_matrix(
        f: PrimeField,
        rows: usize,
        cols: usize,
        max_len: usize,
        rng: &mut impl Rng,
    ) -> PolyMatrix {
        let entries = (0..rows * cols)
            .map(|_| {
                let len = rng.gen_range(0..=max_len);
                UniPoly::from_elems(f, (0..len).map(|_| f.sample(rng)).collect())
            })
            .collect();
        PolyMatrix::new(f, rows, cols, entries).unwrap()
    }

    #[test]
    fn mat_mul_examples_mod_7() {
        let f = f7();
        let m = random_field_matrix(f, 2, 2, &mut ChaCha8Rng::seed_from_u64(0));
        let id = FieldMatrix::identity(f, 2);
        assert_eq!(id.mul(&m, &MatMulStrategy::naive()).unwrap(), m);

        let a =
            FieldMatrix::new(f, 2, 2, vec![f.elem(1), f.elem(2), f.elem(3), f.elem(4)]).unwrap();
        let b =
            FieldMatrix::new(f, 2, 2, vec![f.elem(5), f.elem(6), f.elem(0), f.elem(1)]).unwrap();
        let c = a.mul(&b, &MatMulStrategy::naive()).unwrap();
        assert_eq!(c.entries(), &[f.elem(5), f.elem(1), f.elem(1), f.elem(1)]);
    }

    #[test]
    fn strassen_matches_naive_64x64() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = PrimeField::new(65537).unwrap();
        let a = random_field_matrix(f, 64, 64, &mut rng);
        let b = random_field_matrix(f, 64, 64, &mut rng);
        let naive = a.mul(&b, &MatMulStrategy::naive()).unwrap();
        let strassen = a.mul(&b, &MatMulStrategy::strassen(8)).unwrap();
        assert_eq!(naive, strassen);
    }

    #[test]
    fn strassen_matches_naive_odd_and_rectangular() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = PrimeField::new(101).unwrap();
        for &(m, k, n) in &[
            (1usize, 1usize, 1usize),
            (1, 5, 3),
            (3, 3, 3),
            (5, 7, 9),
            (17, 4, 31),
            (33, 65, 2),
            (65, 65, 65),
            (64, 1, 64),
        ] {
            let a = random_field_matrix(f, m, k, &mut rng);
            let b = random_field_matrix(f, k, n, &mut rng);
            let naive = a.mul(&b, &MatMulStrategy::naive()).unwrap();
            let strassen = a.mul(&b, &MatMulStrategy::strassen(2)).unwrap();
            assert_eq!(naive, strassen, "shape {m}x{k}x{n}");
            let auto = a.mul(&b, &MatMulStrategy::auto_field()).unwrap();
            assert_eq!(naive, auto);
        }
    }

    #[test]
    fn mat_mul_dimension_mismatch() {
        let f = f7();
        let a = FieldMatrix::zero(f, 2, 3);
        let b = FieldMatrix::zero(f, 2, 2);
        assert!(matches!(
            a.mul(&b, &MatMulStrategy::naive()),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn mat_mul_associativity_spot_check() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = PrimeField::new(101).unwrap();
        let s = MatMulStrategy::auto_field();
        let a = random_field_matrix(f, 8, 8, &mut rng);
        let b = random_field_matrix(f, 8, 8, &mut rng);
        let c = random_field_matrix(f, 8, 8, &mut rng);
        let left = a.mul(&b, &s).unwrap().mul(&c, &s).unwrap();
        let right = a.mul(&b.mul(&c, &s).unwrap(), &s).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn polymat_mul_examples() {
        let f = f7();
        // [X+1] * [X-1] = [X^2 - 1] = [X^2 + 6]
        let a = PolyMatrix::new(f, 1, 1, vec![UniPoly::from_u64(f, &[1, 1])]).unwrap();
        let b = PolyMatrix::new(f, 1, 1, vec![UniPoly::from_u64(f, &[6, 1])]).unwrap();
        let c = a.mul(&b, &MatMulStrategy::naive()).unwrap();
        assert_eq!(c.at(0, 0), &UniPoly::from_u64(f, &[6, 0, 1]));

        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let m = random_poly_matrix(f, 3, 3, 5, &mut rng);
        let id = PolyMatrix::identity(f, 3);
        assert_eq!(
            m.mul(&id, &MatMulStrategy::naive()).unwrap().entries(),
            m.entries()
        );
    }

    #[test]
    fn polymat_strassen_matches_entrywise_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = PrimeField::new(65537).unwrap();
        let a = random_poly_matrix(f, 4, 4, 8, &mut rng);
        let b = random_poly_matrix(f, 4, 4, 8, &mut rng);
        let strassen = a.mul(&b, &MatMulStrategy::strassen(2)).unwrap();

        for i in 0..4 {
            for j in 0..4 {
                let mut acc = UniPoly::zero(f);
                for k in 0..4 {
                    acc = acc.add(&a.at(i, k).mul(b.at(k, j)).unwrap()).unwrap();
                }
                assert_eq!(strassen.at(i, j), &acc);
                // Entry degrees stay below the sum of the input bounds.
                assert!(strassen
                    .at(i, j)
                    .degree()
                    .is_none_or(|d| d < strassen.degree_bound()));
            }
        }
    }

    #[test]
    fn mat_times_longvec_examples() {
        let f = f7();
        // [[2]] * [X^2 + 1] with 3 chunks of width 1: [2X^2 + 2].
        let a = PolyMatrix::new(f, 1, 1, vec![UniPoly::constant(f, f.elem(2))]).unwrap();
        let b = vec![UniPoly::from_u64(f, &[1, 0, 1])];
        let out = mat_times_longvec(&a, &b, 3, &MatMulStrategy::naive()).unwrap();
        assert_eq!(out, vec![UniPoly::from_u64(f, &[2, 0, 2])]);

        // Identity matrix passes the vector through.
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let id = PolyMatrix::identity(f, 3);
        let vs: Vec<UniPoly> = (0..3)
            .map(|_| UniPoly::from_elems(f, (0..4).map(|_| f.sample(&mut rng)).collect()))
            .collect();
        let out = mat_times_longvec(&id, &vs, 4, &MatMulStrategy::naive()).unwrap();
        assert_eq!(out, vs);
    }

    #[test]
    fn mat_times_longvec_matches_direct_dot_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = PrimeField::new(65537).unwrap();
        let m = 3usize;
        let n = 4usize;
        let c = 9usize;
        let a = random_poly_matrix(f, m, m, n, &mut rng);
        let b: Vec<UniPoly> = (0..m)
            .map(|_| {
                let len = rng.gen_range(1..=a.degree_bound() * c);
                UniPoly::from_elems(f, (0..len).map(|_| f.sample(&mut rng)).collect())
            })
            .collect();
        for strategy in [MatMulStrategy::naive(), MatMulStrategy::strassen(2)] {
            let fast = mat_times_longvec(&a, &b, c, &strategy).unwrap();
            for i in 0..m {
                let mut acc = UniPoly::zero(f);
                for j in 0..m {
                    acc = acc.add(&a.at(i, j).mul(&b[j]).unwrap()).unwrap();
                }
                assert_eq!(fast[i], acc);
            }
        }
    }

    #[test]
    fn mat_times_longvec_rejects_overflow() {
        let f = f7();
        let a = PolyMatrix::new(f, 1, 1, vec![UniPoly::from_u64(f, &[1, 1])]).unwrap();
        // degree bound 2, 2 chunks: components must have degree < 4.
        let too_big = vec![UniPoly::monomial(f, Fe::ONE, 4)];
        assert_eq!(
            mat_times_longvec(&a, &too_big, 2, &MatMulStrategy::naive()),
            Err(Error::ChunkDegreeOverflow {
                degree: 4,
                bound: 4
            })
        );
    }
}
