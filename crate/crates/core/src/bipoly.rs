//! Dense bivariate polynomials and the multipoint evaluators built on
//! them: the naive nested-Horner baseline, grid-block evaluation, and the
//! fast interpolate/compose/multi-evaluate pipeline with shear
//! preprocessing for point sets whose x-coordinates collide.

use std::collections::{HashMap, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Fe, PrimeField};
use crate::linalg::{mat_times_longvec, MatMulStrategy, PolyMatrix};
use crate::unipoly::{PolyModulus, SubproductTree, UniPoly};

/// Skew-shift recursion bottoms out at this X-extent.
const SKEW_BASE_LEN: usize = 2;

/// A dense bivariate polynomial with deg_X < `x_bound` and deg_Y <
/// `y_bound`; `coeff(i, j)` is the coefficient of X^i Y^j. The bounds are
/// structural (zero padding is allowed), never below 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiPoly {
    field: PrimeField,
    x_bound: usize,
    y_bound: usize,
    coeffs: Vec<Fe>,
}

impl BiPoly {
    /// Row-major coefficients: `coeffs[i * y_bound + j]` is the
    /// coefficient of X^i Y^j.
    pub fn new(field: PrimeField, x_bound: usize, y_bound: usize, coeffs: Vec<Fe>) -> Result<Self> {
        if x_bound == 0 || y_bound == 0 || coeffs.len() != x_bound * y_bound {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a {x_bound}x{y_bound} polynomial",
                coeffs.len()
            )));
        }
        Ok(BiPoly {
            field,
            x_bound,
            y_bound,
            coeffs,
        })
    }

    pub fn zero(field: PrimeField, x_bound: usize, y_bound: usize) -> Self {
        assert!(x_bound >= 1 && y_bound >= 1);
        BiPoly {
            field,
            x_bound,
            y_bound,
            coeffs: vec![Fe::ZERO; x_bound * y_bound],
        }
    }

    pub fn constant(field: PrimeField, c: Fe) -> Self {
        BiPoly {
            field,
            x_bound: 1,
            y_bound: 1,
            coeffs: vec![c],
        }
    }

    pub fn from_u64(
        field: PrimeField,
        x_bound: usize,
        y_bound: usize,
        coeffs: &[u64],
    ) -> Result<Self> {
        Self::new(
            field,
            x_bound,
            y_bound,
            coeffs.iter().map(|&c| field.elem(c)).collect(),
        )
    }

    pub fn random<R: rand::Rng + ?Sized>(
        field: PrimeField,
        x_bound: usize,
        y_bound: usize,
        rng: &mut R,
    ) -> Self {
        assert!(x_bound >= 1 && y_bound >= 1);
        BiPoly {
            field,
            x_bound,
            y_bound,
            coeffs: (0..x_bound * y_bound).map(|_| field.sample(rng)).collect(),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn x_bound(&self) -> usize {
        self.x_bound
    }

    pub fn y_bound(&self) -> usize {
        self.y_bound
    }

    pub fn coeff(&self, i: usize, j: usize) -> Fe {
        if i < self.x_bound && j < self.y_bound {
            self.coeffs[i * self.y_bound + j]
        } else {
            Fe::ZERO
        }
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn row(&self, i: usize) -> &[Fe] {
        &self.coeffs[i * self.y_bound..(i + 1) * self.y_bound]
    }

    /// The coefficient of Y^j as a univariate polynomial in X.
    pub fn column(&self, j: usize) -> UniPoly {
        if j >= self.y_bound {
            return UniPoly::zero(self.field);
        }
        let coeffs = (0..self.x_bound).map(|i| self.coeff(i, j)).collect();
        UniPoly::from_elems(self.field, coeffs)
    }

    /// Columns [j0, j0 + width) as a BiPoly of Y-extent exactly `width`,
    /// zero-padded past the source bounds.
    pub fn slab(&self, j0: usize, width: usize) -> BiPoly {
        assert!(width >= 1);
        let mut coeffs = vec![Fe::ZERO; self.x_bound * width];
        for i in 0..self.x_bound {
            for j in 0..width {
                coeffs[i * width + j] = self.coeff(i, j0 + j);
            }
        }
        BiPoly {
            field: self.field,
            x_bound: self.x_bound,
            y_bound: width,
            coeffs,
        }
    }

    /// Single-point evaluation by nested Horner.
    pub fn eval(&self, x: Fe, y: Fe) -> Fe {
        let f = &self.field;
        let mut acc = Fe::ZERO;
        for i in (0..self.x_bound).rev() {
            let mut row_val = Fe::ZERO;
            for &c in self.row(i).iter().rev() {
                row_val = f.add(f.mul(row_val, y), c);
            }
            acc = f.add(f.mul(acc, x), row_val);
        }
        acc
    }

    pub fn add(&self, rhs: &BiPoly) -> Result<BiPoly> {
        self.field.expect_same(&rhs.field)?;
        let nx = self.x_bound.max(rhs.x_bound);
        let ny = self.y_bound.max(rhs.y_bound);
        let f = &self.field;
        let mut coeffs = vec![Fe::ZERO; nx * ny];
        for i in 0..nx {
            for j in 0..ny {
                coeffs[i * ny + j] = f.add(self.coeff(i, j), rhs.coeff(i, j));
            }
        }
        Ok(BiPoly {
            field: self.field,
            x_bound: nx,
            y_bound: ny,
            coeffs,
        })
    }

    /// Shrinks the structural bounds to the tight degrees (at least 1x1).
    pub fn trimmed(&self) -> BiPoly {
        let mut nx = 1;
        let mut ny = 1;
        for i in 0..self.x_bound {
            for j in 0..self.y_bound {
                if !self.coeff(i, j).is_zero() {
                    nx = nx.max(i + 1);
                    ny = ny.max(j + 1);
                }
            }
        }
        let mut coeffs = vec![Fe::ZERO; nx * ny];
        for i in 0..nx {
            for j in 0..ny {
                coeffs[i * ny + j] = self.coeff(i, j);
            }
        }
        BiPoly {
            field: self.field,
            x_bound: nx,
            y_bound: ny,
            coeffs,
        }
    }
}

/// Whether the point set is known to have pairwise distinct first
/// coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DistinctX {
    Verified,
    Violated,
    Unchecked,
}

/// A sequence of planar points (x_k, y_k) over one field.
#[derive(Clone, Debug)]
pub struct PointSet {
    field: PrimeField,
    points: Vec<(Fe, Fe)>,
    distinct_x: DistinctX,
}

impl PointSet {
    pub fn new(field: PrimeField, points: Vec<(Fe, Fe)>) -> Self {
        PointSet {
            field,
            points,
            distinct_x: DistinctX::Unchecked,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn points(&self) -> &[(Fe, Fe)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn xs(&self) -> Vec<Fe> {
        self.points.iter().map(|&(x, _)| x).collect()
    }

    pub fn ys(&self) -> Vec<Fe> {
        self.points.iter().map(|&(_, y)| y).collect()
    }

    pub fn distinct_x(&self) -> DistinctX {
        self.distinct_x
    }

    /// Checks the x-coordinates for pairwise distinctness and records the
    /// outcome.
    pub fn verify_distinct_x(&mut self) -> bool {
        let ok = all_distinct(&self.xs());
        self.distinct_x = if ok {
            DistinctX::Verified
        } else {
            DistinctX::Violated
        };
        ok
    }
}

fn all_distinct(values: &[Fe]) -> bool {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).all(|w| w[0] != w[1])
}

/// The coordinate change (x, y) -> (x + theta * y, y). Recorded so results
/// can be mapped back to the original points by index.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ShearTransform {
    theta: Fe,
}

impl ShearTransform {
    pub fn new(theta: Fe) -> Self {
        ShearTransform { theta }
    }

    pub fn theta(&self) -> Fe {
        self.theta
    }

    pub fn apply(&self, pts: &PointSet) -> PointSet {
        let f = pts.field();
        let points = pts
            .points()
            .iter()
            .map(|&(x, y)| (f.add(x, f.mul(self.theta, y)), y))
            .collect();
        PointSet::new(f, points)
    }
}

/// Ground-truth evaluator: `out[k] = p(x_k, y_k)` by nested Horner,
/// sequentially per point.
pub fn naive_multieval(p: &BiPoly, pts: &PointSet) -> Result<Vec<Fe>> {
    p.field().expect_same(&pts.field())?;
    Ok(pts.points().iter().map(|&(x, y)| p.eval(x, y)).collect())
}

/// Exact product via the Kronecker substitution Y = X^(2n'-1) (n' the
/// larger X-bound): pack both factors into univariate polynomials, do one
/// univariate multiplication, and unpack.
pub fn kronecker_mul(a: &BiPoly, b: &BiPoly) -> Result<BiPoly> {
    a.field().expect_same(&b.field())?;
    let f = a.field();
    let stride = 2 * a.x_bound.max(b.x_bound) - 1;

    let pack = |p: &BiPoly| -> UniPoly {
        let mut coeffs = vec![Fe::ZERO; (p.y_bound - 1) * stride + p.x_bound];
        for i in 0..p.x_bound {
            for j in 0..p.y_bound {
                coeffs[i + j * stride] = p.coeff(i, j);
            }
        }
        UniPoly::from_elems(f, coeffs)
    };

    let prod = pack(a).mul(&pack(b))?;
    let nx = a.x_bound + b.x_bound - 1;
    let ny = a.y_bound + b.y_bound - 1;
    // Product X-degrees stay below nx <= stride, so slots never collide.
    let mut coeffs = vec![Fe::ZERO; nx * ny];
    for i in 0..nx {
        for j in 0..ny {
            coeffs[i * ny + j] = prod.coeff(i + j * stride);
        }
    }
    BiPoly::new(f, nx, ny, coeffs)
}

// ---------------------------------------------------------------------
// Affine substitution, built from primitive steps: axis scalings, Taylor
// shifts by constants, skew shifts X <- X + aY over S = K[Y], and the
// coefficient transpose for X <-> Y.
// ---------------------------------------------------------------------

fn scale_x(p: &BiPoly, alpha: Fe) -> BiPoly {
    let f = p.field();
    let mut coeffs = p.coeffs().to_vec();
    let mut power = Fe::ONE;
    for i in 0..p.x_bound() {
        for j in 0..p.y_bound() {
            let idx = i * p.y_bound() + j;
            coeffs[idx] = f.mul(coeffs[idx], power);
        }
        power = f.mul(power, alpha);
    }
    BiPoly {
        field: f,
        x_bound: p.x_bound(),
        y_bound: p.y_bound(),
        coeffs,
    }
}

fn scale_y(p: &BiPoly, beta: Fe) -> BiPoly {
    swap_xy(&scale_x(&swap_xy(p), beta))
}

fn swap_xy(p: &BiPoly) -> BiPoly {
    let (nx, ny) = (p.y_bound(), p.x_bound());
    let mut coeffs = vec![Fe::ZERO; nx * ny];
    for i in 0..nx {
        for j in 0..ny {
            coeffs[i * ny + j] = p.coeff(j, i);
        }
    }
    BiPoly {
        field: p.field(),
        x_bound: nx,
        y_bound: ny,
        coeffs,
    }
}

/// p(X + c, Y): a Taylor shift of every Y-coefficient column.
fn shift_x(p: &BiPoly, c: Fe) -> BiPoly {
    if c.is_zero() {
        return p.clone();
    }
    let (nx, ny) = (p.x_bound(), p.y_bound());
    let mut coeffs = vec![Fe::ZERO; nx * ny];
    for j in 0..ny {
        let shifted = p.column(j).taylor_shift(c);
        for (i, &v) in shifted.coeffs().iter().enumerate() {
            coeffs[i * ny + j] = v;
        }
    }
    BiPoly {
        field: p.field(),
        x_bound: nx,
        y_bound: ny,
        coeffs,
    }
}

fn shift_y(p: &BiPoly, c: Fe) -> BiPoly {
    swap_xy(&shift_x(&swap_xy(p), c))
}

/// (X + aY) * q, expanded directly.
fn mul_linear_skew(q: &BiPoly, a: Fe) -> BiPoly {
    let f = q.field();
    let (nx, ny) = (q.x_bound() + 1, q.y_bound() + 1);
    let mut coeffs = vec![Fe::ZERO; nx * ny];
    for i in 0..q.x_bound() {
        for j in 0..q.y_bound() {
            let c = q.coeff(i, j);
            if c.is_zero() {
                continue;
            }
            let xi = (i + 1) * ny + j;
            coeffs[xi] = f.add(coeffs[xi], c);
            let yi = i * ny + (j + 1);
            coeffs[yi] = f.add(coeffs[yi], f.mul(a, c));
        }
    }
    BiPoly {
        field: f,
        x_bound: nx,
        y_bound: ny,
        coeffs,
    }
}

fn sub_rows(p: &BiPoly, lo: usize, hi: usize) -> BiPoly {
    BiPoly {
        field: p.field(),
        x_bound: hi - lo,
        y_bound: p.y_bound(),
        coeffs: p.coeffs()[lo * p.y_bound()..hi * p.y_bound()].to_vec(),
    }
}

fn floor_pow2(n: usize) -> usize {
    debug_assert!(n >= 1);
    1usize << (usize::BITS - 1 - n.leading_zeros())
}

/// p(X + aY, Y): the Taylor shift over S = K[Y] with shift element aY.
/// Splits p(X) = p0(X) + X^h p1(X) against precomputed powers
/// (X + aY)^(2^i), whose products are Kronecker multiplications.
fn skew_x(p: &BiPoly, a: Fe) -> BiPoly {
    if a.is_zero() || p.x_bound() == 1 {
        return p.clone();
    }
    let mut ladder = vec![mul_linear_skew(&BiPoly::constant(p.field(), Fe::ONE), a)];
    while (1usize << ladder.len()) <= floor_pow2(p.x_bound() - 1) {
        let last = ladder.last().unwrap();
        ladder.push(kronecker_mul(last, last).expect("same field"));
    }
    skew_x_rec(p, a, &ladder)
}

fn skew_x_rec(p: &BiPoly, a: Fe, ladder: &[BiPoly]) -> BiPoly {
    let n = p.x_bound();
    if n <= SKEW_BASE_LEN {
        // Horner over the rows in the shifted variable.
        let mut acc = BiPoly::constant(p.field(), Fe::ZERO);
        for i in (0..n).rev() {
            let row = BiPoly {
                field: p.field(),
                x_bound: 1,
                y_bound: p.y_bound(),
                coeffs: p.row(i).to_vec(),
            };
            acc = mul_linear_skew(&acc, a).add(&row).expect("same field");
        }
        return acc;
    }
    let h = floor_pow2(n - 1);
    let lo = skew_x_rec(&sub_rows(p, 0, h), a, ladder);
    let hi = skew_x_rec(&sub_rows(p, h, n), a, ladder);
    let w = &ladder[h.trailing_zeros() as usize];
    kronecker_mul(w, &hi)
        .expect("same field")
        .add(&lo)
        .expect("same field")
}

fn skew_y(p: &BiPoly, a: Fe) -> BiPoly {
    swap_xy(&skew_x(&swap_xy(p), a))
}

/// Coefficients of p(a11 X + a12 Y + b1, a21 X + a22 Y + b2).
///
/// Invertible transforms factor into translations, one triangular skew on
/// each side and axis scalings; the factors are applied outermost first.
/// Singular transforms collapse onto a single linear form and are handled
/// by a univariate composition followed by a binomial re-expansion.
pub fn affine_substitute(p: &BiPoly, a11: Fe, a12: Fe, a21: Fe, a22: Fe, b1: Fe, b2: Fe) -> BiPoly {
    let f = p.field();
    let det = f.sub(f.mul(a11, a22), f.mul(a12, a21));

    if !det.is_zero() {
        let mut q = p.clone();
        if !b1.is_zero() {
            q = shift_x(&q, b1);
        }
        if !b2.is_zero() {
            q = shift_y(&q, b2);
        }
        // LDU factors of the linear part (column-swapped first when the
        // top-left entry vanishes).
        let (m11, m12, m21, m22, swapped) = if !a11.is_zero() {
            (a11, a12, a21, a22, false)
        } else {
            (a12, a11, a22, a21, true)
        };
        let inv = f.inv(m11).expect("pivot nonzero");
        let gamma = f.mul(m21, inv);
        let delta = f.mul(f.sub(f.mul(m11, m22), f.mul(m12, m21)), inv);
        let mu = f.mul(m12, inv);
        if !gamma.is_zero() {
            q = skew_y(&q, gamma);
        }
        if m11 != Fe::ONE {
            q = scale_x(&q, m11);
        }
        if delta != Fe::ONE {
            q = scale_y(&q, delta);
        }
        if !mu.is_zero() {
            q = skew_x(&q, mu);
        }
        if swapped {
            q = swap_xy(&q);
        }
        return q.trimmed();
    }

    if a11.is_zero() && a12.is_zero() && a21.is_zero() && a22.is_zero() {
        return BiPoly::constant(f, p.eval(b1, b2));
    }

    // Rank one: both target coordinates are affine in one linear form
    // L = u X + v Y. Compose univariately, then re-expand L.
    let (u, v, c1, c2) = if !a11.is_zero() || !a12.is_zero() {
        let lambda = if !a11.is_zero() {
            f.mul(a21, f.inv(a11).expect("nonzero"))
        } else {
            f.mul(a22, f.inv(a12).expect("nonzero"))
        };
        (a11, a12, Fe::ONE, lambda)
    } else {
        (a21, a22, Fe::ZERO, Fe::ONE)
    };
    let r = compose_affine_univariate(p, c1, b1, c2, b2);
    substitute_linear_form(&r, u, v).trimmed()
}

/// The univariate polynomial r(T) = p(c1 T + d1, c2 T + d2).
fn compose_affine_univariate(p: &BiPoly, c1: Fe, d1: Fe, c2: Fe, d2: Fe) -> UniPoly {
    let f = p.field();
    let u = UniPoly::from_elems(f, vec![d1, c1]);
    let w = UniPoly::from_elems(f, vec![d2, c2]);
    let mut acc = UniPoly::zero(f);
    for i in (0..p.x_bound()).rev() {
        let mut row_val = UniPoly::zero(f);
        for j in (0..p.y_bound()).rev() {
            row_val = row_val
                .mul(&w)
                .expect("same field")
                .add(&UniPoly::constant(f, p.coeff(i, j)))
                .expect("same field");
        }
        acc = acc
            .mul(&u)
            .expect("same field")
            .add(&row_val)
            .expect("same field");
    }
    acc
}

/// q(X, Y) = r(u X + v Y), expanding powers of the linear form row by row.
fn substitute_linear_form(r: &UniPoly, u: Fe, v: Fe) -> BiPoly {
    let f = r.field();
    let deg = match r.degree() {
        Some(d) => d,
        None => return BiPoly::constant(f, Fe::ZERO),
    };
    let bound = deg + 1;
    let mut coeffs = vec![Fe::ZERO; bound * bound];
    // pow[t] holds the coefficient of X^t Y^(k-t) in (uX + vY)^k.
    let mut pow = vec![Fe::ONE];
    for k in 0..=deg {
        let rk = r.coeff(k);
        if !rk.is_zero() {
            for (t, &c) in pow.iter().enumerate() {
                let idx = t * bound + (k - t);
                coeffs[idx] = f.add(coeffs[idx], f.mul(rk, c));
            }
        }
        let mut next = vec![Fe::ZERO; k + 2];
        for (t, &c) in pow.iter().enumerate() {
            next[t + 1] = f.add(next[t + 1], f.mul(u, c));
            next[t] = f.add(next[t], f.mul(v, c));
        }
        pow = next;
    }
    BiPoly {
        field: f,
        x_bound: bound,
        y_bound: bound,
        coeffs,
    }
}

/// Evaluates p on the full Cartesian grid xs x ys with two rounds of
/// univariate multipoint evaluation: `out[k][l] = p(xs[k], ys[l])`.
pub fn grid_multieval(p: &BiPoly, xs: &[Fe], ys: &[Fe]) -> Result<Vec<Vec<Fe>>> {
    if !all_distinct(xs) || !all_distinct(ys) {
        return Err(Error::DuplicateNodes);
    }
    if xs.is_empty() || ys.is_empty() {
        return Ok(vec![Vec::new(); xs.len()]);
    }
    let f = p.field();
    let tree_x = SubproductTree::build(f, xs);
    // Round one: each Y-coefficient q_j at all xs.
    let col_vals: Vec<Vec<Fe>> = (0..p.y_bound())
        .map(|j| tree_x.evaluate(&p.column(j)))
        .collect();
    // Round two: the univariate p(x_k, Y) at all ys.
    let tree_y = SubproductTree::build(f, ys);
    let mut out = Vec::with_capacity(xs.len());
    for k in 0..xs.len() {
        let rk = UniPoly::from_elems(f, col_vals.iter().map(|cv| cv[k]).collect());
        out.push(tree_y.evaluate(&rk));
    }
    Ok(out)
}

/// Baseline for arbitrary point sets: partitions the points into blocks
/// of at most max(x_bound, y_bound), extends each block to the Cartesian
/// grid of its (deduplicated) coordinates, grid-evaluates, and selects
/// each point's value.
pub fn multieval_grid_blocks(p: &BiPoly, pts: &PointSet) -> Result<Vec<Fe>> {
    p.field().expect_same(&pts.field())?;
    let block = p.x_bound().max(p.y_bound());
    let mut out = Vec::with_capacity(pts.len());
    for chunk in pts.points().chunks(block.max(1)) {
        let mut xs: Vec<Fe> = Vec::new();
        let mut ys: Vec<Fe> = Vec::new();
        let mut xi: HashMap<u64, usize> = HashMap::new();
        let mut yi: HashMap<u64, usize> = HashMap::new();
        for &(x, y) in chunk {
            xi.entry(x.value()).or_insert_with(|| {
                xs.push(x);
                xs.len() - 1
            });
            yi.entry(y.value()).or_insert_with(|| {
                ys.push(y);
                ys.len() - 1
            });
        }
        let grid = grid_multieval(p, &xs, &ys).expect("deduplicated nodes");
        for &(x, y) in chunk {
            out.push(grid[xi[&x.value()]][yi[&y.value()]]);
        }
    }
    Ok(out)
}

/// Batch modular composition: `out[i] = ps[i](X, g(X)) rem f`.
///
/// The Y-coefficient rows of the inputs form a matrix A = (q_ij); the
/// required powers of g are computed once by iterated multiply-reduce and
/// fed through the chunked matrix-vector product, and every row is
/// reduced modulo f again at the end.
pub fn batch_modular_compose(
    ps: &[BiPoly],
    g: &UniPoly,
    f: &UniPoly,
    strategy: &MatMulStrategy,
) -> Result<Vec<UniPoly>> {
    if ps.is_empty() {
        return Ok(Vec::new());
    }
    let field = ps[0].field();
    field.expect_same(&g.field())?;
    field.expect_same(&f.field())?;
    for p in ps {
        field.expect_same(&p.field())?;
    }
    let md = PolyModulus::new(f)?;
    if md.degree() == 0 {
        return Ok(vec![UniPoly::zero(field); ps.len()]);
    }
    let g = md.reduce(g);
    let width = ps.iter().map(|p| p.y_bound()).max().unwrap();

    let powers = g.powers_mod(width, f)?;
    let entries: Vec<UniPoly> = ps
        .iter()
        .flat_map(|p| (0..width).map(|j| p.column(j)))
        .collect();
    let a = PolyMatrix::new(field, ps.len(), width, entries)?;
    let chunk_count = md.degree().div_ceil(a.degree_bound());
    let tilde = mat_times_longvec(&a, &powers, chunk_count, strategy)?;
    Ok(tilde.iter().map(|t| md.reduce(t)).collect())
}

fn ceil_sqrt(m: usize) -> usize {
    let mut r = (m as f64).sqrt() as usize;
    while r * r < m {
        r += 1;
    }
    while r > 1 && (r - 1) * (r - 1) >= m {
        r -= 1;
    }
    r
}

/// p(X, g(X)) rem f by baby steps and giant steps: p splits into
/// ceil(m/b) slabs of Y-extent b = ceil(sqrt(m)); the slabs go through
/// one batch composition, and the results recombine against the iterated
/// powers of g^b rem f.
pub fn modular_compose_with(
    p: &BiPoly,
    g: &UniPoly,
    f: &UniPoly,
    strategy: &MatMulStrategy,
) -> Result<UniPoly> {
    let field = p.field();
    field.expect_same(&g.field())?;
    field.expect_same(&f.field())?;
    let md = PolyModulus::new(f)?;
    if md.degree() == 0 {
        return Ok(UniPoly::zero(field));
    }
    let g = md.reduce(g);

    let m = p.y_bound();
    let baby = ceil_sqrt(m);
    let slab_count = m.div_ceil(baby);
    let slabs: Vec<BiPoly> = (0..slab_count).map(|i| p.slab(i * baby, baby)).collect();
    let tilde = batch_modular_compose(&slabs, &g, f, strategy)?;

    let giant = g.pow_mod(baby as u64, f)?;
    let mut acc = UniPoly::zero(field);
    let mut giant_pow = UniPoly::one(field);
    for (i, t) in tilde.iter().enumerate() {
        acc = acc.add(&t.mul(&giant_pow)?)?;
        if i + 1 < slab_count {
            giant_pow = md.reduce(&giant_pow.mul(&giant)?);
        }
    }
    Ok(md.reduce(&acc))
}

/// [`modular_compose_with`] under the default strategy (auto with the
/// polynomial-matrix cutoff).
pub fn modular_compose(p: &BiPoly, g: &UniPoly, f: &UniPoly) -> Result<UniPoly> {
    modular_compose_with(p, g, f, &MatMulStrategy::auto_poly())
}

/// Fast multipoint evaluation for points with pairwise distinct
/// x-coordinates: build f(X) = prod (X - x_k) as a subproduct tree,
/// interpolate g through the points, reduce p(X, g(X)) mod f, and
/// multi-evaluate the univariate remainder back down the tree.
pub fn multieval_generic_with(
    p: &BiPoly,
    pts: &PointSet,
    strategy: &MatMulStrategy,
) -> Result<Vec<Fe>> {
    p.field().expect_same(&pts.field())?;
    if pts.is_empty() {
        return Ok(Vec::new());
    }
    let xs = pts.xs();
    match pts.distinct_x() {
        DistinctX::Violated => return Err(Error::DistinctnessViolated),
        DistinctX::Verified => {}
        DistinctX::Unchecked => {
            if !all_distinct(&xs) {
                return Err(Error::DistinctnessViolated);
            }
        }
    }
    let field = p.field();
    let tree = SubproductTree::build(field, &xs);
    let g = tree.interpolate(&pts.ys())?;
    let reduced = modular_compose_with(p, &g, tree.root(), strategy)?;
    Ok(tree.evaluate(&reduced))
}

pub fn multieval_generic(p: &BiPoly, pts: &PointSet) -> Result<Vec<Fe>> {
    multieval_generic_with(p, pts, &MatMulStrategy::auto_poly())
}

/// Attempt budget for the shear search: max(32, 2 ceil(log2 N)).
pub fn default_shear_attempts(n: usize) -> usize {
    let log = n.max(2).next_power_of_two().trailing_zeros() as usize;
    (2 * log).max(32)
}

/// Moduli up to this bound get an exhaustive theta scan after the random
/// budget runs out; below the #K >= N^2 hypothesis the 1/2 success bound
/// does not hold, so random search alone can miss an existing theta.
const SHEAR_EXHAUSTIVE_SCAN_MAX_MODULUS: u64 = 1 << 20;

/// Finds theta with all x_k + theta y_k pairwise distinct. Theta = 0 is
/// tried first so already-generic inputs keep the identity shear; the
/// remaining attempts draw uniformly at random, and small fields fall
/// back to a deterministic scan of every theta. Exact duplicate points
/// make the condition unsatisfiable and are rejected up front.
pub fn find_shear_theta(
    pts: &PointSet,
    rng_seed: u64,
    max_attempts: usize,
) -> Result<ShearTransform> {
    let f = pts.field();
    let n = pts.len();
    let mut seen: HashSet<(u64, u64)> = HashSet::with_capacity(n);
    for &(x, y) in pts.points() {
        if !seen.insert((x.value(), y.value())) {
            return Err(Error::DuplicatePoints);
        }
    }
    if n <= 1 {
        return Ok(ShearTransform::new(Fe::ZERO));
    }
    if (f.modulus() as u128) < (n as u128) * (n as u128) {
        log::warn!(
            "field size {} is below N^2 = {}; the 1/2 success bound for a random shear no longer holds",
            f.modulus(),
            n * n
        );
    }

    let images_distinct = |theta: Fe| {
        let images: Vec<Fe> = pts
            .points()
            .iter()
            .map(|&(x, y)| f.add(x, f.mul(theta, y)))
            .collect();
        all_distinct(&images)
    };

    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    for attempt in 0..max_attempts {
        let theta = if attempt == 0 {
            Fe::ZERO
        } else {
            f.sample(&mut rng)
        };
        if images_distinct(theta) {
            return Ok(ShearTransform::new(theta));
        }
    }
    if f.modulus() <= SHEAR_EXHAUSTIVE_SCAN_MAX_MODULUS {
        for t in 0..f.modulus() {
            let theta = f.elem(t);
            if images_distinct(theta) {
                return Ok(ShearTransform::new(theta));
            }
        }
    }
    Err(Error::ShearSearchExhausted {
        attempts: max_attempts,
    })
}

/// Evaluates p at arbitrary points: exact duplicates are served from one
/// evaluation through an index map, a shear makes the remaining points
/// x-distinct, the substitution X <- X - theta Y moves the shear onto the
/// polynomial, and the generic pipeline runs on the sheared instance.
pub fn multieval_any_with(
    p: &BiPoly,
    pts: &PointSet,
    rng_seed: u64,
    strategy: &MatMulStrategy,
) -> Result<Vec<Fe>> {
    p.field().expect_same(&pts.field())?;
    if pts.is_empty() {
        return Ok(Vec::new());
    }
    let field = p.field();

    let mut unique: Vec<(Fe, Fe)> = Vec::new();
    let mut index_of: HashMap<(u64, u64), usize> = HashMap::new();
    let mut back: Vec<usize> = Vec::with_capacity(pts.len());
    for &(x, y) in pts.points() {
        let key = (x.value(), y.value());
        let idx = *index_of.entry(key).or_insert_with(|| {
            unique.push((x, y));
            unique.len() - 1
        });
        back.push(idx);
    }

    let unique_pts = PointSet::new(field, unique);
    let shear = find_shear_theta(
        &unique_pts,
        rng_seed,
        default_shear_attempts(unique_pts.len()),
    )?;

    let values = if shear.theta().is_zero() {
        multieval_generic_with(p, &unique_pts, strategy)?
    } else {
        let transformed = affine_substitute(
            p,
            Fe::ONE,
            field.neg(shear.theta()),
            Fe::ZERO,
            Fe::ONE,
            Fe::ZERO,
            Fe::ZERO,
        );
        let sheared_pts = shear.apply(&unique_pts);
        multieval_generic_with(&transformed, &sheared_pts, strategy)?
    };

    Ok(back.into_iter().map(|idx| values[idx]).collect())
}

pub fn multieval_any(p: &BiPoly, pts: &PointSet, rng_seed: u64) -> Result<Vec<Fe>> {
    multieval_any_with(p, pts, rng_seed, &MatMulStrategy::auto_poly())
}
