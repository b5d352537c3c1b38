//! Dense univariate polynomial arithmetic: multiplication (schoolbook,
//! Karatsuba, NTT), division with remainder via Newton inversion of the
//! reversed divisor, subproduct-tree multipoint evaluation and
//! interpolation, modular powering, and Taylor shift.

use crate::error::{Error, Result};
use crate::field::{Fe, PrimeField};

/// Below this operand length multiplication stays schoolbook.
const SCHOOLBOOK_MAX_LEN: usize = 32;
/// Karatsuba recursion bottoms out at this length.
const KARATSUBA_BASE_LEN: usize = 32;
/// Divisors of smaller degree use long division instead of Newton.
const NEWTON_DIVREM_MIN_DEG: usize = 32;
/// Taylor shift divide-and-conquer base case length.
const TAYLOR_BASE_LEN: usize = 16;

/// Multiplication algorithm selector. `Auto` picks schoolbook for short
/// operands, the NTT when the field's two-adicity covers the padded
/// product size, and Karatsuba otherwise.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum MulAlgorithm {
    #[default]
    Auto,
    Schoolbook,
    Karatsuba,
    Ntt,
}

/// A dense univariate polynomial; `coeffs[i]` is the coefficient of X^i.
/// Normalized: the last coefficient is nonzero, or the vector is empty
/// (the zero polynomial).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly {
    field: PrimeField,
    coeffs: Vec<Fe>,
}

impl UniPoly {
    pub fn zero(field: PrimeField) -> Self {
        UniPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        UniPoly::constant(field, Fe::ONE)
    }

    pub fn constant(field: PrimeField, c: Fe) -> Self {
        let coeffs = if c.is_zero() { Vec::new() } else { vec![c] };
        UniPoly { field, coeffs }
    }

    /// Builds `c * X^degree`.
    pub fn monomial(field: PrimeField, c: Fe, degree: usize) -> Self {
        if c.is_zero() {
            return Self::zero(field);
        }
        let mut coeffs = vec![Fe::ZERO; degree + 1];
        coeffs[degree] = c;
        UniPoly { field, coeffs }
    }

    /// Takes ownership of a coefficient vector, dropping trailing zeros.
    pub fn from_elems(field: PrimeField, mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    /// Convenience constructor reducing raw integers.
    pub fn from_u64(field: PrimeField, coeffs: &[u64]) -> Self {
        Self::from_elems(field, coeffs.iter().map(|&c| field.elem(c)).collect())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    /// Coefficient of X^i (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    /// `None` is the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<Fe> {
        self.coeffs.last().copied()
    }

    /// Horner evaluation at a single point.
    pub fn eval(&self, x: Fe) -> Fe {
        let f = &self.field;
        let mut acc = Fe::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    pub fn add(&self, rhs: &UniPoly) -> Result<UniPoly> {
        self.field.expect_same(&rhs.field)?;
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(f.add(self.coeff(i), rhs.coeff(i)));
        }
        Ok(UniPoly::from_elems(self.field, out))
    }

    pub fn sub(&self, rhs: &UniPoly) -> Result<UniPoly> {
        self.field.expect_same(&rhs.field)?;
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(f.sub(self.coeff(i), rhs.coeff(i)));
        }
        Ok(UniPoly::from_elems(self.field, out))
    }

    pub fn neg(&self) -> UniPoly {
        let f = &self.field;
        UniPoly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }

    pub fn scaled(&self, c: Fe) -> UniPoly {
        let f = &self.field;
        UniPoly::from_elems(
            self.field,
            self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        )
    }

    /// Multiplication by X^k.
    pub fn shifted_up(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Fe::ZERO; k + self.coeffs.len()];
        coeffs[k..].copy_from_slice(&self.coeffs);
        UniPoly {
            field: self.field,
            coeffs,
        }
    }

    /// The polynomial modulo X^k.
    pub fn truncated(&self, k: usize) -> UniPoly {
        UniPoly::from_elems(self.field, self.coeffs[..self.coeffs.len().min(k)].to_vec())
    }

    /// X^(k-1) * p(1/X): the coefficient window [0, k) reversed.
    pub(crate) fn reversed(&self, k: usize) -> UniPoly {
        let mut out = vec![Fe::ZERO; k];
        for (i, &c) in self.coeffs.iter().take(k).enumerate() {
            out[k - 1 - i] = c;
        }
        UniPoly::from_elems(self.field, out)
    }

    pub fn derivative(&self) -> UniPoly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.elem(i as u64), c))
            .collect();
        UniPoly::from_elems(self.field, coeffs)
    }

    /// Exact product, dispatching per `MulAlgorithm::Auto`.
    pub fn mul(&self, rhs: &UniPoly) -> Result<UniPoly> {
        self.mul_using(rhs, MulAlgorithm::Auto)
    }

    /// Exact product with a forced algorithm; all paths agree bit-exactly.
    pub fn mul_using(&self, rhs: &UniPoly, algo: MulAlgorithm) -> Result<UniPoly> {
        self.field.expect_same(&rhs.field)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(UniPoly::zero(self.field));
        }
        let out = match algo {
            MulAlgorithm::Auto => mul_auto(&self.field, &self.coeffs, &rhs.coeffs),
            MulAlgorithm::Schoolbook => mul_schoolbook(&self.field, &self.coeffs, &rhs.coeffs),
            MulAlgorithm::Karatsuba => mul_karatsuba(&self.field, &self.coeffs, &rhs.coeffs),
            MulAlgorithm::Ntt => mul_ntt(&self.field, &self.coeffs, &rhs.coeffs)?,
        };
        Ok(UniPoly::from_elems(self.field, out))
    }

    /// Division with remainder: self = q * d + r with deg r < deg d.
    ///
    /// Divisors of degree >= 32 go through Newton inversion of the
    /// reversed divisor; smaller ones use long division.
    pub fn divrem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        self.field.expect_same(&d.field)?;
        let Some(dd) = d.degree() else {
            return Err(Error::DivisionByZero);
        };
        match self.degree() {
            None => return Ok((UniPoly::zero(self.field), UniPoly::zero(self.field))),
            Some(da) if da < dd => return Ok((UniPoly::zero(self.field), self.clone())),
            _ => {}
        }
        if dd < NEWTON_DIVREM_MIN_DEG {
            self.divrem_long(d)
        } else {
            self.divrem_newton(d)
        }
    }

    pub fn rem(&self, d: &UniPoly) -> Result<UniPoly> {
        Ok(self.divrem(d)?.1)
    }

    /// Classical long division. Kept as the independent route for the
    /// Newton path to be checked against.
    pub(crate) fn divrem_long(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let f = &self.field;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let Some(da) = self.degree() else {
            return Ok((UniPoly::zero(self.field), UniPoly::zero(self.field)));
        };
        if da < dd {
            return Ok((UniPoly::zero(self.field), self.clone()));
        }
        let lead_inv = f.inv(d.coeffs[dd]).expect("leading coefficient nonzero");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Fe::ZERO; da - dd + 1];
        for i in (dd..=da).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let q = f.mul(c, lead_inv);
            quot[i - dd] = q;
            for j in 0..=dd {
                rem[i - dd + j] = f.sub(rem[i - dd + j], f.mul(q, d.coeffs[j]));
            }
        }
        rem.truncate(dd);
        Ok((
            UniPoly::from_elems(self.field, quot),
            UniPoly::from_elems(self.field, rem),
        ))
    }

    fn divrem_newton(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let da = self.degree().expect("dividend nonzero");
        let dd = d.degree().expect("divisor nonzero");
        let k = da - dd + 1;
        let d_rev_inv = d.reversed(dd + 1).series_inverse(k)?;
        let q_rev = self.reversed(da + 1).mul(&d_rev_inv)?.truncated(k);
        let q = q_rev.reversed(k);
        let r = self.sub(&q.mul(d)?)?;
        debug_assert!(r.degree() < d.degree() || r.is_zero());
        Ok((q, r))
    }

    /// Inverse of self in the formal power series ring, modulo X^precision,
    /// by Newton iteration b <- b * (2 - self * b).
    pub(crate) fn series_inverse(&self, precision: usize) -> Result<UniPoly> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = self.field;
        let two = UniPoly::constant(f, f.add(Fe::ONE, Fe::ONE));
        let mut b = UniPoly::constant(f, f.inv(c0)?);
        let mut cur = 1usize;
        while cur < precision {
            cur *= 2;
            let t = self.truncated(cur).mul(&b)?.truncated(cur);
            let correction = two.sub(&t)?;
            b = b.mul(&correction)?.truncated(cur);
        }
        Ok(b.truncated(precision))
    }

    /// g^e rem f by square-and-multiply with reduction after every step.
    pub fn pow_mod(&self, e: u64, f: &UniPoly) -> Result<UniPoly> {
        self.field.expect_same(&f.field)?;
        let md = PolyModulus::new(f)?;
        if md.degree() == 0 {
            return Ok(UniPoly::zero(self.field));
        }
        let mut base = md.reduce(self);
        let mut acc = UniPoly::one(self.field);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = md.reduce(&acc.mul(&base)?);
            }
            e >>= 1;
            if e > 0 {
                base = md.reduce(&base.mul(&base)?);
            }
        }
        Ok(acc)
    }

    /// `[g^0 rem f, g^1 rem f, ..., g^(count-1) rem f]` by iterated
    /// multiply-and-reduce.
    pub fn powers_mod(&self, count: usize, f: &UniPoly) -> Result<Vec<UniPoly>> {
        self.field.expect_same(&f.field)?;
        let md = PolyModulus::new(f)?;
        if md.degree() == 0 {
            return Ok(vec![UniPoly::zero(self.field); count]);
        }
        let base = md.reduce(self);
        let mut out = Vec::with_capacity(count);
        if count == 0 {
            return Ok(out);
        }
        out.push(UniPoly::one(self.field));
        for i in 1..count {
            let next = md.reduce(&out[i - 1].mul(&base)?);
            out.push(next);
        }
        Ok(out)
    }

    /// p(X + a), degree preserved. Divide and conquer over precomputed
    /// powers (X+a)^(2^i); short polynomials shift by Horner.
    pub fn taylor_shift(&self, a: Fe) -> UniPoly {
        if a.is_zero() || self.coeffs.len() <= 1 {
            return self.clone();
        }
        let f = self.field;
        let n = self.coeffs.len();
        // ladder[i] = (X + a)^(2^i), up to the largest split point.
        let mut ladder = vec![vec![a, Fe::ONE]];
        while (1usize << ladder.len()) <= floor_pow2(n - 1) {
            let last = ladder.last().unwrap();
            ladder.push(mul_auto(&f, last, last));
        }
        let coeffs = taylor_rec(&f, &self.coeffs, a, &ladder);
        UniPoly::from_elems(f, coeffs)
    }
}

fn floor_pow2(n: usize) -> usize {
    debug_assert!(n >= 1);
    1usize << (usize::BITS - 1 - n.leading_zeros())
}

fn taylor_rec(f: &PrimeField, coeffs: &[Fe], a: Fe, ladder: &[Vec<Fe>]) -> Vec<Fe> {
    let n = coeffs.len();
    if n <= TAYLOR_BASE_LEN {
        // Horner in the shifted variable: res <- res * (X + a) + c.
        let mut res = vec![Fe::ZERO; n];
        for &c in coeffs.iter().rev() {
            for j in (1..n).rev() {
                res[j] = f.add(res[j - 1], f.mul(a, res[j]));
            }
            res[0] = f.add(f.mul(a, res[0]), c);
        }
        return res;
    }
    let h = floor_pow2(n - 1);
    let lo = taylor_rec(f, &coeffs[..h], a, ladder);
    let hi = taylor_rec(f, &coeffs[h..], a, ladder);
    let w = &ladder[h.trailing_zeros() as usize]; // (X + a)^h
    let prod = mul_auto(f, w, &hi); // length h + (n - h) = n
    let mut res = vec![Fe::ZERO; n];
    res[..h].copy_from_slice(&lo);
    for (r, p) in res.iter_mut().zip(prod.iter()) {
        *r = f.add(*r, *p);
    }
    res
}

fn mul_auto(f: &PrimeField, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) <= SCHOOLBOOK_MAX_LEN {
        mul_schoolbook(f, a, b)
    } else if ntt_fits(f, a.len() + b.len() - 1) {
        mul_ntt(f, a, b).expect("size checked")
    } else {
        mul_karatsuba(f, a, b)
    }
}

fn ntt_fits(f: &PrimeField, result_len: usize) -> bool {
    result_len.next_power_of_two().trailing_zeros() <= f.two_adicity()
}

fn mul_schoolbook(f: &PrimeField, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Fe::ZERO; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(ai, bj));
        }
    }
    out
}

fn mul_karatsuba(f: &PrimeField, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) <= KARATSUBA_BASE_LEN {
        return mul_schoolbook(f, a, b);
    }
    let m = a.len().max(b.len()).div_ceil(2);
    let (a0, a1) = a.split_at(m.min(a.len()));
    let (b0, b1) = b.split_at(m.min(b.len()));

    let z0 = mul_karatsuba(f, a0, b0);
    let z2 = mul_karatsuba(f, a1, b1);
    let asum = add_slices(f, a0, a1);
    let bsum = add_slices(f, b0, b1);
    let mut z1 = mul_karatsuba(f, &asum, &bsum);
    sub_from(f, &mut z1, &z0);
    sub_from(f, &mut z1, &z2);

    let mut out = vec![Fe::ZERO; a.len() + b.len() - 1];
    add_at(f, &mut out, &z0, 0);
    add_at(f, &mut out, &z1, m);
    add_at(f, &mut out, &z2, 2 * m);
    out
}

fn add_slices(f: &PrimeField, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(Fe::ZERO);
            let y = b.get(i).copied().unwrap_or(Fe::ZERO);
            f.add(x, y)
        })
        .collect()
}

fn sub_from(f: &PrimeField, target: &mut Vec<Fe>, src: &[Fe]) {
    if target.len() < src.len() {
        target.resize(src.len(), Fe::ZERO);
    }
    for (t, &s) in target.iter_mut().zip(src.iter()) {
        *t = f.sub(*t, s);
    }
}

fn add_at(f: &PrimeField, target: &mut [Fe], src: &[Fe], offset: usize) {
    for (i, &s) in src.iter().enumerate() {
        if s.is_zero() {
            continue;
        }
        target[offset + i] = f.add(target[offset + i], s);
    }
}

fn mul_ntt(f: &PrimeField, a: &[Fe], b: &[Fe]) -> Result<Vec<Fe>> {
    let out_len = a.len() + b.len() - 1;
    let size = out_len.next_power_of_two();
    let mut fa = a.to_vec();
    let mut fb = b.to_vec();
    fa.resize(size, Fe::ZERO);
    fb.resize(size, Fe::ZERO);
    f.ntt_in_place(&mut fa, false)?;
    f.ntt_in_place(&mut fb, false)?;
    for (x, y) in fa.iter_mut().zip(fb.iter()) {
        *x = f.mul(*x, *y);
    }
    f.ntt_in_place(&mut fa, true)?;
    fa.truncate(out_len);
    Ok(fa)
}

/// Precomputed reduction context for repeated remaindering by one fixed
/// modulus: the series inverse of the reversed modulus is computed once,
/// to a precision covering dividends of degree up to twice the modulus
/// degree.
#[derive(Clone)]
pub(crate) struct PolyModulus {
    f: UniPoly,
    degree: usize,
    rev_inv: Option<UniPoly>,
}

impl PolyModulus {
    pub(crate) fn new(f: &UniPoly) -> Result<Self> {
        let degree = f.degree().ok_or(Error::DivisionByZero)?;
        let rev_inv = if degree >= NEWTON_DIVREM_MIN_DEG {
            Some(f.reversed(degree + 1).series_inverse(degree + 1)?)
        } else {
            None
        };
        Ok(PolyModulus {
            f: f.clone(),
            degree,
            rev_inv,
        })
    }

    pub(crate) fn poly(&self) -> &UniPoly {
        &self.f
    }

    pub(crate) fn degree(&self) -> usize {
        self.degree
    }

    pub(crate) fn reduce(&self, a: &UniPoly) -> UniPoly {
        let Some(da) = a.degree() else {
            return a.clone();
        };
        if da < self.degree {
            return a.clone();
        }
        if self.degree == 0 {
            return UniPoly::zero(a.field());
        }
        let k = da - self.degree + 1;
        match &self.rev_inv {
            Some(inv) if k <= self.degree + 1 => {
                let q_rev = a
                    .reversed(da + 1)
                    .mul(&inv.truncated(k))
                    .expect("same field")
                    .truncated(k);
                let q = q_rev.reversed(k);
                a.sub(&q.mul(&self.f).expect("same field"))
                    .expect("same field")
            }
            _ => a.divrem(&self.f).expect("modulus nonzero").1,
        }
    }
}

/// Binary tree whose leaves are the linear factors (X - x_k) and whose
/// root is their full product. Nodes are stored level by level in heap
/// order (children of slot i at 2i+1 and 2i+2); point ranges split as
/// ceil/floor halves, so no padding roots are introduced. Each node
/// carries its precomputed reduction context: the tree is walked several
/// times per pipeline (weights, evaluation), so the Newton inverses pay
/// for themselves.
pub struct SubproductTree {
    field: PrimeField,
    points: Vec<Fe>,
    nodes: Vec<Option<PolyModulus>>,
}

impl SubproductTree {
    pub fn build(field: PrimeField, xs: &[Fe]) -> Self {
        assert!(!xs.is_empty(), "subproduct tree needs at least one point");
        let n = xs.len();
        let depth = n.next_power_of_two().trailing_zeros();
        let mut nodes = vec![None; (1usize << (depth + 1)) - 1];
        Self::fill(&field, xs, &mut nodes, 0, 0, n);
        SubproductTree {
            field,
            points: xs.to_vec(),
            nodes,
        }
    }

    fn fill(
        f: &PrimeField,
        xs: &[Fe],
        nodes: &mut [Option<PolyModulus>],
        idx: usize,
        lo: usize,
        hi: usize,
    ) {
        if hi - lo == 1 {
            let leaf = UniPoly::from_elems(*f, vec![f.neg(xs[lo]), Fe::ONE]);
            nodes[idx] = Some(PolyModulus::new(&leaf).expect("leaf nonzero"));
            return;
        }
        let mid = lo + (hi - lo).div_ceil(2);
        Self::fill(f, xs, nodes, 2 * idx + 1, lo, mid);
        Self::fill(f, xs, nodes, 2 * idx + 2, mid, hi);
        let prod = nodes[2 * idx + 1]
            .as_ref()
            .unwrap()
            .poly()
            .mul(nodes[2 * idx + 2].as_ref().unwrap().poly())
            .expect("same field");
        nodes[idx] = Some(PolyModulus::new(&prod).expect("product nonzero"));
    }

    /// The product of all leaves, prod (X - x_k), of degree `len()`.
    pub fn root(&self) -> &UniPoly {
        self.nodes[0].as_ref().expect("tree nonempty").poly()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> &[Fe] {
        &self.points
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    fn node(&self, idx: usize) -> &PolyModulus {
        self.nodes[idx].as_ref().expect("node populated")
    }

    /// Multipoint evaluation: `out[k] = p(x_k)` by recursive remaindering
    /// down the tree. The input degree may exceed the point count; it is
    /// reduced by the root first.
    pub fn evaluate(&self, p: &UniPoly) -> Vec<Fe> {
        self.field
            .expect_same(&p.field())
            .expect("polynomial over the tree's field");
        let mut out = vec![Fe::ZERO; self.points.len()];
        let r = self.node(0).reduce(p);
        self.eval_rec(0, 0, self.points.len(), r, &mut out);
        out
    }

    fn eval_rec(&self, idx: usize, lo: usize, hi: usize, r: UniPoly, out: &mut [Fe]) {
        if hi - lo == 1 {
            out[lo] = r.coeff(0);
            return;
        }
        let mid = lo + (hi - lo).div_ceil(2);
        let rl = self.node(2 * idx + 1).reduce(&r);
        let rr = self.node(2 * idx + 2).reduce(&r);
        self.eval_rec(2 * idx + 1, lo, mid, rl, out);
        self.eval_rec(2 * idx + 2, mid, hi, rr, out);
    }

    /// The unique polynomial g with deg g < len() and g(x_k) = ys[k],
    /// via the derivative-of-root weights and a combining up-sweep.
    pub fn interpolate(&self, ys: &[Fe]) -> Result<UniPoly> {
        if ys.len() != self.points.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} nodes",
                ys.len(),
                self.points.len()
            )));
        }
        let f = &self.field;
        let weights = self.evaluate(&self.root().derivative());
        let mut scaled = Vec::with_capacity(ys.len());
        for (&w, &y) in weights.iter().zip(ys.iter()) {
            if w.is_zero() {
                // The derivative of the root vanishes exactly at repeated
                // nodes.
                return Err(Error::DuplicateNodes);
            }
            scaled.push(f.mul(y, f.inv(w)?));
        }
        Ok(self.combine_rec(0, 0, self.points.len(), &scaled))
    }

    fn combine_rec(&self, idx: usize, lo: usize, hi: usize, cs: &[Fe]) -> UniPoly {
        if hi - lo == 1 {
            return UniPoly::constant(self.field, cs[lo]);
        }
        let mid = lo + (hi - lo).div_ceil(2);
        let left = self.combine_rec(2 * idx + 1, lo, mid, cs);
        let right = self.combine_rec(2 * idx + 2, mid, hi, cs);
        let l = left.mul(self.node(2 * idx + 2).poly()).expect("same field");
        let r = right
            .mul(self.node(2 * idx + 1).poly())
            .expect("same field");
        l.add(&r).expect("same field")
    }
}

/// Interpolation through (xs[k], ys[k]); the nodes must be pairwise
/// distinct.
pub fn interpolate(field: PrimeField, xs: &[Fe], ys: &[Fe]) -> Result<UniPoly> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} nodes vs {} values",
            xs.len(),
            ys.len()
        )));
    }
    if xs.is_empty() {
        return Ok(UniPoly::zero(field));
    }
    let mut sorted = xs.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DuplicateNodes);
    }
    SubproductTree::build(field, xs).interpolate(ys)
}
