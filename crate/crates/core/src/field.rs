//! Exact arithmetic in a prime field Z/pZ with word-sized modulus,
//! including the primitive-root machinery needed for number-theoretic
//! transforms.
//!
//! Elements are stored as least nonnegative residues. All arithmetic goes
//! through a [`PrimeField`] context; the context is small and `Copy`, so
//! containers (polynomials, matrices) each carry their own copy and check
//! compatibility where two containers meet.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

/// Strict upper bound on the modulus: products of two residues must fit in
/// a `u128`, and intermediate sums in the transforms must not wrap.
pub const MAX_MODULUS_BITS: u32 = 62;

/// A field element: the least nonnegative residue modulo the owning field's
/// modulus. The owning [`PrimeField`] is supplied to every operation.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Fe(u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    /// The least nonnegative residue.
    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The prime field Z/pZ for an odd prime p with 2 < p < 2^62.
///
/// Construction runs a deterministic primality check, computes the
/// two-adicity s of p-1 (the largest s with 2^s | p-1) and, when s >= 2,
/// finds and verifies a generator of the multiplicative group. The
/// generator yields the power-of-two roots of unity used by the NTT.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    modulus: u64,
    two_adicity: u32,
    primitive_root: Option<u64>,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p <= 2 || p >= (1u64 << MAX_MODULUS_BITS) {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !is_prime_u64(p) {
            return Err(Error::CompositeModulus(p));
        }
        let two_adicity = (p - 1).trailing_zeros();
        let primitive_root = if two_adicity >= 2 {
            let g = find_generator(p);
            debug_assert_eq!(pow_mod_u64(g, (p - 1) / 2, p), p - 1);
            Some(g)
        } else {
            None
        };
        Ok(PrimeField {
            modulus: p,
            two_adicity,
            primitive_root,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Largest s with 2^s dividing p-1; the NTT supports sizes up to 2^s.
    pub fn two_adicity(&self) -> u32 {
        self.two_adicity
    }

    /// A verified generator of the multiplicative group, present when the
    /// two-adicity is at least 2.
    pub fn primitive_root(&self) -> Option<Fe> {
        self.primitive_root.map(Fe)
    }

    /// Reduce an arbitrary `u64` to a field element.
    pub fn elem(&self, x: u64) -> Fe {
        Fe(x % self.modulus)
    }

    /// Reduce a signed integer, mapping negatives to their residues.
    pub fn from_i128(&self, x: i128) -> Fe {
        Fe(x.rem_euclid(self.modulus as i128) as u64)
    }

    /// Uniformly random element.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(0..self.modulus))
    }

    /// Uniformly random nonzero element.
    pub fn sample_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(1..self.modulus))
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        debug_assert!(a.0 < self.modulus && b.0 < self.modulus);
        let s = a.0 + b.0;
        Fe(if s >= self.modulus {
            s - self.modulus
        } else {
            s
        })
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        debug_assert!(a.0 < self.modulus && b.0 < self.modulus);
        Fe(if a.0 >= b.0 {
            a.0 - b.0
        } else {
            self.modulus - (b.0 - a.0)
        })
    }

    pub fn neg(&self, a: Fe) -> Fe {
        debug_assert!(a.0 < self.modulus);
        Fe(if a.0 == 0 { 0 } else { self.modulus - a.0 })
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        debug_assert!(a.0 < self.modulus && b.0 < self.modulus);
        Fe(mul_mod(a.0, b.0, self.modulus))
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        // Invariants: a.0 * x0 === r0, a.0 * x1 === r1 (mod p).
        let p = self.modulus as i128;
        let (mut r0, mut r1) = (a.0 as i128, p);
        let (mut x0, mut x1) = (1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (x0, x1) = (x1, x0 - q * x1);
        }
        debug_assert_eq!(r0, 1);
        Ok(Fe(x0.rem_euclid(p) as u64))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        Fe(pow_mod_u64(a.0, e, self.modulus))
    }

    /// A root of unity of exact order 2^log_size.
    pub fn root_of_unity(&self, log_size: u32) -> Result<Fe> {
        if log_size > self.two_adicity {
            return Err(Error::UnsupportedTransformSize {
                size: 1usize << log_size,
                two_adicity: self.two_adicity,
            });
        }
        if log_size == 0 {
            return Ok(Fe::ONE);
        }
        match self.primitive_root {
            Some(g) => Ok(Fe(pow_mod_u64(
                g,
                (self.modulus - 1) >> log_size,
                self.modulus,
            ))),
            // two_adicity == 1 here, so the only request left is order 2.
            None => Ok(Fe(self.modulus - 1)),
        }
    }

    /// Forward transform: evaluates the input (as coefficients) at the
    /// size-th roots of unity, output in natural order w^0, w^1, ...
    pub fn ntt_forward(&self, coeffs: &[Fe]) -> Result<Vec<Fe>> {
        let mut v = coeffs.to_vec();
        self.ntt_in_place(&mut v, false)?;
        Ok(v)
    }

    /// Inverse transform, including the 1/size scaling, so that
    /// `ntt_inverse(ntt_forward(v)) == v`.
    pub fn ntt_inverse(&self, values: &[Fe]) -> Result<Vec<Fe>> {
        let mut v = values.to_vec();
        self.ntt_in_place(&mut v, true)?;
        Ok(v)
    }

    pub(crate) fn ntt_in_place(&self, v: &mut [Fe], invert: bool) -> Result<()> {
        let n = v.len();
        if !n.is_power_of_two() {
            return Err(Error::UnsupportedTransformSize {
                size: n,
                two_adicity: self.two_adicity,
            });
        }
        let log_n = n.trailing_zeros();
        if log_n > self.two_adicity {
            return Err(Error::UnsupportedTransformSize {
                size: n,
                two_adicity: self.two_adicity,
            });
        }
        if n <= 1 {
            return Ok(());
        }

        // Bit-reversal permutation, then iterative Cooley-Tukey butterflies.
        for i in 0..n {
            let j = i.reverse_bits() >> (usize::BITS - log_n);
            if i < j {
                v.swap(i, j);
            }
        }

        let mut log_len = 1u32;
        while log_len <= log_n {
            let len = 1usize << log_len;
            let half = len >> 1;
            let mut w_len = self.root_of_unity(log_len)?;
            if invert {
                w_len = self.inv(w_len).expect("root of unity is nonzero");
            }
            let mut start = 0;
            while start < n {
                let mut w = Fe::ONE;
                for j in 0..half {
                    let u = v[start + j];
                    let t = self.mul(w, v[start + j + half]);
                    v[start + j] = self.add(u, t);
                    v[start + j + half] = self.sub(u, t);
                    w = self.mul(w, w_len);
                }
                start += len;
            }
            log_len += 1;
        }

        if invert {
            let n_inv = self.inv(self.elem(n as u64)).expect("n < p");
            for x in v.iter_mut() {
                *x = self.mul(*x, n_inv);
            }
        }
        Ok(())
    }

    pub(crate) fn expect_same(&self, other: &PrimeField) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::FieldMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(())
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut e: u64, p: u64) -> u64 {
    base %= p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the fixed witness set decides primality for
/// all n < 2^64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard rho with Floyd cycle detection; returns a nontrivial factor of
/// composite odd n.
fn pollard_rho(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime_u64(n) && n % 2 == 1);
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Prime factorization of n (n >= 1), as a sorted list of distinct primes.
fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for q in [2u64, 3, 5] {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
    }
    let mut stack = Vec::new();
    if n > 1 {
        stack.push(n);
    }
    while let Some(v) = stack.pop() {
        if is_prime_u64(v) {
            if !out.contains(&v) {
                out.push(v);
            }
            continue;
        }
        let d = pollard_rho(v);
        stack.push(d);
        stack.push(v / d);
    }
    out.sort_unstable();
    out
}

/// Smallest generator of (Z/pZ)*: g such that g^((p-1)/q) != 1 for every
/// prime q dividing p-1.
fn find_generator(p: u64) -> u64 {
    let factors = prime_factors(p - 1);
    'candidate: for g in 2..p {
        for &q in &factors {
            if pow_mod_u64(g, (p - 1) / q, p) == 1 {
                continue 'candidate;
            }
        }
        return g;
    }
    unreachable!("every prime field has a generator");
}
