//! Finite fields 𝔽_{p^e} = 𝔽_p[t]/(f) with a distinguished root of unity.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::numtheory::{gcd, is_prime, mod_inv, mult_order, prime_factors};
use crate::error::{Error, Result};

/// Element of 𝔽_{p^e}: `e` coefficients in the power basis, each in `0..p`.
pub type FpElem = Vec<u64>;

#[derive(Debug)]
pub struct FiniteField {
    p: u64,
    e: usize,
    /// Monic irreducible modulus, `e + 1` coefficients.
    f: Vec<u64>,
    n: u64,
    zeta: FpElem,
}

impl FiniteField {
    /// The field 𝔽_{p^e} with e = ord_N(p), modulus the lexicographically smallest monic
    /// irreducible of degree e, and ζ found by a deterministic search.
    pub fn new(p: u64, n: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::input(format!("characteristic {p} is not prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::Unsupported(format!("characteristic {p} too large")));
        }
        if n == 0 || gcd(p, n) != 1 {
            return Err(Error::input(format!(
                "characteristic {p} divides the root order {n}"
            )));
        }
        let e = mult_order(p, n) as usize;
        let f = smallest_irreducible(p, e);
        let mut field = FiniteField {
            p,
            e,
            f,
            n,
            zeta: Vec::new(),
        };
        field.zeta = field.find_root_of_unity();
        Ok(field)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn modulus(&self) -> &[u64] {
        &self.f
    }

    pub fn zeta(&self) -> &FpElem {
        &self.zeta
    }

    /// Number of elements, p^e.
    pub fn size(&self) -> BigUint {
        BigUint::from(self.p).pow(self.e as u32)
    }

    pub fn zero(&self) -> FpElem {
        vec![0; self.e]
    }

    pub fn one(&self) -> FpElem {
        let mut v = vec![0; self.e];
        v[0] = 1;
        v
    }

    pub fn from_i64(&self, a: i64) -> FpElem {
        let mut v = vec![0; self.e];
        v[0] = super::numtheory::modulo(a, self.p);
        v
    }

    pub fn is_zero(&self, a: &FpElem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FpElem, b: &FpElem) -> FpElem {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn sub(&self, a: &FpElem, b: &FpElem) -> FpElem {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x + self.p - y) % self.p)
            .collect()
    }

    pub fn neg(&self, a: &FpElem) -> FpElem {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }

    pub fn scale(&self, a: &FpElem, c: u64) -> FpElem {
        a.iter().map(|x| x * c % self.p).collect()
    }

    pub fn mul(&self, a: &FpElem, b: &FpElem) -> FpElem {
        let e = self.e;
        let p = self.p;
        let mut conv = vec![0u64; 2 * e - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    conv[i + j] = (conv[i + j] + x * y) % p;
                }
            }
        }
        self.reduce(conv)
    }

    fn reduce(&self, mut c: Vec<u64>) -> FpElem {
        let e = self.e;
        let p = self.p;
        for i in (e..c.len()).rev() {
            let top = c[i];
            if top == 0 {
                continue;
            }
            for j in 0..e {
                let sub = top * self.f[j] % p;
                c[i - e + j] = (c[i - e + j] + p - sub) % p;
            }
            c[i] = 0;
        }
        c.resize(e, 0);
        c
    }

    pub fn pow(&self, a: &FpElem, exp: &BigUint) -> FpElem {
        let mut acc = self.one();
        let bits = exp.bits();
        for i in (0..bits).rev() {
            acc = self.mul(&acc, &acc);
            if exp.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Inverse via the extended Euclidean algorithm in 𝔽_p[t].
    pub fn inv(&self, a: &FpElem) -> Option<FpElem> {
        if self.is_zero(a) {
            return None;
        }
        let p = self.p;
        let mut r0 = trim(self.f.clone());
        let mut r1 = trim(a.clone());
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1, p);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        // r0 is a nonzero constant since f is irreducible
        if r0.len() != 1 {
            return None;
        }
        let c = mod_inv(r0[0], p)?;
        let mut out = poly_scale(&s0, c, p);
        out.resize(self.e, 0);
        Some(out)
    }

    /// ζ^k.
    pub fn zeta_pow(&self, k: i64) -> FpElem {
        let idx = super::numtheory::modulo(k, self.n);
        self.pow(&self.zeta, &BigUint::from(idx))
    }

    fn find_root_of_unity(&self) -> FpElem {
        let q_minus_1 = self.size() - BigUint::one();
        let cofactor = &q_minus_1 / BigUint::from(self.n);
        let primes = prime_factors(self.n);
        let one = self.one();
        let total = self.size();
        let mut code = BigUint::one();
        while code < total {
            let alpha = self.decode(&code);
            let beta = self.pow(&alpha, &cofactor);
            let exact = primes
                .iter()
                .all(|&q| self.pow(&beta, &BigUint::from(self.n / q)) != one);
            if exact {
                return beta;
            }
            code += BigUint::one();
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    /// Element whose coefficients are the base-p digits of `code`.
    fn decode(&self, code: &BigUint) -> FpElem {
        let mut digits = code.to_radix_le(self.p as u32);
        digits.resize(self.e, 0);
        digits.into_iter().map(|d| d as u64).collect()
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self, mut rows: Vec<Vec<FpElem>>) -> usize {
        let nrows = rows.len();
        if nrows == 0 {
            return 0;
        }
        let ncols = rows[0].len();
        let mut r0 = 0;
        for col in 0..ncols {
            if r0 == nrows {
                break;
            }
            let Some(piv) = (r0..nrows).find(|&i| !self.is_zero(&rows[i][col])) else {
                continue;
            };
            rows.swap(r0, piv);
            let inv = self.inv(&rows[r0][col]).expect("nonzero pivot");
            let prow: Vec<FpElem> = rows[r0].iter().map(|x| self.mul(x, &inv)).collect();
            for row in rows.iter_mut().skip(r0 + 1) {
                if self.is_zero(&row[col]) {
                    continue;
                }
                let a = row[col].clone();
                for j in col..ncols {
                    if !self.is_zero(&prow[j]) {
                        row[j] = self.sub(&row[j], &self.mul(&a, &prow[j]));
                    }
                }
            }
            rows[r0] = prow;
            r0 += 1;
        }
        r0
    }
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn poly_scale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
    trim(a.iter().map(|x| x * c % p).collect())
}

fn poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return (vec![], trim(r));
    }
    let lead_inv = mod_inv(*b.last().unwrap(), p).unwrap();
    let mut q = vec![0u64; r.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let c = r[i + b.len() - 1] * lead_inv % p;
        q[i] = c;
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + p - c * bj % p) % p;
        }
    }
    r.truncate(b.len() - 1);
    (trim(q), trim(r))
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = poly_divrem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// t^{p^k} mod f by k successive Frobenius powers.
fn frobenius_power_of_t(f: &[u64], p: u64, k: usize) -> Vec<u64> {
    let mut x = trim(vec![0, 1]);
    let (_, r) = poly_divrem(&x, f, p);
    x = r;
    for _ in 0..k {
        // x <- x^p mod f
        let mut acc = vec![1u64];
        let mut base = x.clone();
        let mut exp = p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = poly_divrem(&poly_mul(&acc, &base, p), f, p).1;
            }
            base = poly_divrem(&poly_mul(&base, &base, p), f, p).1;
            exp >>= 1;
        }
        x = acc;
    }
    x
}

/// Rabin's irreducibility test for a monic polynomial of degree e over 𝔽_p.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let e = f.len() - 1;
    if e == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let t = vec![0u64, 1];
    let full = frobenius_power_of_t(f, p, e);
    if poly_sub(&full, &t, p) != Vec::<u64>::new() {
        return false;
    }
    for q in prime_factors(e as u64) {
        let h = frobenius_power_of_t(f, p, e / q as usize);
        let g = poly_gcd(f, &poly_sub(&h, &t, p), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Smallest monic irreducible of degree e, ordering candidates by the integer whose base-p
/// digits are the non-leading coefficients with the constant term least significant.
pub fn smallest_irreducible(p: u64, e: usize) -> Vec<u64> {
    let mut code = BigUint::zero();
    loop {
        let mut digits: Vec<u64> = code
            .to_radix_le(p as u32)
            .into_iter()
            .map(|d| d as u64)
            .collect();
        digits.resize(e, 0);
        digits.push(1);
        if is_irreducible(&digits, p) {
            return digits;
        }
        code += BigUint::one();
    }
}
