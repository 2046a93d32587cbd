//! Field contexts: ℚ(ζ_N) in characteristic 0, 𝔽_{p^e} in characteristic p.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::cyclo::{CycloField, QElem, ZElem};
use super::finite::{FiniteField, FpElem};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub enum FieldCtx {
    Rational(Arc<CycloField>),
    Finite(Arc<FiniteField>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldElem {
    Rational(QElem),
    Finite(FpElem),
}

/// Builds (or fetches from a process-wide cache) the context for characteristic `char`
/// (0 or a prime) containing a primitive N-th root of unity.
pub fn field_context(char: u64, n: u64) -> Result<FieldCtx> {
    if n == 0 {
        return Err(Error::input("root order must be positive"));
    }
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64), FieldCtx>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(ctx) = cache.lock().unwrap().get(&(char, n)) {
        return Ok(ctx.clone());
    }
    let ctx = if char == 0 {
        FieldCtx::Rational(Arc::new(CycloField::new(n)))
    } else {
        FieldCtx::Finite(Arc::new(FiniteField::new(char, n)?))
    };
    cache.lock().unwrap().insert((char, n), ctx.clone());
    Ok(ctx)
}

impl FieldCtx {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldCtx::Rational(_) => 0,
            FieldCtx::Finite(f) => f.characteristic(),
        }
    }

    pub fn root_order(&self) -> u64 {
        match self {
            FieldCtx::Rational(f) => f.order(),
            FieldCtx::Finite(f) => f.order(),
        }
    }

    /// Degree of the field over its prime field.
    pub fn degree(&self) -> usize {
        match self {
            FieldCtx::Rational(f) => f.degree(),
            FieldCtx::Finite(f) => f.degree(),
        }
    }

    /// Human-readable description, e.g. `Q(zeta_15)` or `GF(2^4)`.
    pub fn describe(&self) -> String {
        match self {
            FieldCtx::Rational(f) => format!("Q(zeta_{})", f.order()),
            FieldCtx::Finite(f) => format!(
                "GF({}^{}) with zeta of order {}",
                f.characteristic(),
                f.degree(),
                f.order()
            ),
        }
    }

    pub fn zero(&self) -> FieldElem {
        match self {
            FieldCtx::Rational(f) => FieldElem::Rational(vec![BigRational::zero(); f.degree()]),
            FieldCtx::Finite(f) => FieldElem::Finite(f.zero()),
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, a: i64) -> FieldElem {
        match self {
            FieldCtx::Rational(f) => {
                let mut v = vec![BigRational::zero(); f.degree()];
                v[0] = BigRational::from_integer(BigInt::from(a));
                FieldElem::Rational(v)
            }
            FieldCtx::Finite(f) => FieldElem::Finite(f.from_i64(a)),
        }
    }

    /// ζ^k for the distinguished primitive root ζ of order N.
    pub fn zeta_pow(&self, k: i64) -> FieldElem {
        match self {
            FieldCtx::Rational(f) => FieldElem::Rational(f.zelem_to_q(&f.zeta_pow_z(k))),
            FieldCtx::Finite(f) => FieldElem::Finite(f.zeta_pow(k)),
        }
    }

    fn check(&self, a: &FieldElem) -> Result<()> {
        let ok = match (self, a) {
            (FieldCtx::Rational(f), FieldElem::Rational(v)) => v.len() == f.degree(),
            (FieldCtx::Finite(f), FieldElem::Finite(v)) => v.len() == f.degree(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::input(
                "element does not belong to this field context",
            ))
        }
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        match a {
            FieldElem::Rational(v) => v.iter().all(|c| c.is_zero()),
            FieldElem::Finite(v) => v.iter().all(|&c| c == 0),
        }
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (self, a, b) {
            (FieldCtx::Rational(_), FieldElem::Rational(x), FieldElem::Rational(y)) => {
                FieldElem::Rational(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (FieldCtx::Finite(f), FieldElem::Finite(x), FieldElem::Finite(y)) => {
                FieldElem::Finite(f.add(x, y))
            }
            _ => unreachable!(),
        })
    }

    pub fn neg(&self, a: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        Ok(match (self, a) {
            (FieldCtx::Rational(_), FieldElem::Rational(x)) => {
                FieldElem::Rational(x.iter().map(|c| -c).collect())
            }
            (FieldCtx::Finite(f), FieldElem::Finite(x)) => FieldElem::Finite(f.neg(x)),
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        self.add(a, &self.neg(b)?)
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (self, a, b) {
            (FieldCtx::Rational(f), FieldElem::Rational(x), FieldElem::Rational(y)) => {
                FieldElem::Rational(f.mul_q(x, y))
            }
            (FieldCtx::Finite(f), FieldElem::Finite(x), FieldElem::Finite(y)) => {
                FieldElem::Finite(f.mul(x, y))
            }
            _ => unreachable!(),
        })
    }

    pub fn inv(&self, a: &FieldElem) -> Result<Option<FieldElem>> {
        self.check(a)?;
        Ok(match (self, a) {
            (FieldCtx::Rational(f), FieldElem::Rational(x)) => f.inv_q(x).map(FieldElem::Rational),
            (FieldCtx::Finite(f), FieldElem::Finite(x)) => f.inv(x).map(FieldElem::Finite),
            _ => unreachable!(),
        })
    }

    pub fn pow(&self, a: &FieldElem, mut k: u64) -> Result<FieldElem> {
        let mut acc = self.one();
        let mut base = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            base = self.mul(&base, &base)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Rank of a row-major matrix of elements of this context.
    pub fn rank(&self, rows: &[Vec<FieldElem>]) -> Result<usize> {
        for row in rows {
            for e in row {
                self.check(e)?;
            }
        }
        Ok(match self {
            FieldCtx::Rational(f) => {
                let q: Vec<Vec<QElem>> = rows
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|e| match e {
                                FieldElem::Rational(v) => v.clone(),
                                _ => unreachable!(),
                            })
                            .collect()
                    })
                    .collect();
                f.rank_q(&q)
            }
            FieldCtx::Finite(f) => {
                let m: Vec<Vec<FpElem>> = rows
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|e| match e {
                                FieldElem::Finite(v) => v.clone(),
                                _ => unreachable!(),
                            })
                            .collect()
                    })
                    .collect();
                f.rank(m)
            }
        })
    }

    /// Rank of the matrix obtained by evaluating group-ring entries of ℤ[ℤ_r] at ι(1) = ζ^{step}
    /// where ζ is the context's primitive root (so ι(1) has order N / gcd(N, step)).
    pub fn rank_group_ring(&self, rows: &[Vec<Vec<i64>>], step: u64) -> usize {
        match self {
            FieldCtx::Rational(f) => {
                let z: Vec<Vec<ZElem>> = rows
                    .iter()
                    .map(|row| row.iter().map(|c| f.eval_group_ring(c, step)).collect())
                    .collect();
                f.rank_z(z)
            }
            FieldCtx::Finite(f) => {
                let n = f.order();
                let powers: Vec<FpElem> = (0..n).map(|k| f.zeta_pow(k as i64)).collect();
                let m: Vec<Vec<FpElem>> = rows
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|c| {
                                let mut acc = f.zero();
                                for (s, &coef) in c.iter().enumerate() {
                                    if coef == 0 {
                                        continue;
                                    }
                                    let idx = ((s as u128 * step as u128) % n as u128) as usize;
                                    let w = super::numtheory::modulo(coef, f.characteristic());
                                    acc = f.add(&acc, &f.scale(&powers[idx], w));
                                }
                                acc
                            })
                            .collect()
                    })
                    .collect();
                f.rank(m)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contexts_from_spec_examples() {
        let q3 = field_context(0, 3).unwrap();
        assert_eq!(q3.degree(), 2);
        let f4 = field_context(2, 3).unwrap();
        assert_eq!(f4.degree(), 2);
        let big = field_context(2, 27).unwrap();
        assert_eq!(big.degree(), 18);
        assert!(field_context(3, 6).is_err());
    }

    #[test]
    fn primitive_root_orders() {
        for (c, n) in [(0u64, 12u64), (2, 15), (3, 7), (5, 12), (7, 9)] {
            let ctx = field_context(c, n).unwrap();
            let z = ctx.zeta_pow(1);
            assert_eq!(ctx.pow(&z, n).unwrap(), ctx.one());
            for q in super::super::numtheory::prime_factors(n) {
                assert_ne!(ctx.pow(&z, n / q).unwrap(), ctx.one());
            }
        }
    }

    #[test]
    fn mixed_elements_rejected() {
        let a = field_context(0, 3).unwrap();
        let b = field_context(2, 3).unwrap();
        assert!(a.add(&a.one(), &b.one()).is_err());
        assert!(a.rank(&[vec![b.one()]]).is_err());
    }
}
