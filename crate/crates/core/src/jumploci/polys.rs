use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::numtheory::euler_phi;
use crate::algebra::{cyclotomic_poly, IntPoly};
use crate::error::{Error, Result};

/// Δ_{X,χ}(u, x) = Σ_ρ u_{|ρ|}·Poin(X, ρ; x). `terms[q][k]` is the coefficient of u_k·x^q,
/// that is, a raw count over characters of order k.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct UPoly {
    pub terms: BTreeMap<usize, BTreeMap<u64, i64>>,
}

impl UPoly {
    pub fn new() -> Self {
        UPoly::default()
    }

    /// Adds u_k·poin.
    pub fn add_character(&mut self, k: u64, poin: &[i64]) {
        self.add_scaled(k, poin, 1);
    }

    pub fn add_scaled(&mut self, k: u64, poin: &[i64], times: i64) {
        for (q, &c) in poin.iter().enumerate() {
            if c != 0 {
                *self.terms.entry(q).or_default().entry(k).or_default() += c * times;
            }
        }
        self.prune();
    }

    fn prune(&mut self) {
        for coeff in self.terms.values_mut() {
            coeff.retain(|_, c| *c != 0);
        }
        self.terms.retain(|_, c| !c.is_empty());
    }

    pub fn coefficient(&self, q: usize) -> BTreeMap<u64, i64> {
        self.terms.get(&q).cloned().unwrap_or_default()
    }

    /// The coefficient of x^q with every u_k ↦ 1.
    pub fn specialize(&self, q: usize) -> i64 {
        self.coefficient(q).values().sum()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    /// Every u_k count divisible by φ(k).
    pub fn is_galois_closed(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.iter().all(|(&k, &v)| v % euler_phi(k) as i64 == 0))
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        let mut out = self.clone();
        for (&q, coeff) in &other.terms {
            for (&k, &v) in coeff {
                *out.terms.entry(q).or_default().entry(k).or_default() -= v;
            }
        }
        out.prune();
        out
    }

    /// Characteristic polynomial read off the x^q coefficient.
    pub fn charpoly(&self, q: usize) -> Result<CharPoly> {
        let mut counts = BTreeMap::new();
        for (k, v) in self.coefficient(q) {
            if v < 0 {
                return Err(Error::invariant(format!(
                    "negative count {v} for order {k}"
                )));
            }
            counts.insert(k, v as u64);
        }
        CharPoly::from_counts(&counts)
    }
}

fn format_coeff(coeff: &BTreeMap<u64, i64>) -> (String, usize) {
    let mut s = String::new();
    for (i, (&k, &v)) in coeff.iter().enumerate() {
        if i > 0 || v < 0 {
            s.push(if v < 0 { '-' } else { '+' });
        }
        let a = v.unsigned_abs();
        if a != 1 {
            s.push_str(&a.to_string());
        }
        s.push_str(&format!("u{k}"));
    }
    (s, coeff.len())
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&q, coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let (body, n) = format_coeff(coeff);
            let mono = match q {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{q}"),
            };
            if q > 0 && n > 1 {
                write!(f, "({body}){mono}")?;
            } else {
                write!(f, "{body}{mono}")?;
            }
        }
        Ok(())
    }
}

/// ∏ Φ_k(t)^{e_k}.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPoly {
    pub phi: BTreeMap<u64, u64>,
}

impl CharPoly {
    /// From raw eigenvalue counts per order; fails unless each count is divisible by φ(k),
    /// which can happen in characteristic p where only Frobenius acts on eigenvalues.
    pub fn from_counts(counts: &BTreeMap<u64, u64>) -> Result<Self> {
        let mut phi = BTreeMap::new();
        for (&k, &c) in counts {
            let f = euler_phi(k);
            if c % f != 0 {
                return Err(Error::Unsupported(format!(
                    "{c} eigenvalues of order {k} is not a multiple of phi({k}) = {f}; \
                     the eigenvalue multiset has no integer factorization"
                )));
            }
            if c > 0 {
                phi.insert(k, c / f);
            }
        }
        Ok(CharPoly { phi })
    }

    pub fn exponent(&self, k: u64) -> u64 {
        self.phi.get(&k).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u64 {
        self.phi.iter().map(|(&k, &e)| e * euler_phi(k)).sum()
    }

    pub fn to_int_poly(&self) -> IntPoly {
        let mut p = IntPoly::one();
        for (&k, &e) in &self.phi {
            let f = cyclotomic_poly(k);
            for _ in 0..e {
                p = p.mul(&f);
            }
        }
        p
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.phi.is_empty() {
            return write!(f, "1");
        }
        for (&k, &e) in &self.phi {
            let body = cyclotomic_poly(k).to_string().replace(' ', "");
            if e == 1 {
                write!(f, "({body})")?;
            } else {
                write!(f, "({body})^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_charpoly() {
        let mut u = UPoly::new();
        u.add_character(1, &[1, 5, 6]);
        u.add_character(2, &[0, 0, 2]);
        u.add_scaled(3, &[0, 1, 3], 2);
        u.add_scaled(6, &[0, 0, 2], 2);
        assert_eq!(u.to_string(), "u1 + (5u1+2u3)x + (6u1+2u2+6u3+4u6)x^2");
        assert!(u.is_galois_closed());
        let c = u.charpoly(1).unwrap();
        assert_eq!(c.to_string(), "(t-1)^5(t^2+t+1)");
        assert_eq!(c.degree(), 7);
        assert_eq!(c.to_int_poly().to_i64(), vec![-1, 4, -6, 5, -5, 6, -4, 1]);
        let mut odd = UPoly::new();
        odd.add_character(3, &[0, 1]);
        assert!(!odd.is_galois_closed());
        assert!(odd.charpoly(1).is_err());
        assert_eq!(u.sub(&u), UPoly::new());
    }
}
