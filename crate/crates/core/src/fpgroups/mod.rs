//! Finitely presented groups, Fox calculus, subgroup presentations of cyclic covers,
//! and presentations of arrangement groups.

mod fibration;
mod fox;
mod schreier;
mod sweep;

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::numtheory::{gcd, modulo};
use crate::algebra::{smith_normal_form, IntMatrix};
use crate::error::{ensure_input, Result};

pub use fibration::monomial_deletion_presentation;
pub use fox::{fox_group_ring, fox_jacobian, phi_module_rank, twisted_betti_01, FoxData};
pub use schreier::{integral_h1_kernel, reidemeister_schreier};
pub use sweep::sweep_presentation;

/// A word in the generators: signed, 1-based indices (`-2` is x₂⁻¹).
pub type Word = Vec<i32>;

/// Free reduction.
pub fn reduce_word(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free and cyclic reduction.
pub fn cyclic_reduce(w: &[i32]) -> Word {
    let mut v = reduce_word(w);
    let mut a = 0;
    let mut b = v.len();
    while b >= a + 2 && v[a] == -v[b - 1] {
        a += 1;
        b -= 1;
    }
    v.truncate(b);
    v.drain(..a);
    v
}

pub fn invert_word(w: &[i32]) -> Word {
    w.iter().rev().map(|&l| -l).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

impl Presentation {
    /// Validates indices, then freely and cyclically reduces every relator. Relators that
    /// reduce to the empty word are dropped.
    pub fn new(generators: usize, relators: Vec<Word>) -> Result<Self> {
        let mut out = Vec::with_capacity(relators.len());
        for (i, r) in relators.into_iter().enumerate() {
            for &l in &r {
                ensure_input!(
                    l != 0 && (l.unsigned_abs() as usize) <= generators,
                    "relator {i}: letter {l} out of range for {generators} generators"
                );
            }
            let c = cyclic_reduce(&r);
            if !c.is_empty() {
                out.push(c);
            }
        }
        Ok(Presentation {
            generators,
            relators: out,
        })
    }

    pub fn free(generators: usize) -> Self {
        Presentation {
            generators,
            relators: Vec::new(),
        }
    }

    /// Integer relation matrix (relators × generators) of exponent sums.
    pub fn relation_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self
            .relators
            .iter()
            .map(|r| exponent_sums(r, self.generators))
            .collect();
        IntMatrix::from_i64_with_cols(&rows, self.generators)
    }

    pub fn abelianization(&self) -> AbelianGroup {
        AbelianGroup::from_relations(&self.relation_matrix())
    }

    /// Adds the relator "product of all generators in order".
    pub fn projectivize(&self) -> Result<Presentation> {
        let mut rel = self.relators.clone();
        rel.push((1..=self.generators as i32).collect());
        Presentation::new(self.generators, rel)
    }
}

pub fn exponent_sums(w: &[i32], generators: usize) -> Vec<i64> {
    let mut v = vec![0i64; generators];
    for &l in w {
        v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
    }
    v
}

/// A character G → ℤ_r given by its values on generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character {
    pub order: u64,
    pub exponents: Vec<u64>,
}

impl Character {
    pub fn new(order: u64, exponents: &[i64]) -> Result<Self> {
        ensure_input!(order >= 1, "character order must be positive");
        Ok(Character {
            order,
            exponents: exponents.iter().map(|&e| modulo(e, order)).collect(),
        })
    }

    pub fn trivial(order: u64, n: usize) -> Self {
        Character {
            order,
            exponents: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// gcd(exponents, r) = 1.
    pub fn is_surjective(&self) -> bool {
        self.exponents.iter().fold(self.order, |g, &e| gcd(g, e)) == 1
    }

    pub fn is_projective(&self) -> bool {
        self.exponents
            .iter()
            .fold(0u64, |s, &e| (s + e) % self.order)
            == 0
    }

    /// Order of the image subgroup.
    pub fn image_order(&self) -> u64 {
        self.order / self.exponents.iter().fold(self.order, |g, &e| gcd(g, e))
    }

    /// j·χ.
    pub fn scale(&self, j: u64) -> Character {
        Character {
            order: self.order,
            exponents: self
                .exponents
                .iter()
                .map(|&e| ((e as u128 * j as u128) % self.order as u128) as u64)
                .collect(),
        }
    }

    /// The same character viewed with values in ℤ_{order·f}.
    pub fn lift(&self, f: u64) -> Character {
        Character {
            order: self.order * f,
            exponents: self.exponents.iter().map(|&e| e * f).collect(),
        }
    }

    /// Value on a word.
    pub fn eval(&self, w: &[i32]) -> u64 {
        let mut s = 0i64;
        for &l in w {
            s += l.signum() as i64 * self.exponents[l.unsigned_abs() as usize - 1] as i64;
            s = s.rem_euclid(self.order as i64);
        }
        s as u64
    }
}

/// ℤ^rank ⊕ ⨁ ℤ_{d_i}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn new(rank: usize, torsion: Vec<i64>) -> Self {
        AbelianGroup {
            rank,
            torsion: torsion.into_iter().map(BigInt::from).collect(),
        }
    }

    /// Cokernel of the relation matrix (relations as rows).
    pub fn from_relations(m: &IntMatrix) -> Self {
        let snf = smith_normal_form(m, false);
        AbelianGroup {
            rank: m.cols() - snf.rank,
            torsion: snf
                .invariant_factors
                .into_iter()
                .filter(|d| !d.is_one())
                .collect(),
        }
    }

    /// Number of invariant factors divisible by p.
    pub fn p_rank(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.torsion
            .iter()
            .filter(|d| (*d % &p) == BigInt::from(0))
            .count()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(format!("Z^{}", self.rank));
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reductions() {
        assert_eq!(reduce_word(&[1, 2, -2, -1, 3]), vec![3]);
        assert_eq!(cyclic_reduce(&[-1, 2, 3, 1]), vec![2, 3]);
        assert_eq!(cyclic_reduce(&[1, -1]), Vec::<i32>::new());
        let p = Presentation::new(2, vec![vec![1, -1], vec![1, 2, -1, -2]]).unwrap();
        assert_eq!(p.relators.len(), 1);
        assert!(Presentation::new(2, vec![vec![3]]).is_err());
    }

    #[test]
    fn abelianizations() {
        let t = Presentation::new(2, vec![vec![1, 2, 2, -1, -2, -2]]).unwrap();
        assert_eq!(t.abelianization(), AbelianGroup::new(2, vec![]));
        let z2 = Presentation::new(1, vec![vec![1, 1]]).unwrap();
        assert_eq!(z2.abelianization().to_string(), "Z/2");
    }

    #[test]
    fn characters() {
        let c = Character::new(6, &[1, -1, 3]).unwrap();
        assert_eq!(c.exponents, vec![1, 5, 3]);
        assert!(c.is_surjective());
        assert!(!c.is_projective());
        assert_eq!(c.scale(2).image_order(), 3);
        assert_eq!(c.eval(&[1, 1, -3]), 5);
    }
}
