use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::numtheory::{lcm, modulo};
use crate::algebra::{smith_normal_form, IntMatrix};
use crate::error::{ensure_input, Error, Result};
use crate::fpgroups::Character;

/// Characteristics in which a component is present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Applicability {
    All,
    Only(Vec<u64>),
    Except(Vec<u64>),
}

impl Applicability {
    pub fn applies(&self, char: u64) -> bool {
        match self {
            Applicability::All => true,
            Applicability::Only(ps) => ps.contains(&char),
            Applicability::Except(ps) => !ps.contains(&char),
        }
    }
}

/// A component σ·T of a jump locus, with T spanned by the rows of a saturated exponent
/// matrix, lying in V_d for d = `depth`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranslatedTorus {
    pub degree: usize,
    pub basis: Vec<Vec<i64>>,
    pub translate: Character,
    pub depth: u64,
    pub chars: Applicability,
}

impl TranslatedTorus {
    pub fn new(
        degree: usize,
        ambient: usize,
        basis: Vec<Vec<i64>>,
        translate: Character,
        depth: u64,
        chars: Applicability,
    ) -> Result<Self> {
        ensure_input!(depth >= 1, "component depth must be at least 1");
        ensure_input!(
            basis.iter().all(|r| r.len() == ambient) && translate.len() == ambient,
            "component vectors must have length {ambient}"
        );
        if !basis.is_empty() {
            let snf = smith_normal_form(&IntMatrix::from_i64_with_cols(&basis, ambient), false);
            ensure_input!(
                snf.rank == basis.len() && snf.invariant_factors.iter().all(|d| d.is_one()),
                "torus basis must be independent and saturated"
            );
        }
        Ok(TranslatedTorus {
            degree,
            basis,
            translate,
            depth,
            chars,
        })
    }

    pub fn ambient(&self) -> usize {
        self.translate.len()
    }
}

/// σ with its p-primary part removed.
fn prime_to_p(sigma: &Character, p: u64) -> Character {
    if p == 0 {
        return sigma.clone();
    }
    let s = sigma.order;
    let mut pe = 1;
    while s.is_multiple_of(pe * p) {
        pe *= p;
    }
    let s1 = s / pe;
    // k ≡ 1 mod s1 and k ≡ 0 mod p^e.
    let k = (0..s)
        .step_by(pe as usize)
        .find(|k| k % s1 == 1 % s1)
        .unwrap_or(0);
    Character {
        order: s1,
        exponents: sigma
            .exponents
            .iter()
            .map(|&b| ((b as u128 * k as u128 % s as u128) as u64 / pe) % s1)
            .collect(),
    }
}

/// Whether ρ lies on σ·T, tested in characteristic `char`.
pub fn char_in_component(rho: &Character, c: &TranslatedTorus, char: u64) -> Result<bool> {
    ensure_input!(
        c.chars.applies(char),
        "component does not apply in characteristic {char}"
    );
    ensure_input!(
        rho.len() == c.ambient(),
        "character has {} exponents, component lives in rank {}",
        rho.len(),
        c.ambient()
    );
    ensure_input!(
        char == 0 || !rho.image_order().is_multiple_of(char),
        "character of order divisible by {char} has no values in characteristic {char}"
    );
    let sigma = prime_to_p(&c.translate, char);
    let l = lcm(rho.order, sigma.order);
    let (fr, fs) = (l / rho.order, l / sigma.order);
    let diff: Vec<i64> = rho
        .exponents
        .iter()
        .zip(&sigma.exponents)
        .map(|(&a, &b)| modulo(a as i64 * fr as i64 - b as i64 * fs as i64, l) as i64)
        .collect();
    if c.basis.is_empty() {
        return Ok(diff.iter().all(|&d| d == 0));
    }
    let n = c.ambient();
    let snf = smith_normal_form(&IntMatrix::from_i64_with_cols(&c.basis, n), true);
    let (_, v) = snf
        .transforms
        .ok_or_else(|| Error::invariant("Smith form without transforms"))?;
    let k = snf.rank;
    let lb = BigInt::from(l);
    for j in k..n {
        let s: BigInt = (0..n).map(|i| BigInt::from(diff[i]) * v.get(i, j)).sum();
        if !(s % &lb).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Jump loci V^q_d of a space, given as lists of translated subtori.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stratification {
    pub rank: usize,
    pub betti: Vec<u64>,
    pub components: Vec<TranslatedTorus>,
}

#[derive(Deserialize)]
struct RawCharacter {
    order: u64,
    exponents: Vec<i64>,
}

#[derive(Deserialize)]
struct RawComponent {
    degree: usize,
    basis: Vec<Vec<i64>>,
    translate: RawCharacter,
    depth: u64,
    #[serde(default = "all")]
    chars: Applicability,
}

fn all() -> Applicability {
    Applicability::All
}

#[derive(Deserialize)]
struct RawStratification {
    rank: usize,
    betti: Vec<u64>,
    components: Vec<RawComponent>,
}

impl Stratification {
    pub fn new(rank: usize, betti: Vec<u64>, components: Vec<TranslatedTorus>) -> Result<Self> {
        ensure_input!(!betti.is_empty(), "betti numbers must include degree 0");
        for c in &components {
            ensure_input!(
                c.ambient() == rank,
                "component lives in rank {} instead of {rank}",
                c.ambient()
            );
        }
        Ok(Stratification {
            rank,
            betti,
            components,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let raw: RawStratification = serde_json::from_value(v.clone())
            .map_err(|e| Error::input(format!("stratification: {e}")))?;
        let comps = raw
            .components
            .into_iter()
            .map(|c| {
                TranslatedTorus::new(
                    c.degree,
                    raw.rank,
                    c.basis,
                    Character::new(c.translate.order, &c.translate.exponents)?,
                    c.depth,
                    c.chars,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Stratification::new(raw.rank, raw.betti, comps)
    }

    pub fn max_degree(&self) -> usize {
        self.betti.len() - 1
    }

    /// Depth of ρ in V^q: b_q at ρ = 1, else the largest depth of a containing component.
    pub fn depth(&self, q: usize, rho: &Character, char: u64) -> Result<u64> {
        ensure_input!(q <= self.max_degree(), "no data in degree {q}");
        ensure_input!(
            rho.len() == self.rank,
            "character has {} exponents for rank {}",
            rho.len(),
            self.rank
        );
        if rho.is_trivial() {
            return Ok(self.betti[q]);
        }
        let mut best = 0;
        for c in self
            .components
            .iter()
            .filter(|c| c.degree == q && c.chars.applies(char))
        {
            if c.depth > best && char_in_component(rho, c, char)? {
                best = c.depth;
            }
        }
        Ok(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_and_p_part() {
        let t = TranslatedTorus::new(
            1,
            6,
            vec![vec![1, 0, 0, 0, 0, 0], vec![0, 1, 0, 0, 0, 0]],
            Character::new(2, &[0, 0, 1, 0, 0, 0]).unwrap(),
            2,
            Applicability::All,
        )
        .unwrap();
        let rho = Character::new(3, &[1, 1, 0, 0, 0, 0]).unwrap();
        assert!(!char_in_component(&rho, &t, 0).unwrap());
        assert!(char_in_component(&rho, &t, 2).unwrap());
        let on = Character::new(6, &[2, 4, 3, 0, 0, 0]).unwrap();
        assert!(char_in_component(&on, &t, 0).unwrap());
        assert!(char_in_component(&t.translate, &t, 0).unwrap());
        let sigma = Character::new(12, &[3, 4, 6]).unwrap();
        assert_eq!(
            prime_to_p(&sigma, 2),
            Character::new(3, &[0, 1, 0]).unwrap()
        );
    }

    #[test]
    fn pencil_direction_mod_three() {
        let t = TranslatedTorus::new(
            1,
            8,
            vec![vec![2, -2, 0, 0, -1, -1, 1, 1]],
            Character::trivial(1, 8),
            1,
            Applicability::All,
        )
        .unwrap();
        let rho = Character::new(3, &[2, 1, 0, 0, 2, 2, 1, 1]).unwrap();
        assert!(char_in_component(&rho, &t, 2).unwrap());
        let off = Character::new(3, &[1, 1, 0, 0, 2, 2, 1, 2]).unwrap();
        assert!(!char_in_component(&off, &t, 0).unwrap());
    }

    #[test]
    fn rejects_unsaturated() {
        let r = TranslatedTorus::new(
            1,
            2,
            vec![vec![2, 0]],
            Character::trivial(1, 2),
            1,
            Applicability::All,
        );
        assert!(r.is_err());
    }
}
