//! Jump loci of rank-one local systems, homology of finite cyclic covers, monodromy
//! characteristic polynomials and Δ_{X,χ}(u, x) bookkeeping.

mod polys;
mod strat;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::numtheory::gcd;
use crate::arrangement::Arrangement;
use crate::error::{ensure_input, Error, Result};
use crate::fpgroups::{sweep_presentation, AbelianGroup, Character, FoxData, Presentation};

pub use polys::{CharPoly, UPoly};
pub use strat::{char_in_component, Applicability, Stratification, TranslatedTorus};

/// Where jump data comes from: a list of known components, or Fox calculus on a
/// presentation of π₁ (optionally with the arrangement it came from, which enables the
/// Euler-completed degree 2).
#[derive(Clone, Debug)]
pub enum JumpSource {
    Stratification(Stratification),
    Fox {
        presentation: Presentation,
        arrangement: Option<Arrangement>,
    },
}

impl JumpSource {
    pub fn fox(p: Presentation) -> Self {
        JumpSource::Fox {
            presentation: p,
            arrangement: None,
        }
    }

    pub fn free(n: usize) -> Self {
        JumpSource::fox(Presentation::free(n))
    }

    /// Projective complement of a real rank-3 arrangement, via its sweep presentation.
    pub fn arrangement(a: &Arrangement) -> Result<Self> {
        Ok(JumpSource::Fox {
            presentation: sweep_presentation(a, true)?,
            arrangement: Some(a.clone()),
        })
    }

    /// Number of coordinates of a character.
    pub fn rank(&self) -> usize {
        match self {
            JumpSource::Stratification(s) => s.rank,
            JumpSource::Fox { presentation, .. } => presentation.generators,
        }
    }

    pub fn max_degree(&self) -> usize {
        match self {
            JumpSource::Stratification(s) => s.max_degree(),
            JumpSource::Fox { arrangement, .. } => {
                if arrangement.is_some() {
                    2
                } else {
                    1
                }
            }
        }
    }

    /// True when degree 2 comes from h₂ = χ(U) − h₀ + h₁.
    pub fn euler_completed(&self) -> bool {
        matches!(
            self,
            JumpSource::Fox {
                arrangement: Some(_),
                ..
            }
        )
    }

    fn prepare(&self, chi: &Character) -> Result<Prepared<'_>> {
        ensure_input!(
            chi.len() == self.rank(),
            "character has {} exponents for {} coordinates",
            chi.len(),
            self.rank()
        );
        Ok(match self {
            JumpSource::Stratification(s) => Prepared::Strat(s, chi.clone()),
            JumpSource::Fox {
                presentation,
                arrangement,
            } => Prepared::Fox {
                data: FoxData::new(presentation, chi)?,
                euler: arrangement
                    .as_ref()
                    .map(|a| a.euler_characteristic())
                    .transpose()?,
            },
        })
    }
}

enum Prepared<'a> {
    Strat(&'a Stratification, Character),
    Fox { data: FoxData, euler: Option<i64> },
}

impl Prepared<'_> {
    fn galois_stable(&self) -> bool {
        matches!(self, Prepared::Fox { .. })
    }

    /// Twisted Betti numbers at ρ = jχ, degrees 0..=max.
    fn poin(&self, j: u64, char: u64) -> Result<Vec<i64>> {
        match self {
            Prepared::Strat(s, chi) => {
                let rho = chi.scale(j);
                (0..=s.max_degree())
                    .map(|q| s.depth(q, &rho, char).map(|d| d as i64))
                    .collect()
            }
            Prepared::Fox { data, euler } => {
                let h0 = data.h0(j) as i64;
                let h1 = data.h1(char, j)? as i64;
                match euler {
                    None => Ok(vec![h0, h1]),
                    Some(e) => {
                        let h2 = e - h0 + h1;
                        if h2 < 0 {
                            return Err(Error::invariant(format!(
                                "negative Euler-completed h2 = {h2}"
                            )));
                        }
                        Ok(vec![h0, h1, h2])
                    }
                }
            }
        }
    }

    fn betti(&self, q: usize, j: u64, char: u64) -> Result<u64> {
        match self {
            Prepared::Strat(s, chi) => s.depth(q, &chi.scale(j), char),
            Prepared::Fox { data, euler } => match q {
                0 => Ok(data.h0(j) as u64),
                1 => Ok(data.h1(char, j)? as u64),
                2 if euler.is_some() => Ok(self.poin(j, char)?[2] as u64),
                _ => Err(Error::Unsupported(format!(
                    "degree {q} needs a rank-3 arrangement"
                ))),
            },
        }
    }
}

/// χ viewed as a surjection onto its image.
fn onto_image(chi: &Character) -> Character {
    let g = chi.exponents.iter().fold(chi.order, |g, &e| gcd(g, e));
    Character {
        order: chi.order / g,
        exponents: chi.exponents.iter().map(|&e| e / g).collect(),
    }
}

/// Orbits of ℤ_r under the Galois action relevant in characteristic `char`: units mod r in
/// characteristic 0, powers of p otherwise. Returns (representative, size).
pub fn galois_orbits(r: u64, char: u64) -> Vec<(u64, u64)> {
    let mut seen = vec![false; r as usize];
    let mut out = Vec::new();
    for j in 0..r {
        if seen[j as usize] {
            continue;
        }
        let mut size = 0;
        if char == 0 {
            for i in 0..r {
                if gcd(i, r) == gcd(j, r) {
                    seen[i as usize] = true;
                    size += 1;
                }
            }
        } else {
            let mut i = j;
            while !seen[i as usize] {
                seen[i as usize] = true;
                size += 1;
                i = (i * char) % r;
            }
        }
        out.push((j, size));
    }
    out
}

fn check_char(char: u64, r: u64) -> Result<()> {
    ensure_input!(
        char == 0 || !r.is_multiple_of(char),
        "characteristic {char} divides the cover degree {r}"
    );
    Ok(())
}

/// Twisted Betti numbers at every jχ (j = 0..r−1), r the image order.
fn poin_table(s: &JumpSource, chi: &Character, char: u64) -> Result<(Character, Vec<Vec<i64>>)> {
    let chi = onto_image(chi);
    check_char(char, chi.order)?;
    let prep = s.prepare(&chi)?;
    let r = chi.order;
    let reps: Vec<(u64, u64)> = if prep.galois_stable() {
        galois_orbits(r, char)
    } else {
        (0..r).map(|j| (j, 1)).collect()
    };
    let values: Vec<Vec<i64>> = reps
        .par_iter()
        .map(|&(j, _)| prep.poin(j, char))
        .collect::<Result<_>>()?;
    let mut table = vec![Vec::new(); r as usize];
    for ((j, _), v) in reps.iter().zip(values) {
        if prep.galois_stable() {
            for i in 0..r {
                let same = if char == 0 {
                    gcd(i, r) == gcd(*j, r)
                } else {
                    orbit_contains(*j, i, r, char)
                };
                if same {
                    table[i as usize] = v.clone();
                }
            }
        } else {
            table[*j as usize] = v;
        }
    }
    Ok((chi, table))
}

fn orbit_contains(rep: u64, i: u64, r: u64, p: u64) -> bool {
    let mut x = rep;
    loop {
        if x == i {
            return true;
        }
        x = (x * p) % r;
        if x == rep {
            return false;
        }
    }
}

/// dim H_q(X, 𝕜_ρ) (stratification: the depth of ρ; Fox: computed exactly).
pub fn jump_depth(s: &JumpSource, q: usize, rho: &Character, char: u64) -> Result<u64> {
    ensure_input!(
        q <= s.max_degree(),
        "degree {q} not supported by this source"
    );
    check_char(char, rho.image_order())?;
    s.prepare(rho)?.betti(q, 1, char)
}

/// Poincaré polynomial of ℂ minus n points with a rank-one local system: 1 + nx if trivial,
/// (n−1)x otherwise.
pub fn poin_punctured_line(n: usize, trivial: bool) -> Vec<i64> {
    let n = n as i64;
    if n == 0 {
        vec![1]
    } else if trivial {
        vec![1, n]
    } else {
        vec![0, n - 1]
    }
}

/// Twisted Poincaré polynomial of the projectivized complement of Pl_m (ℂ minus m−1 points).
pub fn poin_pencil(m: usize, trivial: bool) -> Vec<i64> {
    if m <= 1 {
        vec![1]
    } else {
        poin_punctured_line(m - 1, trivial)
    }
}

/// dim_𝕜 H_q(X^χ, 𝕜) = Σ_ρ dim H_q(X, 𝕜_ρ) over the image of χ̂.
pub fn cover_homology(s: &JumpSource, chi: &Character, char: u64, q: usize) -> Result<u64> {
    Ok(depths(s, chi, char, q)?.1.iter().sum())
}

/// Depths in degree q at every jχ, with χ reduced onto its image.
pub fn depths(
    s: &JumpSource,
    chi: &Character,
    char: u64,
    q: usize,
) -> Result<(Character, Vec<u64>)> {
    ensure_input!(
        q <= s.max_degree(),
        "degree {q} not supported by this source"
    );
    let (chi, table) = poin_table(s, chi, char)?;
    Ok((
        chi,
        table
            .iter()
            .map(|p| p.get(q).copied().unwrap_or(0) as u64)
            .collect(),
    ))
}

/// Characteristic polynomial of the algebraic monodromy on H_q(X^χ, 𝕜).
pub fn monodromy_charpoly(
    s: &JumpSource,
    chi: &Character,
    char: u64,
    q: usize,
) -> Result<CharPoly> {
    let (chi, d) = depths(s, chi, char, q)?;
    let r = chi.order;
    let mut counts = BTreeMap::new();
    for (j, &v) in d.iter().enumerate() {
        *counts.entry(r / gcd(j as u64, r)).or_insert(0) += v;
    }
    CharPoly::from_counts(&counts)
}

/// Δ_{X,χ}(u, x) = Σ_ρ u_{|ρ|}·Poin(X, ρ; x).
pub fn delta_u_poly(s: &JumpSource, chi: &Character, char: u64) -> Result<UPoly> {
    let (chi, table) = poin_table(s, chi, char)?;
    let r = chi.order;
    let mut out = UPoly::new();
    for (j, p) in table.iter().enumerate() {
        out.add_character(r / gcd(j as u64, r), p);
    }
    Ok(out)
}

/// A factor of a product space for [`delta_product`].
#[derive(Clone, Debug)]
pub enum Factor {
    Source(JumpSource),
    /// Projectivized complement of Pl_m, with the m−1 free generators as coordinates.
    Pencil(usize),
}

impl Factor {
    pub fn coordinates(&self) -> usize {
        match self {
            Factor::Source(s) => s.rank(),
            Factor::Pencil(m) => m.saturating_sub(1),
        }
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Δ for a product X₁ × ⋯ × X_s: Σ_ρ u_{|ρ|}·∏ Poin(X_i, ρ_i; x), where χ is split into
/// consecutive blocks of coordinates, one per factor.
pub fn delta_product(factors: &[Factor], chi: &Character, char: u64) -> Result<UPoly> {
    let total: usize = factors.iter().map(Factor::coordinates).sum();
    ensure_input!(
        chi.len() == total,
        "character has {} exponents, factors need {total}",
        chi.len()
    );
    let chi = onto_image(chi);
    let r = chi.order;
    check_char(char, r)?;
    let mut preps = Vec::with_capacity(factors.len());
    let mut start = 0;
    for f in factors {
        let n = f.coordinates();
        let block = Character {
            order: r,
            exponents: chi.exponents[start..start + n].to_vec(),
        };
        start += n;
        preps.push(match f {
            Factor::Source(s) => (Some(s.prepare(&block)?), block),
            Factor::Pencil(_) => (None, block),
        });
    }
    let stable = preps
        .iter()
        .all(|(p, _)| p.as_ref().is_none_or(|p| p.galois_stable()));
    let reps: Vec<(u64, u64)> = if stable {
        galois_orbits(r, char)
    } else {
        (0..r).map(|j| (j, 1)).collect()
    };
    let evals: Vec<Vec<i64>> = reps
        .par_iter()
        .map(|&(j, _)| {
            let mut acc = vec![1i64];
            for ((prep, block), f) in preps.iter().zip(factors) {
                let p = match (prep, f) {
                    (Some(p), _) => p.poin(j, char)?,
                    (None, Factor::Pencil(m)) => poin_pencil(*m, block.scale(j).is_trivial()),
                    (None, Factor::Source(_)) => unreachable!(),
                };
                acc = poly_mul(&acc, &p);
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let mut out = UPoly::new();
    for ((j, size), p) in reps.iter().zip(evals) {
        out.add_scaled(r / gcd(*j, r), &p, *size as i64);
    }
    Ok(out)
}

/// A character at which the characteristic-p jump exceeds the characteristic-0 one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub j: u64,
    pub order: u64,
    pub depth_zero: u64,
    pub depth_p: u64,
}

/// Evidence for p-torsion in H_q of a cover, together with the provenance of its inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionCertificate {
    pub prime: u64,
    pub degree: usize,
    /// Lower bound on the number of ℤ_{p^s} summands.
    pub bound: u64,
    pub dim_zero: u64,
    pub dim_p: u64,
    pub witnesses: Vec<Witness>,
    /// r − 1 when every nontrivial character of the image jumps only in characteristic p.
    pub cyclic_bound: Option<u64>,
    pub chain: Vec<serde_json::Value>,
    pub integral: Option<AbelianGroup>,
    pub charpoly: Option<CharPoly>,
}

impl TorsionCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "prime": self.prime,
            "degree": self.degree,
            "bound": self.bound,
            "dims": { "char0": self.dim_zero, "charp": self.dim_p },
            "witnesses": self.witnesses,
            "chain": self.chain,
        });
        if let Some(b) = self.cyclic_bound {
            v["cyclic_bound"] = b.into();
        }
        if let Some(g) = &self.integral {
            v["integral"] = serde_json::json!({
                "rank": g.rank,
                "torsion": g.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                "group": g.to_string(),
            });
        }
        if let Some(c) = &self.charpoly {
            v["charpoly"] = serde_json::json!({ "phi": c.phi, "text": c.to_string() });
        }
        v
    }
}

/// Compares cover homology in characteristics 0 and p; a strict increase certifies p-torsion
/// in H_{q}(X^χ, ℤ) (or H_{q−1}; for q = 1 the torsion sits in H₁ since H₀ is free).
pub fn torsion_detect(
    s: &JumpSource,
    chi: &Character,
    p: u64,
    q: usize,
) -> Result<Option<TorsionCertificate>> {
    ensure_input!(p >= 2, "p must be a prime");
    let (chi0, d0) = depths(s, chi, 0, q)?;
    let (_, dp) = depths(s, chi, p, q)?;
    let (a, b): (u64, u64) = (d0.iter().sum(), dp.iter().sum());
    if b < a {
        return Err(Error::invariant(format!(
            "dimension in characteristic {p} ({b}) below characteristic 0 ({a})"
        )));
    }
    if b == a {
        return Ok(None);
    }
    let r = chi0.order;
    let witnesses: Vec<Witness> = (0..r as usize)
        .filter(|&j| dp[j] > d0[j])
        .map(|j| Witness {
            j: j as u64,
            order: r / gcd(j as u64, r),
            depth_zero: d0[j],
            depth_p: dp[j],
        })
        .collect();
    let cyclic = (1..r as usize).all(|j| d0[j] == 0 && dp[j] >= 1);
    let charpoly = monodromy_charpoly(s, &chi0, p, q).ok();
    Ok(Some(TorsionCertificate {
        prime: p,
        degree: q,
        bound: b - a,
        dim_zero: a,
        dim_p: b,
        witnesses,
        cyclic_bound: cyclic.then_some(r - 1),
        chain: Vec::new(),
        integral: None,
        charpoly,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_group_delta() {
        let s = JumpSource::free(3);
        let chi = Character::new(6, &[1, 0, 2]).unwrap();
        let d = delta_u_poly(&s, &chi, 0).unwrap();
        assert_eq!(d.to_string(), "u1 + (3u1+2u2+4u3+4u6)x");
        let rho = Character::new(4, &[1, 2, 3]).unwrap();
        assert_eq!(jump_depth(&s, 1, &rho, 0).unwrap(), 2);
        assert_eq!(jump_depth(&s, 1, &Character::trivial(4, 3), 0).unwrap(), 3);
        assert!(jump_depth(&s, 2, &rho, 0).is_err());
    }

    #[test]
    fn orbits_cover_everything() {
        for (r, c) in [(12u64, 0u64), (15, 2), (27, 2), (7, 3)] {
            let o = galois_orbits(r, c);
            assert_eq!(o.iter().map(|x| x.1).sum::<u64>(), r);
        }
        assert_eq!(galois_orbits(3, 2), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn punctured_lines() {
        assert_eq!(poin_punctured_line(4, false), vec![0, 3]);
        assert_eq!(poin_punctured_line(4, true), vec![1, 4]);
        assert_eq!(poin_pencil(1, false), vec![1]);
        assert_eq!(poin_pencil(3, true), vec![1, 2]);
    }

    #[test]
    fn two_pencils() {
        let f = vec![Factor::Pencil(3), Factor::Pencil(3)];
        let chi = Character::new(2, &[1, 1, -1, -1]).unwrap();
        let d = delta_product(&f, &chi, 0).unwrap();
        assert_eq!(d.coefficient(0), BTreeMap::from([(1, 1)]));
        assert_eq!(d.coefficient(2), BTreeMap::from([(1, 4), (2, 1)]));
    }

    #[test]
    fn charp_rejects_divisible_order() {
        let s = JumpSource::free(2);
        let chi = Character::new(4, &[1, 1]).unwrap();
        assert!(cover_homology(&s, &chi, 2, 1).is_err());
    }
}
