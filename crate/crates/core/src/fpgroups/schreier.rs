use std::collections::VecDeque;

use rayon::prelude::*;

use super::{exponent_sums, invert_word, reduce_word, AbelianGroup, Character, Presentation, Word};
use crate::algebra::numtheory::{gcd, mod_inv};
use crate::algebra::IntMatrix;
use crate::error::{ensure_input, Error, Result};

/// Coset representatives t_c (c ∈ ℤ_r) of ker χ.
fn transversal(chi: &Character) -> Vec<Word> {
    let r = chi.order;
    if let Some(w) = chi.exponents.iter().position(|&e| gcd(e, r) == 1) {
        let inv = mod_inv(chi.exponents[w], r).unwrap_or(1);
        return (0..r)
            .map(|c| vec![w as i32 + 1; ((c * inv) % r) as usize])
            .collect();
    }
    let mut reps: Vec<Option<Word>> = vec![None; r as usize];
    reps[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0u64]);
    while let Some(c) = queue.pop_front() {
        let base = reps[c as usize].clone().unwrap();
        for (i, &e) in chi.exponents.iter().enumerate() {
            for sign in [1i32, -1] {
                let next = if sign > 0 {
                    (c + e) % r
                } else {
                    (c + r - e) % r
                };
                if reps[next as usize].is_none() {
                    let mut w = base.clone();
                    w.push(sign * (i as i32 + 1));
                    reps[next as usize] = Some(w);
                    queue.push_back(next);
                }
            }
        }
    }
    reps.into_iter()
        .map(|w| w.expect("surjective character"))
        .collect()
}

/// Presentation of ker(χ) with generators s_{c,i} = t_c x_i t_{c+χ_i}⁻¹, trivial ones removed.
pub fn reidemeister_schreier(p: &Presentation, chi: &Character) -> Result<Presentation> {
    ensure_input!(
        chi.len() == p.generators,
        "character has {} exponents for {} generators",
        chi.len(),
        p.generators
    );
    ensure_input!(
        chi.is_surjective(),
        "character is not surjective onto Z_{}",
        chi.order
    );
    for (i, rel) in p.relators.iter().enumerate() {
        if chi.eval(rel) != 0 {
            return Err(Error::input(format!(
                "character does not vanish on relator {i}"
            )));
        }
    }
    if chi.order == 1 {
        return Ok(p.clone());
    }
    let r = chi.order as usize;
    let g = p.generators;
    let reps = transversal(chi);
    let mut index = vec![vec![None; g]; r];
    let mut count = 0i32;
    for c in 0..r {
        for i in 0..g {
            let next = (c + chi.exponents[i] as usize) % r;
            let mut w = reps[c].clone();
            w.push(i as i32 + 1);
            w.extend(invert_word(&reps[next]));
            if !reduce_word(&w).is_empty() {
                count += 1;
                index[c][i] = Some(count);
            }
        }
    }
    let rewrite = |rel: &Word, start: usize| -> Word {
        let mut out = Vec::with_capacity(rel.len());
        let mut cur = start;
        for &l in rel {
            let i = l.unsigned_abs() as usize - 1;
            let e = chi.exponents[i] as usize;
            if l > 0 {
                if let Some(s) = index[cur][i] {
                    out.push(s);
                }
                cur = (cur + e) % r;
            } else {
                cur = (cur + r - e) % r;
                if let Some(s) = index[cur][i] {
                    out.push(-s);
                }
            }
        }
        out
    };
    let relators: Vec<Word> = p
        .relators
        .par_iter()
        .flat_map_iter(|rel| (0..r).map(move |c| (rel, c)))
        .map(|(rel, c)| rewrite(rel, c))
        .collect();
    Presentation::new(count as usize, relators)
}

/// H₁(ker χ, ℤ).
pub fn integral_h1_kernel(p: &Presentation, chi: &Character) -> Result<AbelianGroup> {
    let k = reidemeister_schreier(p, chi)?;
    let rows: Vec<Vec<i64>> = k
        .relators
        .iter()
        .map(|w| exponent_sums(w, k.generators))
        .collect();
    Ok(AbelianGroup::from_relations(
        &IntMatrix::from_i64_with_cols(&rows, k.generators),
    ))
}
