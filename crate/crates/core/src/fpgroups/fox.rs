use rayon::prelude::*;

use super::{Character, Presentation};
use crate::algebra::numtheory::{euler_phi, gcd};
use crate::algebra::{cyclotomic_poly, field_context, FieldCtx, FieldMatrix, IntMatrix};
use crate::error::{ensure_input, Error, Result};

/// Fox Jacobian over the group ring ℤ[ℤ_r]: entry `[i][j][s]` is the coefficient of the
/// group element s in χ(∂R_i/∂x_j).
pub fn fox_group_ring(p: &Presentation, chi: &Character) -> Result<Vec<Vec<Vec<i64>>>> {
    ensure_input!(
        chi.len() == p.generators,
        "character has {} exponents for {} generators",
        chi.len(),
        p.generators
    );
    let r = chi.order as usize;
    let g = p.generators;
    p.relators
        .par_iter()
        .enumerate()
        .map(|(i, rel)| {
            let mut row = vec![vec![0i64; r]; g];
            let mut s = 0usize;
            for &l in rel {
                let j = l.unsigned_abs() as usize - 1;
                let c = chi.exponents[j] as usize;
                if l > 0 {
                    row[j][s] += 1;
                    s = (s + c) % r;
                } else {
                    s = (s + r - c) % r;
                    row[j][s] -= 1;
                }
            }
            if s != 0 {
                return Err(Error::input(format!(
                    "character does not vanish on relator {i}"
                )));
            }
            Ok(row)
        })
        .collect()
}

/// Fox calculus data of a presentation along a fixed character χ, reusable for every
/// multiple jχ.
#[derive(Clone, Debug)]
pub struct FoxData {
    pub generators: usize,
    pub chi: Character,
    pub rows: Vec<Vec<Vec<i64>>>,
}

impl FoxData {
    pub fn new(p: &Presentation, chi: &Character) -> Result<Self> {
        Ok(FoxData {
            generators: p.generators,
            chi: chi.clone(),
            rows: fox_group_ring(p, chi)?,
        })
    }

    pub fn order(&self) -> u64 {
        self.chi.order
    }

    /// dim H₀ at ρ = jχ.
    pub fn h0(&self, j: u64) -> usize {
        usize::from(self.chi.scale(j).is_trivial())
    }

    /// dim H₁(G, 𝕜_ρ) for ρ = jχ over a field of characteristic `char`.
    pub fn h1(&self, char: u64, j: u64) -> Result<usize> {
        let r = self.order();
        let j = j % r;
        let g = self.generators;
        if self.chi.scale(j).is_trivial() {
            let ctx = field_context(char, 1)?;
            return Ok(g - ctx.rank_group_ring(&self.rows, 0));
        }
        let d = gcd(r, j);
        let k = r / d;
        let ctx = field_context(char, k)?;
        Ok(g - 1 - ctx.rank_group_ring(&self.rows, j / d))
    }
}

/// Fox matrix (relators × generators) at ρ, with ι_ρ(1) = ζ^{N/r} for the context root ζ of order N.
pub fn fox_jacobian(p: &Presentation, rho: &Character, ctx: &FieldCtx) -> Result<FieldMatrix> {
    let n = ctx.root_order();
    let r = rho.order;
    ensure_input!(
        n.is_multiple_of(r),
        "context root order {n} is not a multiple of the character order {r}"
    );
    let step = n / r;
    let rows = fox_group_ring(p, rho)?;
    let mut out = Vec::with_capacity(rows.len());
    for row in &rows {
        let mut erow = Vec::with_capacity(row.len());
        for entry in row {
            let mut acc = ctx.zero();
            for (s, &c) in entry.iter().enumerate() {
                if c != 0 {
                    let z = ctx.zeta_pow((s as u64 * step % n) as i64);
                    acc = ctx.add(&acc, &ctx.mul(&ctx.from_i64(c), &z)?)?;
                }
            }
            erow.push(acc);
        }
        out.push(erow);
    }
    FieldMatrix::new(ctx.clone(), p.generators, out)
}

/// (dim H₀, dim H₁) of G with coefficients in the rank-one local system ρ.
pub fn twisted_betti_01(
    p: &Presentation,
    rho: &Character,
    ctx: &FieldCtx,
) -> Result<(usize, usize)> {
    let n = ctx.root_order();
    let r = rho.order;
    ensure_input!(
        n.is_multiple_of(r),
        "context root order {n} is not a multiple of the character order {r}"
    );
    let rows = fox_group_ring(p, rho)?;
    let g = p.generators;
    if rho.is_trivial() {
        return Ok((1, g - ctx.rank_group_ring(&rows, 0)));
    }
    Ok((0, g - 1 - ctx.rank_group_ring(&rows, n / r)))
}

/// ℤ-rank of H₁ with coefficients in ℤ[t]/Φ_k, where t acts through χ.
pub fn phi_module_rank(p: &Presentation, chi: &Character, k: u64) -> Result<usize> {
    let r = chi.order;
    ensure_input!(
        k >= 1 && r.is_multiple_of(k),
        "{k} does not divide the character order {r}"
    );
    let rows = fox_group_ring(p, chi)?;
    let phi = euler_phi(k) as usize;
    let modulus = cyclotomic_poly(k).to_i64();
    let g = p.generators;
    let block = |coeffs: &[i64]| -> Vec<Vec<i64>> {
        let mut a = vec![0i64; phi];
        let mut folded = vec![0i64; k as usize];
        for (s, &c) in coeffs.iter().enumerate() {
            folded[s % k as usize] += c;
        }
        for (s, &c) in folded.iter().enumerate() {
            if c != 0 {
                let mono = reduce_mono(s, &modulus);
                for (i, m) in mono.iter().enumerate() {
                    a[i] += c * m;
                }
            }
        }
        let mut cols = Vec::with_capacity(phi);
        let mut cur = a;
        for _ in 0..phi {
            cols.push(cur.clone());
            cur = times_t(&cur, &modulus);
        }
        (0..phi)
            .map(|i| (0..phi).map(|c| cols[c][i]).collect())
            .collect()
    };
    let mut d2 = vec![vec![0i64; g * phi]; rows.len() * phi];
    for (i, row) in rows.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            let b = block(entry);
            for a in 0..phi {
                for c in 0..phi {
                    d2[i * phi + a][j * phi + c] = b[a][c];
                }
            }
        }
    }
    let mut d1 = vec![vec![0i64; phi]; g * phi];
    for j in 0..g {
        let mut e = vec![0i64; r as usize];
        e[chi.exponents[j] as usize] += 1;
        e[0] -= 1;
        let b = block(&e);
        for a in 0..phi {
            d1[j * phi + a].clone_from(&b[a]);
        }
    }
    let rank2 = IntMatrix::from_i64_with_cols(&d2, g * phi).rank();
    let rank1 = IntMatrix::from_i64_with_cols(&d1, phi).rank();
    Ok(g * phi - rank1 - rank2)
}

fn times_t(a: &[i64], modulus: &[i64]) -> Vec<i64> {
    let phi = a.len();
    let top = a[phi - 1];
    let mut out = vec![0i64; phi];
    for i in (1..phi).rev() {
        out[i] = a[i - 1];
    }
    if top != 0 {
        for i in 0..phi {
            out[i] -= top * modulus[i];
        }
    }
    out
}

fn reduce_mono(s: usize, modulus: &[i64]) -> Vec<i64> {
    let phi = modulus.len() - 1;
    let mut v = vec![0i64; phi];
    v[0] = 1;
    for _ in 0..s {
        v = times_t(&v, modulus);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix_rank;

    fn one_torus() -> Presentation {
        Presentation::new(2, vec![vec![1, 2, 2, -1, -2, -2]]).unwrap()
    }

    #[test]
    fn one_torus_fox() {
        let p = one_torus();
        let ctx = field_context(0, 6).unwrap();
        let rho = Character::new(6, &[2, 0]).unwrap();
        let m = fox_jacobian(&p, &rho, &ctx).unwrap();
        assert_eq!(matrix_rank(&m).unwrap(), 1);
        let rho = Character::new(6, &[2, 3]).unwrap();
        let m = fox_jacobian(&p, &rho, &ctx).unwrap();
        assert_eq!(matrix_rank(&m).unwrap(), 0);
        let rho = Character::new(2, &[0, 1]).unwrap();
        assert_eq!(twisted_betti_01(&p, &rho, &ctx).unwrap(), (0, 1));
        let triv = Character::trivial(1, 2);
        assert_eq!(twisted_betti_01(&p, &triv, &ctx).unwrap(), (1, 2));
    }

    #[test]
    fn free_group() {
        let p = Presentation::free(4);
        let ctx = field_context(0, 5).unwrap();
        let rho = Character::new(5, &[1, 0, 2, 0]).unwrap();
        assert_eq!(fox_jacobian(&p, &rho, &ctx).unwrap().rows, 0);
        assert_eq!(twisted_betti_01(&p, &rho, &ctx).unwrap(), (0, 3));
    }

    #[test]
    fn fox_data_matches_direct() {
        let p = one_torus();
        let chi = Character::new(3, &[1, 0]).unwrap();
        let fd = FoxData::new(&p, &chi).unwrap();
        assert_eq!(fd.h1(0, 0).unwrap(), 2);
        assert_eq!(fd.h1(0, 1).unwrap(), 0);
        assert_eq!(fd.h1(2, 1).unwrap(), 1);
        assert!(fd.h1(3, 1).is_err());
        let bad = Character::new(3, &[0, 1]).unwrap();
        assert!(FoxData::new(
            &Presentation::new(1, vec![vec![1]]).unwrap(),
            &Character::new(3, &[1]).unwrap()
        )
        .is_err());
        assert!(FoxData::new(&p, &bad).is_ok());
    }

    #[test]
    fn phi_module_ranks() {
        let p = one_torus();
        let chi = Character::new(3, &[1, 0]).unwrap();
        assert_eq!(phi_module_rank(&p, &chi, 1).unwrap(), 2);
        assert_eq!(phi_module_rank(&p, &chi, 3).unwrap(), 0);
        assert!(phi_module_rank(&p, &chi, 2).is_err());
    }
}
