//! The cyclotomic field ℚ(ζ_N) = ℚ[t]/Φ_N and its ring of integers ℤ[ζ_N].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::cyclotomic_poly;

/// Element of ℤ[ζ_N] in the power basis 1, ζ, …, ζ^{d-1}.
pub type ZElem = Vec<BigInt>;
/// Element of ℚ(ζ_N) in the power basis.
pub type QElem = Vec<BigRational>;

#[derive(Debug)]
pub struct CycloField {
    n: u64,
    d: usize,
    phi: Vec<i64>,
    /// ζ^i in the power basis for 0 ≤ i < max(N, 1).
    pow_table: Vec<Vec<i64>>,
}

impl CycloField {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1);
        let phi = cyclotomic_poly(n).to_i64();
        let d = phi.len() - 1;
        let mut pow_table = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; d];
        cur[0] = 1;
        for _ in 0..n {
            pow_table.push(cur.clone());
            // multiply by t and reduce by the monic Φ_N
            let top = cur[d - 1];
            let mut next = vec![0i64; d];
            for i in (1..d).rev() {
                next[i] = cur[i - 1];
            }
            for i in 0..d {
                next[i] -= top * phi[i];
            }
            cur = next;
        }
        CycloField {
            n,
            d,
            phi,
            pow_table,
        }
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn modulus(&self) -> &[i64] {
        &self.phi
    }

    /// ζ^k in ℤ[ζ].
    pub fn zeta_pow_z(&self, k: i64) -> ZElem {
        let idx = super::numtheory::modulo(k, self.n) as usize;
        self.pow_table[idx]
            .iter()
            .map(|&c| BigInt::from(c))
            .collect()
    }

    pub fn zero_z(&self) -> ZElem {
        vec![BigInt::zero(); self.d]
    }

    /// Σ_s c_s ζ^{step·s}, the image of a group-ring element of ℤ[ℤ_r] under ι(1) = ζ^{step}.
    pub fn eval_group_ring(&self, coeffs: &[i64], step: u64) -> ZElem {
        let mut acc = vec![0i128; self.d];
        for (s, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let idx = ((s as u128 * step as u128) % self.n as u128) as usize;
            for (a, &t) in acc.iter_mut().zip(&self.pow_table[idx]) {
                *a += c as i128 * t as i128;
            }
        }
        acc.into_iter().map(BigInt::from).collect()
    }

    pub fn mul_z(&self, a: &ZElem, b: &ZElem) -> ZElem {
        let d = self.d;
        let mut conv = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        let mut out: ZElem = conv[..d].to_vec();
        for (i, c) in conv.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            let row = &self.pow_table[i % self.n as usize];
            for (o, &t) in out.iter_mut().zip(row) {
                if t != 0 {
                    *o += c * t;
                }
            }
        }
        out
    }

    pub fn mul_q(&self, a: &QElem, b: &QElem) -> QElem {
        let d = self.d;
        let mut conv = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        let mut out: QElem = conv[..d].to_vec();
        for (i, c) in conv.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            let row = &self.pow_table[i % self.n as usize];
            for (o, &t) in out.iter_mut().zip(row) {
                if t != 0 {
                    *o += c * BigRational::from_integer(BigInt::from(t));
                }
            }
        }
        out
    }

    /// Inverse of a nonzero element, by solving the multiplication-matrix system.
    pub fn inv_q(&self, a: &QElem) -> Option<QElem> {
        if a.iter().all(|c| c.is_zero()) {
            return None;
        }
        let d = self.d;
        // column j of the multiplication matrix is a·ζ^j
        let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); d + 1]; d];
        for j in 0..d {
            let basis: QElem = (0..d)
                .map(|i| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect();
            let col = self.mul_q(a, &basis);
            for i in 0..d {
                m[i][j] = col[i].clone();
            }
        }
        m[0][d] = BigRational::one();
        // Gauss-Jordan
        for c in 0..d {
            let piv = (c..d).find(|&r| !m[r][c].is_zero())?;
            m.swap(c, piv);
            let p = m[c][c].clone();
            for v in m[c].iter_mut() {
                *v = &*v / &p;
            }
            for r in 0..d {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    for k in c..=d {
                        let sub = &f * &m[c][k];
                        m[r][k] -= sub;
                    }
                }
            }
        }
        Some(m.into_iter().map(|row| row[d].clone()).collect())
    }

    pub fn zelem_to_q(&self, a: &ZElem) -> QElem {
        a.iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    }

    /// Rank of a matrix over ℚ(ζ_N); rows are scaled into ℤ[ζ_N] first.
    pub fn rank_q(&self, rows: &[Vec<QElem>]) -> usize {
        let zrows = rows
            .iter()
            .map(|row| {
                let mut l = BigInt::one();
                for e in row {
                    for c in e {
                        l = l.lcm(c.denom());
                    }
                }
                row.iter()
                    .map(|e| e.iter().map(|c| (c * &l).to_integer()).collect())
                    .collect()
            })
            .collect();
        self.rank_z(zrows)
    }

    /// Rank over ℚ(ζ_N) of a matrix with entries in ℤ[ζ_N], by fraction-free elimination.
    pub fn rank_z(&self, mut rows: Vec<Vec<ZElem>>) -> usize {
        let nrows = rows.len();
        if nrows == 0 {
            return 0;
        }
        let ncols = rows[0].len();
        for row in rows.iter_mut() {
            remove_content(row);
        }
        let mut r0 = 0;
        for col in 0..ncols {
            if r0 == nrows {
                break;
            }
            let mut best: Option<(usize, (u8, u64))> = None;
            for (i, row) in rows.iter().enumerate().skip(r0) {
                let e = &row[col];
                if is_zero_z(e) {
                    continue;
                }
                let key = (
                    if self.unit_monomial(e).is_some() {
                        0
                    } else {
                        1
                    },
                    size_z(e),
                );
                if best.as_ref().is_none_or(|(_, k)| key < *k) {
                    best = Some((i, key));
                }
            }
            let Some((piv, _)) = best else { continue };
            rows.swap(r0, piv);
            if let Some(inv) = self.unit_monomial(&rows[r0][col]) {
                let row = std::mem::take(&mut rows[r0]);
                rows[r0] = row
                    .iter()
                    .map(|e| {
                        if is_zero_z(e) {
                            e.clone()
                        } else {
                            self.mul_z(e, &inv)
                        }
                    })
                    .collect();
            }
            let (head, tail) = rows.split_at_mut(r0 + 1);
            let prow = &head[r0];
            let p = &prow[col];
            let p_is_one = is_one_z(p);
            for row in tail.iter_mut() {
                if is_zero_z(&row[col]) {
                    continue;
                }
                let a = row[col].clone();
                for j in col..ncols {
                    let scaled = if p_is_one || is_zero_z(&row[j]) {
                        row[j].clone()
                    } else {
                        self.mul_z(&row[j], p)
                    };
                    let sub = if is_zero_z(&prow[j]) {
                        None
                    } else {
                        Some(self.mul_z(&a, &prow[j]))
                    };
                    row[j] = match sub {
                        Some(s) => scaled.iter().zip(&s).map(|(x, y)| x - y).collect(),
                        None => scaled,
                    };
                }
                remove_content(row);
            }
            r0 += 1;
        }
        r0
    }

    /// If `e = ±ζ^i` for a power-basis monomial, returns its inverse.
    fn unit_monomial(&self, e: &ZElem) -> Option<ZElem> {
        let mut found = None;
        for (i, c) in e.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if found.is_some() || c.abs() != BigInt::one() {
                return None;
            }
            found = Some((i, c.is_negative()));
        }
        let (i, neg) = found?;
        let mut inv = self.zeta_pow_z(-(i as i64));
        if neg {
            for c in inv.iter_mut() {
                *c = -&*c;
            }
        }
        Some(inv)
    }
}

pub fn is_zero_z(e: &ZElem) -> bool {
    e.iter().all(|c| c.is_zero())
}

fn is_one_z(e: &ZElem) -> bool {
    e[0].is_one() && e[1..].iter().all(|c| c.is_zero())
}

fn size_z(e: &ZElem) -> u64 {
    e.iter().map(|c| c.bits()).sum()
}

fn remove_content(row: &mut [ZElem]) {
    let mut g = BigInt::zero();
    for e in row.iter() {
        for c in e {
            if !c.is_zero() {
                g = g.gcd(c);
                if g.is_one() {
                    return;
                }
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for e in row.iter_mut() {
        for c in e.iter_mut() {
            *c = &*c / &g;
        }
    }
}
