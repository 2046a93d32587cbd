//! Parallel connection of pointed arrangements, polarization of multiarrangements, and the
//! induced maps on first (co)homology.

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::cyclo::QElem;
use crate::algebra::numtheory::{lcm, modulo};
use crate::algebra::IntMatrix;
use crate::arrangement::{cyclo, pencil, Arrangement};
use crate::error::{ensure_input, Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct PointedArrangement {
    pub arrangement: Arrangement,
    pub basepoint: usize,
}

impl PointedArrangement {
    pub fn new(arrangement: Arrangement, basepoint: usize) -> Result<Self> {
        ensure_input!(
            basepoint < arrangement.len(),
            "basepoint {basepoint} out of range for {} hyperplanes",
            arrangement.len()
        );
        Ok(PointedArrangement {
            arrangement,
            basepoint,
        })
    }

    /// Pl_n pointed at its first line.
    pub fn pencil(n: usize) -> Result<Self> {
        PointedArrangement::new(pencil(n)?, 0)
    }
}

fn embed(e: &QElem, d: usize) -> QElem {
    let mut v = e.clone();
    v.resize(d, BigRational::zero());
    v
}

/// (𝒜₁, e₁) ∘ₓ (𝒜₂, e₂): the arrangement in {(v, w) : f_x(v) = g_{e₂}(w)} formed by 𝒜₁
/// followed by 𝒜₂ ∖ {e₂}. One coordinate of w (the last one on which g_{e₂} is nonzero)
/// is eliminated. The basepoint stays e₁.
pub fn parallel_connect(
    p1: &PointedArrangement,
    x: usize,
    p2: &PointedArrangement,
) -> Result<PointedArrangement> {
    let a1 = &p1.arrangement;
    let a2 = &p2.arrangement;
    ensure_input!(
        x < a1.len(),
        "plug index {x} out of range for {} hyperplanes",
        a1.len()
    );
    let (k1, k2) = (a1.field_order(), a2.field_order());
    let k = lcm(k1, k2);
    ensure_input!(
        k1 == 1 || k2 == 1 || k1 == k2,
        "cannot connect arrangements over Q(zeta_{k1}) and Q(zeta_{k2})"
    );
    let field = cyclo(k);
    let d = field.degree();
    let (l1, l2) = (a1.dim(), a2.dim());
    let g = &a2.normals()[p2.basepoint];
    let piv = (0..l2)
        .rev()
        .find(|&i| g[i].iter().any(|c| !c.is_zero()))
        .expect("normals are nonzero");
    let gk = embed(&g[piv], d);
    let fx: Vec<QElem> = a1.normals()[x].iter().map(|c| embed(c, d)).collect();
    let mut rows: Vec<Vec<QElem>> = Vec::with_capacity(a1.len() + a2.len() - 1);
    for n in a1.normals() {
        let mut row: Vec<QElem> = n.iter().map(|c| embed(c, d)).collect();
        row.extend((0..l2 - 1).map(|_| vec![BigRational::zero(); d]));
        rows.push(row);
    }
    let mut labels: Vec<String> = (0..a1.len()).map(|i| a1.label(i)).collect();
    for (h, n) in a2.normals().iter().enumerate() {
        if h == p2.basepoint {
            continue;
        }
        let n: Vec<QElem> = n.iter().map(|c| embed(c, d)).collect();
        let ak = &n[piv];
        let mut row: Vec<QElem> = fx.iter().map(|c| field.mul_q(ak, c)).collect();
        for i in 0..l2 {
            if i == piv {
                continue;
            }
            let a = field.mul_q(&gk, &n[i]);
            let b = field.mul_q(ak, &embed(&g[i], d));
            row.push(a.iter().zip(&b).map(|(u, v)| u - v).collect());
        }
        rows.push(row);
        labels.push(a2.label(h));
    }
    let has_labels = a1.labels().is_some() || a2.labels().is_some();
    let arr = Arrangement::from_cyclotomic(k, l1 + l2 - 1, rows, has_labels.then_some(labels))?;
    PointedArrangement::new(arr, p1.basepoint)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tag {
    Backbone(usize),
    /// (H, j) with 2 ≤ j ≤ m_H.
    Leaf(usize, u64),
}

#[derive(Clone, Debug)]
pub struct PolarizationBookkeeping {
    pub base: Arrangement,
    pub m: Vec<u64>,
    pub arrangement: Arrangement,
    pub tags: Vec<Tag>,
    /// Indices in the polarization of the leaves of each pencil.
    pub leaves: Vec<Vec<usize>>,
}

/// n_k = #{H : m_H ≥ k}.
pub fn n_k(m: &[u64], k: u64) -> usize {
    m.iter().filter(|&&x| x >= k).count()
}

impl PolarizationBookkeeping {
    pub fn total(&self) -> u64 {
        self.m.iter().sum()
    }

    pub fn n_k(&self, k: u64) -> usize {
        n_k(&self.m, k)
    }

    /// Report as JSON: tags, n_k table, rank and defining factors.
    pub fn report(&self) -> serde_json::Value {
        serde_json::json!({
            "hyperplanes": self.arrangement.len(),
            "rank": self.arrangement.rank(),
            "n_k": { "2": self.n_k(2), "3": self.n_k(3) },
            "tags": self.tags,
            "factors": self.arrangement.defining_factors(),
        })
    }
}

/// 𝒜‖m = 𝒜 ∘_{H₁} Pl_{m₁} ∘_{H₂} ⋯, skipping pencils with m_H = 1. The backbone keeps the
/// indices of 𝒜; leaves follow, grouped by hyperplane in order.
pub fn polarize(a: &Arrangement, m: &[u64]) -> Result<PolarizationBookkeeping> {
    ensure_input!(
        m.len() == a.len(),
        "{} multiplicities for {} hyperplanes",
        m.len(),
        a.len()
    );
    ensure_input!(m.iter().all(|&x| x >= 1), "multiplicities must be positive");
    let labels: Vec<String> = (0..a.len()).map(|i| a.label(i)).collect();
    let mut cur = PointedArrangement::new(a.clone().with_labels(labels.clone())?, 0)?;
    let mut tags: Vec<Tag> = (0..a.len()).map(Tag::Backbone).collect();
    let mut leaves = vec![Vec::new(); a.len()];
    for (h, &mh) in m.iter().enumerate() {
        if mh == 1 {
            continue;
        }
        let pl = PointedArrangement::pencil(mh as usize)?;
        let pl_labels: Vec<String> = (1..=mh).map(|j| format!("{}~{j}", labels[h])).collect();
        let pl = PointedArrangement::new(pl.arrangement.with_labels(pl_labels)?, 0)?;
        let start = cur.arrangement.len();
        cur = parallel_connect(&cur, h, &pl)?;
        for j in 2..=mh {
            tags.push(Tag::Leaf(h, j));
        }
        leaves[h] = (start..start + mh as usize - 1).collect();
    }
    let expected = n_k(m, 2) + a.rank();
    if cur.arrangement.rank() != expected {
        return Err(Error::invariant(format!(
            "polarization has rank {} instead of {expected}",
            cur.arrangement.rank()
        )));
    }
    Ok(PolarizationBookkeeping {
        base: a.clone(),
        m: m.to_vec(),
        arrangement: cur.arrangement,
        tags,
        leaves,
    })
}

/// The map Ab(E₁) ⊕ Ab(E₂) → Ab(E₁ ∘ₓ E₂): e ↦ e away from x and e₂, x ↦ Σ_{f∈E₂} f,
/// e₂ ↦ Σ_{f∈E₁} f. On the connection, e₂ is the glued element x.
pub fn plugin_h1(v1: &[i64], v2: &[i64], x: usize, e2: usize) -> Result<Vec<i64>> {
    let (n1, n2) = (v1.len(), v2.len());
    ensure_input!(x < n1, "plug index {x} out of range for {n1} points");
    ensure_input!(e2 < n2, "basepoint {e2} out of range for {n2} points");
    let mut out = vec![0i64; n1 + n2 - 1];
    let pos2 = |f: usize| -> usize {
        if f == e2 {
            x
        } else if f < e2 {
            n1 + f
        } else {
            n1 + f - 1
        }
    };
    for (e, &c) in v1.iter().enumerate() {
        if e == x {
            for f in 0..n2 {
                out[pos2(f)] += c;
            }
        } else {
            out[e] += c;
        }
    }
    for (f, &c) in v2.iter().enumerate() {
        if f == e2 {
            for o in out.iter_mut().take(n1) {
                *o += c;
            }
        } else {
            out[pos2(f)] += c;
        }
    }
    Ok(out)
}

/// Matrix of the induced map PAb(E₁) ⊕ PAb(E₂) → PAb(E₁ ∘ₓ E₂) (columns are images), in the
/// bases obtained by dropping the last coordinate of each quotient.
pub fn plugin_h1_projective(n1: usize, n2: usize, x: usize, e2: usize) -> Result<IntMatrix> {
    ensure_input!(n1 >= 1 && n2 >= 1, "empty point sets");
    let n = n1 + n2 - 1;
    let reduce = |v: Vec<i64>| -> Vec<i64> {
        let last = v[v.len() - 1];
        v[..v.len() - 1].iter().map(|c| c - last).collect()
    };
    let mut cols = Vec::with_capacity(n - 1);
    for i in 0..n1 - 1 {
        let mut v1 = vec![0i64; n1];
        v1[i] = 1;
        cols.push(reduce(plugin_h1(&v1, &vec![0; n2], x, e2)?));
    }
    for j in 0..n2 - 1 {
        let mut v2 = vec![0i64; n2];
        v2[j] = 1;
        cols.push(reduce(plugin_h1(&vec![0; n1], &v2, x, e2)?));
    }
    let rows: Vec<Vec<i64>> = (0..n - 1)
        .map(|r| cols.iter().map(|c| c[r]).collect())
        .collect();
    Ok(IntMatrix::from_i64_with_cols(&rows, n - 1))
}

/// Components of θ*(w): a class on U(𝒜) and, for each H, a class on P_{m_H} listed as
/// (glued point, leaves...).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaStar {
    pub backbone: Vec<i64>,
    pub pencils: Vec<Vec<i64>>,
}

/// Iterated dual plug-in map on a class w ∈ H¹(U(𝒜‖m)), given integrally or modulo N.
/// The class must vanish on the sum of all points.
pub fn theta_star(
    b: &PolarizationBookkeeping,
    w: &[i64],
    modulus: Option<u64>,
) -> Result<ThetaStar> {
    let n = b.arrangement.len();
    ensure_input!(
        w.len() == n,
        "class has {} coordinates for {n} hyperplanes",
        w.len()
    );
    let sum: i64 = w.iter().sum();
    match modulus {
        Some(nn) => ensure_input!(
            modulo(sum, nn) == 0,
            "class does not vanish on the sum of points mod {nn}"
        ),
        None => ensure_input!(sum == 0, "class does not vanish on the sum of points"),
    }
    let red = |v: i64| match modulus {
        Some(nn) => modulo(v, nn) as i64,
        None => v,
    };
    let mut backbone = Vec::with_capacity(b.base.len());
    let mut pencils = Vec::with_capacity(b.base.len());
    for h in 0..b.base.len() {
        let leaf_sum: i64 = b.leaves[h].iter().map(|&i| w[i]).sum();
        backbone.push(red(w[h] + leaf_sum));
        let mut pc = vec![red(-leaf_sum)];
        pc.extend(b.leaves[h].iter().map(|&i| red(w[i])));
        pencils.push(pc);
    }
    Ok(ThetaStar { backbone, pencils })
}
