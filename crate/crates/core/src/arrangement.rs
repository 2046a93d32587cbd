//! Central hyperplane arrangements over ℚ or a cyclotomic field ℚ(ζ_K).

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::cyclo::{CycloField, QElem};
use crate::algebra::field::{field_context, FieldCtx};
use crate::error::{ensure_input, Error, Result};

/// An ordered, simple, central arrangement. Coordinates of normals lie in ℚ(ζ_K); `K = 1`
/// means ℚ, in which case normals are primitive integer vectors with positive leading entry.
/// Otherwise the leading nonzero coordinate is normalized to 1.
#[derive(Clone, Debug)]
pub struct Arrangement {
    dim: usize,
    field_order: u64,
    normals: Vec<Vec<QElem>>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Arrangement {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.field_order == other.field_order
            && self.normals == other.normals
            && self.labels == other.labels
    }
}

/// A maximal rank-2 flat: the hyperplanes containing a codimension-2 subspace.
#[derive(Clone, Debug, PartialEq)]
pub struct Flat2 {
    pub hyperplanes: Vec<usize>,
    /// Basis of the subspace ⋂ H, as coordinate vectors in ℚ(ζ_K).
    pub basis: Vec<Vec<QElem>>,
}

impl Flat2 {
    pub fn size(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn contains(&self, h: usize) -> bool {
        self.hyperplanes.binary_search(&h).is_ok()
    }
}

/// Arrangement with positive multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct Multiarrangement {
    pub arrangement: Arrangement,
    pub m: Vec<u64>,
}

impl Multiarrangement {
    pub fn new(arrangement: Arrangement, m: Vec<u64>) -> Result<Self> {
        ensure_input!(
            m.len() == arrangement.len(),
            "{} multiplicities for {} hyperplanes",
            m.len(),
            arrangement.len()
        );
        ensure_input!(m.iter().all(|&x| x >= 1), "multiplicities must be positive");
        Ok(Multiarrangement { arrangement, m })
    }

    /// N = Σ m_H.
    pub fn total(&self) -> u64 {
        self.m.iter().sum()
    }
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl Arrangement {
    /// Validates rational normals, normalizing each to a primitive integer vector.
    pub fn from_rational(
        dim: usize,
        rows: Vec<Vec<BigRational>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|c| vec![c]).collect())
            .collect();
        Arrangement::from_cyclotomic(1, dim, rows, labels)
    }

    pub fn from_integer_rows(rows: &[Vec<i64>], labels: Option<Vec<String>>) -> Result<Self> {
        ensure_input!(!rows.is_empty(), "arrangement must be nonempty");
        let dim = rows[0].len();
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&c| rat(c)).collect())
            .collect();
        Arrangement::from_rational(dim, rows, labels)
    }

    /// Validates normals with coordinates in ℚ(ζ_K) given in the power basis.
    pub fn from_cyclotomic(
        field_order: u64,
        dim: usize,
        rows: Vec<Vec<QElem>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        ensure_input!(field_order >= 1, "field order must be positive");
        ensure_input!(!rows.is_empty(), "arrangement must be nonempty");
        ensure_input!(dim >= 1, "ambient dimension must be positive");
        if let Some(l) = &labels {
            ensure_input!(
                l.len() == rows.len(),
                "{} labels for {} hyperplanes",
                l.len(),
                rows.len()
            );
        }
        let field = cyclo(field_order);
        let d = field.degree();
        let mut normals = Vec::with_capacity(rows.len());
        for (i, row) in rows.into_iter().enumerate() {
            ensure_input!(
                row.len() == dim,
                "hyperplane {i}: {} coordinates in dimension {dim} (affine or malformed input)",
                row.len()
            );
            for c in &row {
                ensure_input!(
                    c.len() == d,
                    "hyperplane {i}: coordinate has {} field coefficients, expected {d}",
                    c.len()
                );
            }
            let n = normalize(&field, row)
                .ok_or_else(|| Error::input(format!("hyperplane {i} has zero normal")))?;
            normals.push(n);
        }
        let mut seen = BTreeSet::new();
        for (i, n) in normals.iter().enumerate() {
            let key = format!("{n:?}");
            if !seen.insert(key) {
                return Err(Error::input(format!(
                    "hyperplane {i} repeats an earlier hyperplane (proportional normals)"
                )));
            }
        }
        Ok(Arrangement {
            dim,
            field_order,
            normals,
            labels,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    /// K such that normals have coordinates in ℚ(ζ_K).
    pub fn field_order(&self) -> u64 {
        self.field_order
    }

    pub fn is_rational(&self) -> bool {
        self.field_order == 1
    }

    pub fn normals(&self) -> &[Vec<QElem>] {
        &self.normals
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("H{i}"),
        }
    }

    /// Index of the hyperplane with the given label, or a numeric index.
    pub fn find(&self, name: &str) -> Option<usize> {
        if let Some(l) = &self.labels {
            if let Some(i) = l.iter().position(|x| x == name) {
                return Some(i);
            }
        }
        name.parse::<usize>().ok().filter(|&i| i < self.len())
    }

    /// Integer normals when the arrangement is rational.
    pub fn integer_normals(&self) -> Option<Vec<Vec<BigInt>>> {
        if !self.is_rational() {
            return None;
        }
        Some(
            self.normals
                .iter()
                .map(|r| r.iter().map(|c| c[0].to_integer()).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> Arc<CycloField> {
        cyclo(self.field_order)
    }

    /// Rank of a set of normals.
    pub fn rank_of(&self, idx: &[usize]) -> usize {
        let rows: Vec<Vec<QElem>> = idx.iter().map(|&i| self.normals[i].clone()).collect();
        self.field().rank_q(&rows)
    }

    pub fn rank(&self) -> usize {
        let all: Vec<usize> = (0..self.len()).collect();
        self.rank_of(&all)
    }

    /// All maximal rank-2 flats, sorted by their hyperplane index lists.
    pub fn rank2_flats(&self) -> Vec<Flat2> {
        let n = self.len();
        let field = self.field();
        let mut covered = vec![vec![false; n]; n];
        let mut flats = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if covered[i][j] {
                    continue;
                }
                let mut members = vec![i, j];
                for k in j + 1..n {
                    if !covered[i][k] && self.rank_of(&[i, j, k]) == 2 {
                        members.push(k);
                    }
                }
                for a in 0..members.len() {
                    for b in a + 1..members.len() {
                        covered[members[a]][members[b]] = true;
                    }
                }
                let basis = nullspace(
                    &field,
                    &[self.normals[i].clone(), self.normals[j].clone()],
                    self.dim,
                );
                flats.push(Flat2 {
                    hyperplanes: members,
                    basis,
                });
            }
        }
        flats.sort_by(|a, b| a.hyperplanes.cmp(&b.hyperplanes));
        flats
    }

    /// Removes hyperplane `i`, keeping the order of the rest.
    pub fn delete(&self, i: usize) -> Result<Arrangement> {
        ensure_input!(i < self.len(), "hyperplane index {i} out of range");
        ensure_input!(self.len() > 1, "deletion would leave an empty arrangement");
        let mut out = self.clone();
        out.normals.remove(i);
        if let Some(l) = out.labels.as_mut() {
            l.remove(i);
        }
        Ok(out)
    }

    /// Restriction to a subset of hyperplanes (in the given order).
    pub fn subarrangement(&self, idx: &[usize]) -> Result<Arrangement> {
        ensure_input!(!idx.is_empty(), "empty subarrangement");
        for &i in idx {
            ensure_input!(i < self.len(), "hyperplane index {i} out of range");
        }
        Ok(Arrangement {
            dim: self.dim,
            field_order: self.field_order,
            normals: idx.iter().map(|&i| self.normals[i].clone()).collect(),
            labels: self
                .labels
                .as_ref()
                .map(|l| idx.iter().map(|&i| l[i].clone()).collect()),
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        ensure_input!(labels.len() == self.len(), "label count mismatch");
        self.labels = Some(labels);
        Ok(self)
    }

    /// Poincaré polynomial of the projectivized complement, coefficients from degree 0.
    pub fn os_poincare_rank3(&self) -> Result<Vec<i64>> {
        let rank = self.rank();
        if rank > 3 {
            return Err(Error::input(format!(
                "Poincaré polynomial only computed for rank <= 3 (rank is {rank})"
            )));
        }
        let n = self.len() as i64;
        let b2m: i64 = self.rank2_flats().iter().map(|f| f.size() as i64 - 1).sum();
        let mut out = vec![1, n - 1, b2m - (n - 1)];
        while out.len() > 1 && *out.last().unwrap() == 0 {
            out.pop();
        }
        Ok(out)
    }

    /// Euler characteristic of the projectivized complement (rank ≤ 3).
    pub fn euler_characteristic(&self) -> Result<i64> {
        let p = self.os_poincare_rank3()?;
        Ok(p.iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 0 { *c } else { -c })
            .sum())
    }

    /// Linear forms as strings in variables x1..xℓ.
    pub fn defining_factors(&self) -> Vec<String> {
        self.normals
            .iter()
            .map(|row| linear_form(row, self.field_order))
            .collect()
    }
}

pub(crate) fn cyclo(k: u64) -> Arc<CycloField> {
    match field_context(0, k).expect("characteristic 0 context") {
        FieldCtx::Rational(f) => f,
        FieldCtx::Finite(_) => unreachable!(),
    }
}

fn is_zero_q(e: &QElem) -> bool {
    e.iter().all(|c| c.is_zero())
}

fn normalize(field: &CycloField, row: Vec<QElem>) -> Option<Vec<QElem>> {
    let lead = row.iter().position(|c| !is_zero_q(c))?;
    if field.degree() == 1 {
        let mut l = BigInt::one();
        for c in &row {
            l = l.lcm(c[0].denom());
        }
        let ints: Vec<BigInt> = row.iter().map(|c| (&c[0] * &l).to_integer()).collect();
        let mut g = BigInt::zero();
        for x in &ints {
            g = g.gcd(x);
        }
        if ints[lead].is_negative() {
            g = -g;
        }
        return Some(
            ints.into_iter()
                .map(|x| vec![BigRational::from_integer(x / &g)])
                .collect(),
        );
    }
    let inv = field.inv_q(&row[lead])?;
    Some(row.iter().map(|c| field.mul_q(c, &inv)).collect())
}

/// Basis of the common kernel of the given linear forms.
pub(crate) fn nullspace(field: &CycloField, rows: &[Vec<QElem>], dim: usize) -> Vec<Vec<QElem>> {
    let d = field.degree();
    let zero = || vec![BigRational::zero(); d];
    let mut m: Vec<Vec<QElem>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..dim {
        let Some(p) = (r..m.len()).find(|&i| !is_zero_q(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = field.inv_q(&m[r][c]).unwrap();
        let prow: Vec<QElem> = m[r].iter().map(|x| field.mul_q(x, &inv)).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !is_zero_q(&row[c]) {
                let f = row[c].clone();
                for j in 0..dim {
                    let s = field.mul_q(&f, &prow[j]);
                    row[j] = row[j].iter().zip(&s).map(|(a, b)| a - b).collect();
                }
            }
        }
        m[r] = prow;
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..dim {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![zero(); dim];
        let mut one = zero();
        one[0] = BigRational::one();
        v[free] = one;
        for (k, &pc) in pivots.iter().enumerate() {
            v[pc] = m[k][free].iter().map(|x| -x).collect();
        }
        basis.push(v);
    }
    basis
}

/// Renders an element of ℚ(ζ_K) as a coefficient string.
pub fn format_field_elem(e: &QElem) -> String {
    let terms: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| match i {
            0 => c.to_string(),
            1 => format!("{c}*z"),
            _ => format!("{c}*z^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn linear_form(row: &[QElem], field_order: u64) -> String {
    let mut out = String::new();
    for (i, c) in row.iter().enumerate() {
        if is_zero_q(c) {
            continue;
        }
        let var = format!("x{}", i + 1);
        if field_order == 1 {
            let v = &c[0];
            let neg = v.is_negative();
            let a = v.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if a.is_one() {
                out.push_str(&var);
            } else {
                out.push_str(&format!("{a}*{var}"));
            }
        } else {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            out.push_str(&format!("({})*{var}", format_field_elem(c)));
        }
    }
    out
}

/// The pencil Pl_n of n lines through the origin of ℚ² (n ≥ 2), or the single point
/// arrangement in ℚ¹ for n = 1. The first line is x1 = 0.
pub fn pencil(n: usize) -> Result<Arrangement> {
    ensure_input!(n >= 1, "pencil needs at least one line");
    if n == 1 {
        return Arrangement::from_integer_rows(&[vec![1]], None);
    }
    let mut rows = vec![vec![1, 0], vec![0, 1]];
    let mut j = 1i64;
    while rows.len() < n {
        rows.push(vec![1, j]);
        if rows.len() < n {
            rows.push(vec![1, -j]);
        }
        j += 1;
    }
    Arrangement::from_integer_rows(&rows, None)
}
