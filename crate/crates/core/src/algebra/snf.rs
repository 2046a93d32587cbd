//! Smith normal form with minimal-absolute-value pivoting and full reduction.
//!
//! Elimination runs on checked `i64` first and restarts on arbitrary-precision integers if
//! any intermediate value overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfResult {
    /// Nonzero diagonal entries d₁ | d₂ | … | d_s, all positive.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
    /// `(U, V)` with `U·M·V = D`, when requested.
    pub transforms: Option<(IntMatrix, IntMatrix)>,
}

impl SnfResult {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn abs_key(&self) -> BigInt;
    fn lt_abs(&self, other: &Self) -> bool;
    fn is_neg(&self) -> bool;
    fn neg(&self) -> Option<Self>;
    fn add(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    /// Quotient with remainder of least nonnegative absolute value tendency (truncated).
    fn quot(&self, o: &Self) -> Self;
    fn divides(&self, o: &Self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_key(&self) -> BigInt {
        BigInt::from(*self).abs()
    }
    fn lt_abs(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn quot(&self, o: &Self) -> Self {
        self / o
    }
    fn divides(&self, o: &Self) -> bool {
        o % self == 0
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_key(&self) -> BigInt {
        self.abs()
    }
    fn lt_abs(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn quot(&self, o: &Self) -> Self {
        self / o
    }
    fn divides(&self, o: &Self) -> bool {
        o.is_multiple_of(self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Work<T> {
    a: Vec<Vec<T>>,
    u: Option<Vec<Vec<T>>>,
    v: Option<Vec<Vec<T>>>,
}

/// row_i += q·row_k (on `a` and `u`).
fn row_axpy<T: Scalar>(w: &mut Work<T>, i: usize, k: usize, q: &T, from: usize) -> Option<()> {
    let (src, dst) = two_rows(&mut w.a, k, i);
    for j in from..src.len() {
        if !src[j].is_zero() {
            dst[j] = dst[j].add(&q.mul(&src[j])?)?;
        }
    }
    if let Some(u) = w.u.as_mut() {
        let (src, dst) = two_rows(u, k, i);
        for j in 0..src.len() {
            if !src[j].is_zero() {
                dst[j] = dst[j].add(&q.mul(&src[j])?)?;
            }
        }
    }
    Some(())
}

/// col_j += q·col_k (on `a` and `v`), restricted to rows ≥ `from` in `a`.
fn col_axpy<T: Scalar>(w: &mut Work<T>, j: usize, k: usize, q: &T, from: usize) -> Option<()> {
    for row in w.a.iter_mut().skip(from) {
        if !row[k].is_zero() {
            let add = q.mul(&row[k])?;
            row[j] = row[j].add(&add)?;
        }
    }
    if let Some(v) = w.v.as_mut() {
        for row in v.iter_mut() {
            if !row[k].is_zero() {
                let add = q.mul(&row[k])?;
                row[j] = row[j].add(&add)?;
            }
        }
    }
    Some(())
}

fn two_rows<T>(m: &mut [Vec<T>], src: usize, dst: usize) -> (&Vec<T>, &mut Vec<T>) {
    assert_ne!(src, dst);
    if src < dst {
        let (lo, hi) = m.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    }
}

fn swap_rows<T>(w: &mut Work<T>, i: usize, k: usize) {
    w.a.swap(i, k);
    if let Some(u) = w.u.as_mut() {
        u.swap(i, k);
    }
}

fn swap_cols<T>(w: &mut Work<T>, j: usize, k: usize) {
    for row in w.a.iter_mut() {
        row.swap(j, k);
    }
    if let Some(v) = w.v.as_mut() {
        for row in v.iter_mut() {
            row.swap(j, k);
        }
    }
}

fn identity<T: Scalar>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect()
}

fn run<T: Scalar>(a: Vec<Vec<T>>, cols: usize, transforms: bool) -> Option<Work<T>> {
    let rows = a.len();
    let mut w = Work {
        a,
        u: transforms.then(|| identity(rows)),
        v: transforms.then(|| identity(cols)),
    };
    let mut t = 0;
    while t < rows && t < cols {
        // minimal nonzero |entry| in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &w.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.lt_abs(&w.a[bi][bj])) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        if bi != t {
            swap_rows(&mut w, t, bi);
        }
        if bj != t {
            swap_cols(&mut w, t, bj);
        }
        loop {
            let p = w.a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let q = w.a[i][t].quot(&p).neg()?;
                row_axpy(&mut w, i, t, &q, t)?;
                if !w.a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let q = w.a[t][j].quot(&p).neg()?;
                col_axpy(&mut w, j, t, &q, t)?;
                if !w.a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // bring the smallest remainder into the pivot position
                let mut best: Option<(bool, usize)> = None;
                let mut best_val = p.clone();
                for i in t + 1..rows {
                    let x = &w.a[i][t];
                    if !x.is_zero() && x.lt_abs(&best_val) {
                        best = Some((true, i));
                        best_val = x.clone();
                    }
                }
                for j in t + 1..cols {
                    let x = &w.a[t][j];
                    if !x.is_zero() && x.lt_abs(&best_val) {
                        best = Some((false, j));
                        best_val = x.clone();
                    }
                }
                match best {
                    Some((true, i)) => swap_rows(&mut w, t, i),
                    Some((false, j)) => swap_cols(&mut w, t, j),
                    None => {}
                }
                continue;
            }
            // full reduction: the pivot must divide the whole trailing block
            let mut bad = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    let x = &w.a[i][j];
                    if !x.is_zero() && !p.divides(x) {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                Some(i) => {
                    row_axpy(&mut w, t, i, &T::one(), t)?;
                }
                None => break,
            }
        }
        if w.a[t][t].is_neg() {
            for x in w.a[t].iter_mut() {
                *x = x.neg()?;
            }
            if let Some(u) = w.u.as_mut() {
                for x in u[t].iter_mut() {
                    *x = x.neg()?;
                }
            }
        }
        t += 1;
    }
    Some(w)
}

fn finish<T: Scalar>(w: Work<T>, rows: usize, cols: usize) -> SnfResult {
    let mut factors = Vec::new();
    for i in 0..rows.min(cols) {
        let x = &w.a[i][i];
        if x.is_zero() {
            break;
        }
        factors.push(x.abs_key());
    }
    let to_mat = |m: Vec<Vec<T>>, n: usize| {
        IntMatrix::new(
            n,
            n,
            m.into_iter()
                .map(|r| r.iter().map(|x| x.to_big()).collect())
                .collect(),
        )
        .expect("square transform")
    };
    let transforms = match (w.u, w.v) {
        (Some(u), Some(v)) => Some((to_mat(u, rows), to_mat(v, cols))),
        _ => None,
    };
    SnfResult {
        rank: factors.len(),
        invariant_factors: factors,
        transforms,
    }
}

/// Smith normal form of an integer matrix, optionally with unimodular transforms.
pub fn smith_normal_form(m: &IntMatrix, transforms: bool) -> SnfResult {
    let rows = m.rows();
    let cols = m.cols();
    let small: Option<Vec<Vec<i64>>> = m
        .entries()
        .iter()
        .map(|r| r.iter().map(|x| x.to_i64()).collect())
        .collect();
    if let Some(a) = small {
        if let Some(w) = run(a, cols, transforms) {
            return finish(w, rows, cols);
        }
    }
    let w = run(m.entries().to_vec(), cols, transforms).expect("big integers never overflow");
    finish(w, rows, cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(rows: &[Vec<i64>]) -> Vec<i64> {
        smith_normal_form(&IntMatrix::from_i64(rows), false)
            .invariant_factors
            .iter()
            .map(|d| d.to_i64().unwrap())
            .collect()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(
            factors(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]),
            vec![1, 1, 1]
        );
        assert_eq!(factors(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(factors(&[vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
    }

    #[test]
    fn divisibility_chain_enforced() {
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(
            factors(&[vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 10]]),
            vec![2, 2, 60]
        );
    }

    #[test]
    fn transforms_reassemble() {
        let m = IntMatrix::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let r = smith_normal_form(&m, true);
        let (u, v) = r.transforms.clone().unwrap();
        let d = u.mul(&m).mul(&v);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j && i < r.rank {
                    r.invariant_factors[i].clone()
                } else {
                    <BigInt as num_traits::Zero>::zero()
                };
                assert_eq!(d.get(i, j), &expect);
            }
        }
        assert_eq!(
            u.determinant().unwrap().abs(),
            <BigInt as num_traits::One>::one()
        );
        assert_eq!(
            v.determinant().unwrap().abs(),
            <BigInt as num_traits::One>::one()
        );
        assert_eq!(
            r.invariant_factors,
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = i64::MAX / 2;
        let f = factors(&[vec![big, big - 1], vec![big - 1, big - 2]]);
        assert_eq!(f, vec![1, 1]);
    }
}
