#![allow(dead_code)]

use std::path::PathBuf;

use cyclocover::arrangement::Arrangement;
use cyclocover::fpgroups::{Character, Presentation};
use proptest::prelude::*;

pub fn fixture(name: &str) -> serde_json::Value {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name);
    cyclocover::io::read_json(p).unwrap()
}

pub fn deleted_b3() -> Arrangement {
    cyclocover::io::parse_arrangement(&fixture("deleted_b3.json")).unwrap()
}

pub fn braid() -> Arrangement {
    cyclocover::io::parse_arrangement(&fixture("braid.json")).unwrap()
}

fn letter(g: usize) -> impl Strategy<Value = i32> {
    (1..=g as i32, any::<bool>()).prop_map(|(i, inv)| if inv { -i } else { i })
}

/// A presentation on at most three generators with at most three relators, together with a
/// surjective character χ of order r ≤ 6 (χ(x₁) = 1) that kills every relator.
pub fn presentation_with_character() -> impl Strategy<Value = (Presentation, Character)> {
    (1usize..=3, 2u64..=6)
        .prop_flat_map(|(g, r)| {
            (
                Just(g),
                Just(r),
                prop::collection::vec(0..r, g - 1),
                prop::collection::vec(prop::collection::vec(letter(g), 1..=8), 0..=3),
            )
        })
        .prop_map(|(g, r, rest, words)| {
            let mut e = vec![1i64];
            e.extend(rest.iter().map(|&x| x as i64));
            let chi = Character::new(r, &e).unwrap();
            let rels = words
                .into_iter()
                .map(|mut w| {
                    let fix = (r - chi.eval(&w)) % r;
                    w.extend(std::iter::repeat_n(1, fix as usize));
                    w
                })
                .collect();
            (Presentation::new(g, rels).unwrap(), chi)
        })
}

/// Builds a simple arrangement from candidate normals, skipping zero rows and rows
/// proportional to earlier ones.
pub fn simple_arrangement(rows: &[Vec<i64>]) -> Option<Arrangement> {
    let mut kept: Vec<Vec<i64>> = Vec::new();
    for r in rows {
        if r.iter().all(|&c| c == 0) {
            continue;
        }
        let mut trial = kept.clone();
        trial.push(r.clone());
        if Arrangement::from_integer_rows(&trial, None).is_ok() {
            kept = trial;
        }
    }
    if kept.is_empty() {
        return None;
    }
    Arrangement::from_integer_rows(&kept, None).ok()
}

/// Real rank-3 arrangements of 4 to 8 planes with normals in [-2, 2]³.
pub fn real_rank3_arrangement() -> impl Strategy<Value = Arrangement> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 4..=10)
        .prop_filter_map("needs at least four planes of rank 3", |rows| {
            simple_arrangement(&rows).filter(|a| a.len() >= 4 && a.len() <= 8 && a.rank() == 3)
        })
}

#[derive(Clone, Debug)]
pub enum ElementaryOp {
    AddRow(usize, usize, i64),
    AddCol(usize, usize, i64),
    SwapRows(usize, usize),
    SwapCols(usize, usize),
    NegateRow(usize),
}

pub fn elementary_ops(
    rows: usize,
    cols: usize,
    len: usize,
) -> impl Strategy<Value = Vec<ElementaryOp>> {
    let op = prop_oneof![
        (0..rows, 0..rows, -3i64..=3).prop_map(|(i, j, c)| ElementaryOp::AddRow(i, j, c)),
        (0..cols, 0..cols, -3i64..=3).prop_map(|(i, j, c)| ElementaryOp::AddCol(i, j, c)),
        (0..rows, 0..rows).prop_map(|(i, j)| ElementaryOp::SwapRows(i, j)),
        (0..cols, 0..cols).prop_map(|(i, j)| ElementaryOp::SwapCols(i, j)),
        (0..rows).prop_map(ElementaryOp::NegateRow),
    ];
    prop::collection::vec(op, 0..=len)
}

pub fn apply_ops(m: &mut [Vec<i64>], ops: &[ElementaryOp]) {
    for op in ops {
        match *op {
            ElementaryOp::AddRow(i, j, c) if i != j => {
                let src = m[j].clone();
                for (a, b) in m[i].iter_mut().zip(src) {
                    *a += c * b;
                }
            }
            ElementaryOp::AddCol(i, j, c) if i != j => {
                for row in m.iter_mut() {
                    row[i] += c * row[j];
                }
            }
            ElementaryOp::SwapRows(i, j) => m.swap(i, j),
            ElementaryOp::SwapCols(i, j) => {
                for row in m.iter_mut() {
                    row.swap(i, j);
                }
            }
            ElementaryOp::NegateRow(i) => m[i].iter_mut().for_each(|x| *x = -*x),
            _ => {}
        }
    }
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Rank as the size of the largest minor that is nonzero (modulo `p` when p > 0), by
/// cofactor expansion.
pub fn minor_rank(m: &[Vec<i64>], p: i128) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    for k in (1..=rows.min(cols)).rev() {
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| m[i][j] as i128).collect())
                    .collect();
                let d = det(&sub);
                if (p == 0 && d != 0) || (p > 0 && d.rem_euclid(p) != 0) {
                    return k;
                }
            }
        }
    }
    0
}

/// Number of points of P²(F_q) on none of the lines, for integer normals read mod q.
pub fn complement_points(a: &Arrangement, q: i64) -> i64 {
    let normals: Vec<Vec<i64>> = a
        .integer_normals()
        .unwrap()
        .iter()
        .map(|r| {
            r.iter()
                .map(|c| c.to_string().parse::<i64>().unwrap())
                .collect()
        })
        .collect();
    let mut points = Vec::new();
    for y in 0..q {
        for z in 0..q {
            points.push([1, y, z]);
        }
    }
    for z in 0..q {
        points.push([0, 1, z]);
    }
    points.push([0, 0, 1]);
    points
        .iter()
        .filter(|pt| {
            normals
                .iter()
                .all(|n| (n[0] * pt[0] + n[1] * pt[1] + n[2] * pt[2]).rem_euclid(q) != 0)
        })
        .count() as i64
}
