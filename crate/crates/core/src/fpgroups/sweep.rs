use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Presentation, Word};
use crate::algebra::IntMatrix;
use crate::arrangement::Arrangement;
use crate::error::{ensure_input, Error, Result};

struct Slice {
    /// Line h: y = slope[h]·x + icpt[h].
    slope: Vec<BigRational>,
    icpt: Vec<BigRational>,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn moment(t: i64, len: usize, shift: i64) -> Vec<BigInt> {
    let mut v = Vec::with_capacity(len);
    let mut acc = BigInt::from(1);
    for i in 0..len {
        v.push(&acc + BigInt::from(shift * (i as i64 % 3 - 1)));
        acc *= t;
    }
    v
}

/// Candidate triples (p0, u, v) spanning the slicing 3-space, in a fixed order.
fn candidates(dim: usize) -> impl Iterator<Item = [Vec<BigInt>; 3]> {
    let nodes: Vec<i64> = vec![2, -3, 5, 7, -11, 13, 4, -9, 17, 19, -23, 29, 6, -31];
    let mut out = Vec::new();
    for shift in 0..3i64 {
        for a in 0..nodes.len() {
            for b in 0..nodes.len() {
                for c in 0..nodes.len() {
                    if a != b && b != c && a != c {
                        out.push([
                            moment(nodes[a], dim, shift),
                            moment(nodes[b], dim, -shift),
                            moment(nodes[c], dim, 2 * shift),
                        ]);
                    }
                }
            }
        }
    }
    out.into_iter()
}

/// Restricted coefficients (n·p0, n·u, n·v) of every hyperplane, if the slice is generic.
fn try_slice(
    normals: &[Vec<BigInt>],
    flats: &[Vec<usize>],
    basis3: &[usize],
    c: &[Vec<BigInt>; 3],
) -> Option<Slice> {
    let coef: Vec<[BigInt; 3]> = normals
        .iter()
        .map(|n| [dot(n, &c[0]), dot(n, &c[1]), dot(n, &c[2])])
        .collect();
    let m: Vec<Vec<BigInt>> = basis3.iter().map(|&i| coef[i].to_vec()).collect();
    if IntMatrix::new(3, 3, m).ok()?.determinant().ok()?.is_zero() {
        return None;
    }
    if coef.iter().any(|k| k[2].is_zero()) {
        return None;
    }
    let slope: Vec<BigRational> = coef
        .iter()
        .map(|k| -BigRational::new(k[1].clone(), k[2].clone()))
        .collect();
    let icpt: Vec<BigRational> = coef
        .iter()
        .map(|k| -BigRational::new(k[0].clone(), k[2].clone()))
        .collect();
    let mut xs = Vec::with_capacity(flats.len());
    for f in flats {
        let (h, k) = (f[0], f[1]);
        let ds = &slope[h] - &slope[k];
        // Parallel lines would meet on the line at infinity.
        if ds.is_zero() {
            return None;
        }
        xs.push((&icpt[k] - &icpt[h]) / ds);
    }
    let mut sorted = xs.clone();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(Slice { slope, icpt })
}

/// Presentation of π₁ of the complement of a real rank-3 arrangement, from a wiring
/// diagram of a generic planar section. Generator h+1 is the meridian of hyperplane h.
/// With `projective`, adds the relator killing the loop around all lines, giving π₁(U).
pub fn sweep_presentation(a: &Arrangement, projective: bool) -> Result<Presentation> {
    let normals = a
        .integer_normals()
        .ok_or_else(|| Error::input("sweep presentations need real (rational) normals"))?;
    ensure_input!(
        a.rank() == 3,
        "sweep presentations need rank 3 (rank is {})",
        a.rank()
    );
    let n = a.len();
    let flats: Vec<Vec<usize>> = a.rank2_flats().into_iter().map(|f| f.hyperplanes).collect();
    let mut basis3 = Vec::new();
    for i in 0..n {
        let mut trial = basis3.clone();
        trial.push(i);
        if a.rank_of(&trial) == trial.len() {
            basis3 = trial;
        }
        if basis3.len() == 3 {
            break;
        }
    }
    let slice = candidates(a.dim())
        .find_map(|c| try_slice(&normals, &flats, &basis3, &c))
        .ok_or_else(|| Error::invariant("no generic planar section found"))?;

    let mut vertices: Vec<(BigRational, &Vec<usize>)> = flats
        .iter()
        .map(|f| {
            let (h, k) = (f[0], f[1]);
            let x = (&slice.icpt[k] - &slice.icpt[h]) / (&slice.slope[h] - &slice.slope[k]);
            (x, f)
        })
        .collect();
    vertices.sort_by(|p, q| p.0.cmp(&q.0));

    // Positions bottom to top; at x = -inf the steepest line is lowest.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&h, &k| slice.slope[k].cmp(&slice.slope[h]));
    let mut words: Vec<Word> = order.iter().map(|&h| vec![h as i32 + 1]).collect();
    let initial_top_down: Word = order.iter().rev().map(|&h| h as i32 + 1).collect();

    let mut relators = Vec::new();
    for (x, members) in &vertices {
        let mut pos: Vec<usize> = members
            .iter()
            .map(|h| order.iter().position(|l| l == h).unwrap())
            .collect();
        pos.sort_unstable();
        let (i, j) = (pos[0], pos[pos.len() - 1]);
        if j - i + 1 != pos.len() {
            return Err(Error::invariant(format!(
                "lines through the vertex at x = {x} are not adjacent in the wiring diagram"
            )));
        }
        // Factors top to bottom: c_j, ..., c_i.
        let factors: Vec<Word> = (i..=j).rev().map(|k| words[k].clone()).collect();
        let s = factors.len();
        let rotation = |t: usize| -> Word {
            let mut w = Vec::new();
            for q in 0..s {
                w.extend_from_slice(&factors[(q + s - t) % s]);
            }
            w
        };
        for t in 0..s - 1 {
            let mut rel = rotation(t);
            rel.extend(super::invert_word(&rotation(t + 1)));
            relators.push(rel);
        }
        let mut new_words = words.clone();
        for k in i..=j {
            let mut above: Word = Vec::new();
            for q in (k + 1..=j).rev() {
                above.extend_from_slice(&words[q]);
            }
            let mut w = above.clone();
            w.extend_from_slice(&words[k]);
            w.extend(super::invert_word(&above));
            new_words[i + j - k] = super::reduce_word(&w);
        }
        words = new_words;
        order[i..=j].reverse();
    }
    if projective {
        relators.push(initial_top_down);
    }
    let before = relators.len();
    let p = Presentation::new(n, relators)?;
    if p.relators.len() != before {
        return Err(Error::invariant("sweep produced a trivial relator"));
    }
    Ok(p)
}
