use std::f64::consts::PI;

use num_complex::Complex64;

use super::{invert_word, reduce_word, Presentation, Word};
use crate::error::{ensure_input, Error, Result};

const EPS: f64 = 0.5;
const ETA: f64 = 0.2;
const THETA: f64 = 0.1234;
const MAX_STEP: f64 = 1.0 / 1024.0;

type Path = Box<dyn Fn(f64) -> Complex64>;

struct Tracker {
    p: usize,
    rot: Complex64,
}

/// Positions k where `next` swaps k and k+1, if `next` is `order` composed with disjoint
/// adjacent transpositions.
fn adjacent_swaps(order: &[usize], next: &[usize]) -> Option<Vec<usize>> {
    let mut out = Vec::new();
    let mut k = 0;
    while k < order.len() {
        if order[k] == next[k] {
            k += 1;
        } else if k + 1 < order.len() && order[k] == next[k + 1] && order[k + 1] == next[k] {
            out.push(k);
            k += 2;
        } else {
            return None;
        }
    }
    Some(out)
}

impl Tracker {
    /// Fiber punctures over y, in label order: ζ^a·y then ζ^b, rotated so real parts separate.
    fn points(&self, y: Complex64) -> Vec<Complex64> {
        let mut v = Vec::with_capacity(2 * self.p);
        for a in 0..self.p {
            v.push(root(self.p, a) * y * self.rot);
        }
        for b in 0..self.p {
            v.push(root(self.p, b) * self.rot);
        }
        v
    }

    fn order(&self, y: Complex64) -> Vec<usize> {
        let pts = self.points(y);
        let mut idx: Vec<usize> = (0..pts.len()).collect();
        idx.sort_by(|&i, &j| pts[i].re.partial_cmp(&pts[j].re).unwrap());
        idx
    }

    fn cross(
        &self,
        path: &Path,
        span: (f64, f64),
        k: usize,
        order: &mut [usize],
        words: &mut [Word],
    ) {
        let (left, right) = (order[k], order[k + 1]);
        let (mut lo, mut hi) = span;
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            let pts = self.points(path(mid));
            if pts[left].re < pts[right].re {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let pts = self.points(path(0.5 * (lo + hi)));
        let (ak, ak1) = (words[k].clone(), words[k + 1].clone());
        if pts[left].im > pts[right].im {
            words[k] = ak1.clone();
            words[k + 1] = conj(&ak1, &ak);
        } else {
            words[k] = conj(&invert_word(&ak), &ak1);
            words[k + 1] = ak;
        }
        order.swap(k, k + 1);
    }

    /// Transports the vertical fiber loops along a base path, recording each exchange of
    /// real-part order as a Hurwitz move on the position words.
    fn transport(&self, path: &Path, order: &mut Vec<usize>, words: &mut [Word]) -> Result<()> {
        let mut t: f64 = 0.0;
        let mut h: f64 = MAX_STEP;
        while t < 1.0 {
            let t1 = (t + h).min(1.0);
            let next = self.order(path(t1));
            let diff: Vec<usize> = (0..order.len()).filter(|&i| order[i] != next[i]).collect();
            if diff.is_empty() {
                t = t1;
                h = (h * 2.0).min(MAX_STEP);
                continue;
            }
            let swaps = adjacent_swaps(order, &next);
            match swaps {
                Some(sw) if sw.len() == 1 || h < 1e-7 => {
                    for k in sw {
                        self.cross(path, (t, t1), k, order, words);
                    }
                    t = t1;
                }
                _ => {
                    h *= 0.5;
                    if h < 1e-12 {
                        return Err(Error::invariant(format!(
                            "braid tracking failed to separate crossings at t = {t}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn root(p: usize, k: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / p as f64)
}

/// u·w·u⁻¹.
fn conj(u: &[i32], w: &[i32]) -> Word {
    let mut out = u.to_vec();
    out.extend_from_slice(w);
    out.extend(invert_word(u));
    reduce_word(&out)
}

fn base_loops(p: usize) -> Vec<Vec<Path>> {
    let mut loops: Vec<Vec<Path>> = vec![vec![Box::new(|t: f64| {
        Complex64::from_polar(EPS, 2.0 * PI * t)
    })]];
    for c in 0..p {
        let phi = 2.0 * PI * c as f64 / p as f64;
        let z = root(p, c);
        let mut segs: Vec<Path> = Vec::new();
        if c > 0 {
            segs.push(Box::new(move |t| Complex64::from_polar(EPS, phi * t)));
        }
        segs.push(Box::new(move |t| z * (EPS + t * (1.0 - ETA - EPS))));
        segs.push(Box::new(move |t| {
            z * (1.0 + Complex64::from_polar(ETA, PI + 2.0 * PI * t))
        }));
        segs.push(Box::new(move |t| z * (1.0 - ETA - t * (1.0 - ETA - EPS))));
        if c > 0 {
            segs.push(Box::new(move |t| {
                Complex64::from_polar(EPS, phi * (1.0 - t))
            }));
        }
        loops.push(segs);
    }
    loops
}

/// Presentation of π₁ of the projective complement of the deleted monomial arrangement
/// {y, z, x − ζ^a y, x − ζ^b z, y − ζ^c z} (ζ = e^{2πi/p}), with generators in that order.
///
/// Built from the fibration (x, y) ↦ y of the chart z = 1: the fiber is ℂ minus the 2p
/// points ζ^a·y, ζ^b and the base is ℂ minus {0, ζ^c}. Braids are tracked numerically
/// along explicit base loops; only the combinatorics of real-part exchanges is used.
pub fn monomial_deletion_presentation(p: u64) -> Result<Presentation> {
    ensure_input!(p >= 2, "monomial arrangements need p >= 2");
    ensure_input!(p <= 64, "monomial arrangements limited to p <= 64");
    let p = p as usize;
    let tr = Tracker {
        p,
        rot: Complex64::from_polar(1.0, -THETA),
    };
    let n = 3 * p + 2;
    let fiber_gen = |label: usize| -> i32 { (2 + label) as i32 + 1 };
    let base_gen = |loop_idx: usize| -> i32 {
        if loop_idx == 0 {
            1
        } else {
            (2 + 2 * p + loop_idx - 1) as i32 + 1
        }
    };
    let y0 = Complex64::new(EPS, 0.0);
    let start = tr.order(y0);
    let mut relators = Vec::new();
    for (li, segs) in base_loops(p).iter().enumerate() {
        let mut order = start.clone();
        let mut words: Vec<Word> = start.iter().map(|&l| vec![fiber_gen(l)]).collect();
        for seg in segs {
            tr.transport(seg, &mut order, &mut words)?;
        }
        if order != start {
            return Err(Error::invariant(
                "fiber punctures did not return to their positions",
            ));
        }
        let g = base_gen(li);
        for (pos, &label) in start.iter().enumerate() {
            let mut rel = vec![g, fiber_gen(label), -g];
            rel.extend(invert_word(&words[pos]));
            relators.push(rel);
        }
    }
    let mut zrel = vec![2];
    zrel.extend((1..=n as i32).filter(|&i| i != 2));
    relators.push(zrel);
    Presentation::new(n, relators)
}
