//! Multinets, pointed multinets, and the small-pencil data attached to a deletion.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::numtheory::{gcd, prime_factors};
use crate::arrangement::{cyclo, Arrangement, Flat2};
use crate::error::{ensure_input, Error, Result};

/// Partition into classes, multiplicities, and base locus (flats as sorted hyperplane lists).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multinet {
    pub parts: Vec<Vec<usize>>,
    pub m: Vec<u64>,
    pub base_locus: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointedMultinet {
    pub multinet: Multinet,
    pub hyperplane: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultinetReport {
    pub valid: bool,
    pub classes: usize,
    /// Class weight d when all classes agree.
    pub weight: Option<u64>,
    /// (flat, n_X) for base-locus flats with a consistent n_X.
    pub n_x: Vec<(Vec<usize>, Option<u64>)>,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointedVerdict {
    Valid(PointedMultinet),
    Invalid(Vec<String>),
}

/// Direction data of the pencil supported by the deletion 𝒜 ∖ {H}.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SmallPencilCert {
    pub deleted_index: usize,
    pub multiplier: u64,
    pub multiplier_primes: Vec<u64>,
    /// mult(Q₂) − mult(Q₃) on the deletion.
    pub raw_direction: Vec<i64>,
    /// Same generator, signed so the first nonzero entry is positive.
    pub direction: Vec<i64>,
    pub translate_order: u64,
    /// (index in the deletion, multiplicity) for each of Q₁, Q₂, Q₃.
    pub class_polynomials: Vec<Vec<(usize, u64)>>,
    #[serde(skip)]
    pub deletion: Option<Arrangement>,
}

impl Multinet {
    pub fn new(parts: Vec<Vec<usize>>, m: Vec<u64>, base_locus: Vec<Vec<usize>>) -> Self {
        let base_locus = base_locus
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f
            })
            .collect();
        Multinet {
            parts,
            m,
            base_locus,
        }
    }

    pub fn classes(&self) -> usize {
        self.parts.len()
    }

    pub fn class_of(&self, h: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(&h))
    }
}

fn check_partition(a: &Arrangement, m: &Multinet) -> Result<()> {
    let n = a.len();
    ensure_input!(
        m.m.len() == n,
        "{} multiplicities for {} hyperplanes",
        m.m.len(),
        n
    );
    let mut seen = vec![false; n];
    for part in &m.parts {
        for &h in part {
            ensure_input!(h < n, "hyperplane index {h} out of range");
            ensure_input!(!seen[h], "hyperplane {h} appears in more than one class");
            seen[h] = true;
        }
    }
    if let Some(h) = seen.iter().position(|s| !s) {
        return Err(Error::input(format!("hyperplane {h} is in no class")));
    }
    Ok(())
}

/// All rank-2 flats meeting at least two classes.
pub fn complete_base_locus(a: &Arrangement, parts: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let class = |h: usize| parts.iter().position(|p| p.contains(&h));
    a.rank2_flats()
        .into_iter()
        .filter(|f| {
            let cs: BTreeSet<_> = f.hyperplanes.iter().map(|&h| class(h)).collect();
            cs.len() > 1
        })
        .map(|f| f.hyperplanes)
        .collect()
}

/// Checks the four multinet axioms, plus gcd(m) = 1 and the constraints on the number of
/// classes (k ∈ {3, 4} when |𝒳| > 1, and k = 3 when some multiplicity exceeds 1).
pub fn verify_multinet(a: &Arrangement, mn: &Multinet) -> Result<MultinetReport> {
    check_partition(a, mn)?;
    let flats = a.rank2_flats();
    let mut base: Vec<&Flat2> = Vec::new();
    for x in &mn.base_locus {
        let f = flats.iter().find(|f| &f.hyperplanes == x).ok_or_else(|| {
            Error::input(format!(
                "base-locus entry {x:?} is not a maximal rank-2 flat"
            ))
        })?;
        base.push(f);
    }
    let k = mn.classes();
    let mut violations = Vec::new();
    if k < 3 {
        violations.push(format!("need at least 3 classes, found {k}"));
    }
    if let Some(i) = mn.parts.iter().position(|p| p.is_empty()) {
        violations.push(format!("class {i} is empty"));
    }
    if mn.m.contains(&0) {
        violations.push("multiplicities must be positive".into());
    }
    if mn.m.iter().fold(0, |g, &x| gcd(g, x)) != 1 {
        violations.push("multiplicities are not coprime".into());
    }

    let weights: Vec<u64> = mn
        .parts
        .iter()
        .map(|p| p.iter().map(|&h| mn.m[h]).sum())
        .collect();
    let weight = if weights.windows(2).all(|w| w[0] == w[1]) {
        weights.first().copied()
    } else {
        violations.push(format!("(1) class weights differ: {weights:?}"));
        None
    };

    let class = |h: usize| mn.class_of(h).unwrap();
    let in_base = |f: &Flat2| mn.base_locus.contains(&f.hyperplanes);
    for f in &flats {
        let cs: BTreeSet<usize> = f.hyperplanes.iter().map(|&h| class(h)).collect();
        if cs.len() > 1 && !in_base(f) {
            violations.push(format!(
                "(2) flat {:?} meets several classes but is not in the base locus",
                f.hyperplanes
            ));
        }
    }

    let mut n_x = Vec::new();
    for f in &base {
        let per_class: Vec<u64> = (0..k)
            .map(|i| {
                f.hyperplanes
                    .iter()
                    .filter(|&&h| class(h) == i)
                    .map(|&h| mn.m[h])
                    .sum()
            })
            .collect();
        if per_class.windows(2).all(|w| w[0] == w[1]) {
            n_x.push((f.hyperplanes.clone(), per_class.first().copied()));
        } else {
            violations.push(format!(
                "(3) flat {:?} has class multiplicities {per_class:?}",
                f.hyperplanes
            ));
            n_x.push((f.hyperplanes.clone(), None));
        }
    }

    for (i, part) in mn.parts.iter().enumerate() {
        if part.len() <= 1 {
            continue;
        }
        let mut comp: Vec<usize> = (0..part.len()).collect();
        fn root(c: &mut [usize], mut x: usize) -> usize {
            while c[x] != x {
                c[x] = c[c[x]];
                x = c[x];
            }
            x
        }
        for u in 0..part.len() {
            for v in u + 1..part.len() {
                let (h, g) = (part[u].min(part[v]), part[u].max(part[v]));
                let f = flats
                    .iter()
                    .find(|f| f.contains(h) && f.contains(g))
                    .unwrap();
                if !in_base(f) {
                    let (ru, rv) = (root(&mut comp, u), root(&mut comp, v));
                    comp[ru] = rv;
                }
            }
        }
        let r0 = root(&mut comp, 0);
        if (1..part.len()).any(|u| root(&mut comp, u) != r0) {
            violations.push(format!(
                "(4) class {i} is not connected outside the base locus"
            ));
        }
    }

    if mn.base_locus.len() > 1 && !(3..=4).contains(&k) {
        violations.push(format!(
            "{k} classes with more than one base-locus flat (expected 3 or 4)"
        ));
    }
    if mn.m.iter().any(|&x| x > 1) && k != 3 {
        violations.push(format!(
            "{k} classes with a multiplicity above 1 (expected 3)"
        ));
    }

    Ok(MultinetReport {
        valid: violations.is_empty(),
        classes: k,
        weight,
        n_x,
        violations,
    })
}

/// Checks that `h` can distinguish a pointed multinet: m_H > 1 and m_H | n_X for every
/// base-locus flat X containing H.
pub fn verify_pointed(a: &Arrangement, mn: &Multinet, h: usize) -> Result<PointedVerdict> {
    ensure_input!(h < a.len(), "hyperplane index {h} out of range");
    let report = verify_multinet(a, mn)?;
    if !report.valid {
        return Err(Error::input(format!(
            "not a multinet: {}",
            report.violations.join("; ")
        )));
    }
    let mh = mn.m[h];
    let mut bad = Vec::new();
    if mh <= 1 {
        bad.push(format!("multiplicity of hyperplane {h} is {mh}, need > 1"));
    }
    for (flat, nx) in &report.n_x {
        if flat.contains(&h) {
            let nx = nx.expect("valid multinet");
            if nx % mh != 0 {
                bad.push(format!(
                    "flat {flat:?}: n_X = {nx} is not divisible by {mh}"
                ));
            }
        }
    }
    Ok(if bad.is_empty() {
        PointedVerdict::Valid(PointedMultinet {
            multinet: mn.clone(),
            hyperplane: h,
        })
    } else {
        PointedVerdict::Invalid(bad)
    })
}

/// The monomial arrangement 𝒜(p,1,3): x, y, z, x − ζ^a y, x − ζ^b z, y − ζ^c z with
/// ζ = e^{2πi/p}, and its pointed multinet with classes x^p(y^p − z^p), y^p(x^p − z^p),
/// z^p(x^p − y^p) and distinguished hyperplane x.
pub fn monomial_multinet(p: u64) -> Result<(Arrangement, PointedMultinet)> {
    ensure_input!(p >= 2, "monomial arrangements need p >= 2");
    ensure_input!(p <= 64, "monomial arrangements limited to p <= 64");
    let pu = p as usize;
    let k = if p == 2 { 1 } else { p };
    let field = cyclo(k);
    let d = field.degree();
    let c = |v: i64| {
        let mut e = vec![BigRational::zero(); d];
        e[0] = BigRational::from_integer(BigInt::from(v));
        e
    };
    let neg_zeta = |a: usize| -> Vec<BigRational> {
        if p == 2 {
            c(if a.is_multiple_of(2) { -1 } else { 1 })
        } else {
            field
                .zelem_to_q(&field.zeta_pow_z(a as i64))
                .into_iter()
                .map(|x| -x)
                .collect()
        }
    };
    let mut rows = vec![
        vec![c(1), c(0), c(0)],
        vec![c(0), c(1), c(0)],
        vec![c(0), c(0), c(1)],
    ];
    let mut labels: Vec<String> = vec!["x".into(), "y".into(), "z".into()];
    let name = |u: &str, v: &str, a: usize| -> String {
        match (p, a) {
            (_, 0) => format!("{u}-{v}"),
            (2, _) => format!("{u}+{v}"),
            _ => format!("{u}-w^{a}*{v}"),
        }
    };
    for a in 0..pu {
        rows.push(vec![c(1), neg_zeta(a), c(0)]);
        labels.push(name("x", "y", a));
    }
    for b in 0..pu {
        rows.push(vec![c(1), c(0), neg_zeta(b)]);
        labels.push(name("x", "z", b));
    }
    for cc in 0..pu {
        rows.push(vec![c(0), c(1), neg_zeta(cc)]);
        labels.push(name("y", "z", cc));
    }
    let arr = Arrangement::from_cyclotomic(k, 3, rows, Some(labels))?;
    let xy: Vec<usize> = (3..3 + pu).collect();
    let xz: Vec<usize> = (3 + pu..3 + 2 * pu).collect();
    let yz: Vec<usize> = (3 + 2 * pu..3 + 3 * pu).collect();
    let parts = vec![
        [vec![0], yz].concat(),
        [vec![1], xz].concat(),
        [vec![2], xy].concat(),
    ];
    let mut m = vec![1u64; arr.len()];
    m[0] = p;
    m[1] = p;
    m[2] = p;
    let base = complete_base_locus(&arr, &parts);
    let mn = Multinet::new(parts, m, base);
    match verify_pointed(&arr, &mn, 0)? {
        PointedVerdict::Valid(pm) => Ok((arr, pm)),
        PointedVerdict::Invalid(v) => Err(Error::invariant(format!(
            "monomial multinet failed its pointed check: {}",
            v.join("; ")
        ))),
    }
}

/// Pencil data on 𝒜' = 𝒜 ∖ {H}: with H in class Q₁, the direction of the predicted
/// translated component is mult(Q₂) − mult(Q₃), translated by a character of order m_H.
pub fn deletion_pencil_certificate(
    a: &Arrangement,
    pm: &PointedMultinet,
) -> Result<SmallPencilCert> {
    let h = pm.hyperplane;
    match verify_pointed(a, &pm.multinet, h)? {
        PointedVerdict::Valid(_) => {}
        PointedVerdict::Invalid(v) => {
            return Err(Error::input(format!(
                "not a pointed multinet: {}",
                v.join("; ")
            )))
        }
    }
    let mn = &pm.multinet;
    ensure_input!(
        mn.classes() == 3,
        "pencil certificates need 3 classes, found {}",
        mn.classes()
    );
    let ch = mn.class_of(h).unwrap();
    let others: Vec<usize> = (0..3).filter(|&i| i != ch).collect();
    let to_del = |g: usize| if g < h { g } else { g - 1 };
    let mut raw = vec![0i64; a.len() - 1];
    for &g in &mn.parts[others[0]] {
        raw[to_del(g)] += mn.m[g] as i64;
    }
    for &g in &mn.parts[others[1]] {
        raw[to_del(g)] -= mn.m[g] as i64;
    }
    let mut direction = raw.clone();
    if direction.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        direction.iter_mut().for_each(|x| *x = -*x);
    }
    let class_polynomials = [ch, others[0], others[1]]
        .iter()
        .map(|&i| {
            let mut v: Vec<(usize, u64)> = mn.parts[i]
                .iter()
                .filter(|&&g| g != h)
                .map(|&g| (to_del(g), mn.m[g]))
                .collect();
            v.sort_unstable();
            v
        })
        .collect();
    let mh = mn.m[h];
    Ok(SmallPencilCert {
        deleted_index: h,
        multiplier: mh,
        multiplier_primes: prime_factors(mh),
        raw_direction: raw,
        direction,
        translate_order: mh,
        class_polynomials,
        deletion: Some(a.delete(h)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b3() -> (Arrangement, Multinet) {
        let a = Arrangement::from_integer_rows(
            &[
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![1, -1, 0],
                vec![1, 1, 0],
                vec![1, 0, -1],
                vec![1, 0, 1],
                vec![0, 1, -1],
                vec![0, 1, 1],
            ],
            None,
        )
        .unwrap();
        let parts = vec![vec![2, 3, 4], vec![1, 5, 6], vec![0, 7, 8]];
        let base = complete_base_locus(&a, &parts);
        (
            a,
            Multinet::new(parts, vec![2, 2, 2, 1, 1, 1, 1, 1, 1], base),
        )
    }

    #[test]
    fn b3_multinet_and_pencil() {
        let (a, mn) = b3();
        let rep = verify_multinet(&a, &mn).unwrap();
        assert!(rep.valid, "{:?}", rep.violations);
        assert_eq!(rep.weight, Some(4));
        assert_eq!(mn.base_locus.len(), 7);
        let pm = match verify_pointed(&a, &mn, 2).unwrap() {
            PointedVerdict::Valid(pm) => pm,
            PointedVerdict::Invalid(v) => panic!("{v:?}"),
        };
        let cert = deletion_pencil_certificate(&a, &pm).unwrap();
        assert_eq!(cert.raw_direction, vec![-2, 2, 0, 0, 1, 1, -1, -1]);
        assert_eq!(cert.direction, vec![2, -2, 0, 0, -1, -1, 1, 1]);
        assert_eq!(cert.translate_order, 2);
        assert!(matches!(
            verify_pointed(&a, &mn, 3).unwrap(),
            PointedVerdict::Invalid(_)
        ));
    }

    #[test]
    fn weight_violation() {
        let (a, mut mn) = b3();
        mn.m[2] = 1;
        let rep = verify_multinet(&a, &mn).unwrap();
        assert!(!rep.valid);
        assert!(rep.violations.iter().any(|v| v.starts_with("(1)")));
    }

    #[test]
    fn monomial_family() {
        for p in [2u64, 3, 5] {
            let (a, pm) = monomial_multinet(p).unwrap();
            assert_eq!(a.len(), 3 + 3 * p as usize);
            let rep = verify_multinet(&a, &pm.multinet).unwrap();
            assert_eq!(rep.weight, Some(2 * p));
            let cert = deletion_pencil_certificate(&a, &pm).unwrap();
            let pi = p as i64;
            let mut expect = vec![pi, -pi];
            expect.extend(vec![-1; p as usize]);
            expect.extend(vec![1; p as usize]);
            expect.extend(vec![0; p as usize]);
            assert_eq!(cert.raw_direction, expect);
        }
    }
}
