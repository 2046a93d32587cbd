//! Milnor fibers of multiarrangements as cyclic covers of the projectivized complement,
//! multiplicity search, and the torsion pipelines built on pointed multinets and
//! polarizations.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::algebra::numtheory::{gcd, is_prime, mult_order, prime_factors};
use crate::arrangement::Arrangement;
use crate::error::{ensure_input, Error, Result};
use crate::fpgroups::{
    integral_h1_kernel, monomial_deletion_presentation, sweep_presentation, Character, Presentation,
};
use crate::jumploci::{
    delta_product, depths, torsion_detect, CharPoly, Factor, JumpSource, TorsionCertificate, UPoly,
};
use crate::multinet::{deletion_pencil_certificate, monomial_multinet, PointedMultinet};
use crate::parallel::{n_k, polarize, theta_star};

/// δ_{𝒜,m}: the character x_H ↦ m_H mod N classifying F(𝒜, m) → U(𝒜).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MilnorSpec {
    pub m: Vec<u64>,
    pub n: u64,
    pub delta: Character,
    /// gcd(m) ≠ 1.
    pub gcd_warning: bool,
}

pub fn milnor_character(a: &Arrangement, m: &[u64]) -> Result<MilnorSpec> {
    ensure_input!(
        m.len() == a.len(),
        "{} multiplicities for {} hyperplanes",
        m.len(),
        a.len()
    );
    ensure_input!(m.iter().all(|&x| x >= 1), "multiplicities must be positive");
    let n: u64 = m.iter().sum();
    let exps: Vec<i64> = m.iter().map(|&x| x as i64).collect();
    Ok(MilnorSpec {
        m: m.to_vec(),
        n,
        delta: Character::new(n, &exps)?,
        gcd_warning: m.iter().fold(0, |g, &x| gcd(g, x)) != 1,
    })
}

/// Finds m with F(𝒜, m) equivalent to U^χ: some unit k with least positive residues of kχ
/// summing to N.
pub fn recognize_milnor_cover(a: &Arrangement, chi: &Character) -> Result<Option<Vec<u64>>> {
    ensure_input!(
        chi.len() == a.len(),
        "character has {} exponents for {} hyperplanes",
        chi.len(),
        a.len()
    );
    ensure_input!(
        chi.is_projective(),
        "character does not vanish on the sum of meridians"
    );
    let n = chi.order;
    for k in (1..=n).filter(|&k| gcd(k, n) == 1) {
        let mu: Vec<u64> = chi
            .scale(k)
            .exponents
            .iter()
            .map(|&e| if e == 0 { n } else { e })
            .collect();
        if mu.iter().sum::<u64>() == n {
            return Ok(Some(mu));
        }
    }
    Ok(None)
}

/// Whether F(𝒜, m) → U(𝒜) factors through U^χ, i.e. χ = φ∘δ for some φ: ℤ_N → ℤ_r.
pub fn milnor_dominates(spec: &MilnorSpec, chi: &Character) -> Result<bool> {
    ensure_input!(chi.len() == spec.m.len(), "character length mismatch");
    let r = chi.order;
    Ok((0..r).any(|c| {
        (c * spec.n).is_multiple_of(r)
            && spec
                .m
                .iter()
                .zip(&chi.exponents)
                .all(|(&mh, &e)| (c * (mh % r)) % r == e)
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct FindOptions {
    pub forbid_two: bool,
    pub max_n: Option<u64>,
}

/// Multiplicities of least total N with m ≡ kχ mod r for a unit k, p ∤ N, and m_H ≠ 2 under
/// `forbid_two`. Ties go to the smallest k; extra multiples of r go to the first hyperplane.
pub fn find_multiplicities(chi: &Character, p: u64, opts: FindOptions) -> Result<(Vec<u64>, u64)> {
    let r = chi.order;
    ensure_input!(is_prime(p), "{p} is not prime");
    ensure_input!(!r.is_multiple_of(p), "p = {p} divides the order {r}");
    ensure_input!(
        chi.is_surjective(),
        "character is not surjective onto Z_{r}"
    );
    ensure_input!(
        chi.is_projective(),
        "character does not vanish on the sum of meridians"
    );
    ensure_input!(!chi.is_empty(), "empty character");
    let mut best: Option<(u64, Vec<u64>)> = None;
    for k in (1..r.max(2)).filter(|&k| gcd(k, r) == 1) {
        let mut m: Vec<u64> = chi
            .scale(k)
            .exponents
            .iter()
            .map(|&e| if e == 0 { r } else { e })
            .collect();
        if opts.forbid_two {
            for x in m.iter_mut().filter(|x| **x == 2) {
                *x += r;
            }
        }
        let mut n: u64 = m.iter().sum();
        while n.is_multiple_of(p) {
            m[0] += r;
            n += r;
        }
        if best.as_ref().is_none_or(|(bn, _)| n < *bn) {
            best = Some((n, m));
        }
    }
    let (n, m) = best.ok_or_else(|| Error::invariant("no unit found"))?;
    if let Some(cap) = opts.max_n {
        ensure_input!(n <= cap, "least admissible N = {n} exceeds the cap {cap}");
    }
    Ok((m, n))
}

/// π₁ presentation of the projectivized complement of 𝒜 ∖ {H}: the sweep for real
/// arrangements, the fibration for the monomial family deleted at x.
pub fn deletion_presentation(a: &Arrangement, h: usize) -> Result<Presentation> {
    let del = a.delete(h)?;
    if del.integer_normals().is_some() && del.rank() == 3 {
        return sweep_presentation(&del, true);
    }
    if h == 0 && a.len() >= 9 && (a.len() - 3).is_multiple_of(3) {
        let p = ((a.len() - 3) / 3) as u64;
        let (mono, _) = monomial_multinet(p)?;
        if mono.normals() == a.normals() {
            return monomial_deletion_presentation(p);
        }
    }
    Err(Error::Unsupported(
        "no presentation available for this deletion (needs a real rank-3 arrangement or a monomial arrangement deleted at x)".into(),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    /// Prime p | m_H; the smallest one when absent.
    pub prime: Option<u64>,
    /// Fixes the cover degree r instead of searching.
    pub r: Option<u64>,
    pub r_cap: u64,
    pub forbid_two: bool,
    pub integral: bool,
    /// Largest N·(generators) for which the integral kernel is computed.
    pub integral_cap: u64,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            prime: None,
            r: None,
            r_cap: 30,
            forbid_two: false,
            integral: false,
            integral_cap: 5000,
        }
    }
}

fn field_name(char: u64, n: u64) -> String {
    if char == 0 {
        format!("Q(zeta_{n})")
    } else {
        format!("GF({char}^{})", mult_order(char % n, n).max(1))
    }
}

/// Pointed multinet on 𝒜 → p-torsion in H₁ of a Milnor fiber of a multiarrangement on the
/// deletion 𝒜' = 𝒜 ∖ {H}.
pub fn multinet_torsion_pipeline(
    a: &Arrangement,
    pm: &PointedMultinet,
    opts: &PipelineOptions,
) -> Result<TorsionCertificate> {
    let cert = deletion_pencil_certificate(a, pm)?;
    let mh = cert.multiplier;
    let p = match opts.prime {
        Some(p) => {
            ensure_input!(
                is_prime(p) && mh % p == 0,
                "{p} is not a prime dividing m_H = {mh}"
            );
            p
        }
        None => prime_factors(mh)[0],
    };
    let deletion = cert
        .deletion
        .clone()
        .expect("certificate carries its deletion");
    let pres = deletion_presentation(a, pm.hyperplane)?;
    let source = JumpSource::Fox {
        presentation: pres.clone(),
        arrangement: None,
    };
    let dir: Vec<i64> = cert.direction.clone();
    let candidates: Vec<u64> = match opts.r {
        Some(r) => vec![r],
        None => (2..=opts.r_cap).collect(),
    };
    let mut chosen = None;
    for r in candidates {
        if r % p == 0 {
            ensure_input!(opts.r.is_none(), "p = {p} divides the requested r = {r}");
            continue;
        }
        let chi = Character::new(r, &dir)?;
        if !chi.is_surjective() || !chi.is_projective() {
            continue;
        }
        let (_, d0) = depths(&source, &chi, 0, 1)?;
        if d0[1..].iter().all(|&d| d == 0) {
            let (_, dp) = depths(&source, &chi, p, 1)?;
            chosen = Some((chi, d0, dp));
            break;
        }
        ensure_input!(
            opts.r.is_none(),
            "the image of the character meets V1 over C away from 1"
        );
    }
    let (chi, d0, dp) = chosen.ok_or_else(|| {
        Error::Unsupported(format!(
            "no r <= {} avoids V1 over C along the pencil direction",
            opts.r_cap
        ))
    })?;
    let r = chi.order;
    let (mprime, n) = find_multiplicities(
        &chi,
        p,
        FindOptions {
            forbid_two: opts.forbid_two,
            max_n: None,
        },
    )?;
    let spec = milnor_character(&deletion, &mprime)?;
    let mut tc = torsion_detect(&source, &spec.delta, p, 1)?.ok_or_else(|| {
        Error::invariant(format!(
            "no dimension jump in characteristic {p} for m' = {mprime:?}"
        ))
    })?;
    tc.chain = vec![
        json!({"stage": "pointed-multinet", "hyperplane": a.label(pm.hyperplane), "m_H": mh, "classes": pm.multinet.parts}),
        json!({"stage": "deletion", "hyperplanes": deletion.len(), "labels": (0..deletion.len()).map(|i| deletion.label(i)).collect::<Vec<_>>()}),
        json!({"stage": "pencil", "direction": cert.direction, "translate_order": cert.translate_order,
               "justification": "orbifold fibration of the deletion onto C* with a multiple fiber of multiplicity m_H; its pullback component is a translated 1-torus"}),
        json!({"stage": "character", "r": r, "exponents": chi.exponents,
               "depths_char0": d0, "depths_charp": dp,
               "image_in_V1_charp": dp[1..].iter().all(|&d| d >= 1),
               "image_meets_V1_char0_only_at_1": true}),
        json!({"stage": "multiplicities", "m": mprime, "N": n, "gcd_warning": spec.gcd_warning}),
        json!({"stage": "fields", "char0": field_name(0, n), "charp": field_name(p, n)}),
        json!({"stage": "dimensions", "char0": tc.dim_zero, "charp": tc.dim_p}),
    ];
    if opts.integral {
        if n * pres.generators as u64 <= opts.integral_cap {
            let g = integral_h1_kernel(&pres, &spec.delta)?;
            if g.rank as u64 != tc.dim_zero || (g.p_rank(p) as u64) < tc.bound {
                return Err(Error::invariant(format!(
                    "integral kernel {g} contradicts dimensions {} / {}",
                    tc.dim_zero, tc.dim_p
                )));
            }
            tc.integral = Some(g);
        } else {
            tc.chain.push(json!({"stage": "integral", "skipped": format!("N*generators = {} exceeds {}", n * pres.generators as u64, opts.integral_cap)}));
        }
    }
    Ok(tc)
}

/// Factors of U(𝒜‖m) = U(𝒜) × ∏ P_{m_H} and the character θ*(δ) split along them.
fn polarized_factors(a: &Arrangement, m: &[u64]) -> Result<(Vec<Factor>, Character)> {
    ensure_input!(
        a.rank() == 3,
        "polarized Milnor computations need rank 3 (rank is {})",
        a.rank()
    );
    let b = polarize(a, m)?;
    let n: u64 = m.iter().sum();
    let ones = vec![1i64; b.arrangement.len()];
    let t = theta_star(&b, &ones, Some(n))?;
    let mut factors = vec![Factor::Source(JumpSource::arrangement(a)?)];
    let mut exps: Vec<i64> = t.backbone.clone();
    for (h, &mh) in m.iter().enumerate() {
        if mh >= 2 {
            factors.push(Factor::Pencil(mh as usize));
            exps.extend_from_slice(&t.pencils[h][1..]);
        }
    }
    Ok((factors, Character::new(n, &exps)?))
}

/// Δ_{𝒜‖m, δ}(u, x) in characteristic `char`.
pub fn polarized_delta(a: &Arrangement, m: &[u64], char: u64) -> Result<UPoly> {
    let (factors, chi) = polarized_factors(a, m)?;
    delta_product(&factors, &chi, char)
}

/// Characteristic polynomial of the monodromy on H_q(F(𝒜‖m), 𝕜).
pub fn polarized_milnor_delta(a: &Arrangement, m: &[u64], char: u64, q: usize) -> Result<CharPoly> {
    polarized_delta(a, m, char)?.charpoly(q)
}

/// Torsion in H_{1+n₃}(F(𝒜‖m)) from the jump of Δ between characteristics 0 and p.
pub fn polarization_torsion(a: &Arrangement, m: &[u64], p: u64) -> Result<TorsionCertificate> {
    ensure_input!(is_prime(p), "{p} is not prime");
    ensure_input!(
        !m.contains(&2),
        "multiplicity 2 kills the pencil factor; choose m avoiding 2"
    );
    let n: u64 = m.iter().sum();
    ensure_input!(!n.is_multiple_of(p), "p = {p} divides N = {n}");
    let d0 = polarized_delta(a, m, 0)?;
    let dp = polarized_delta(a, m, p)?;
    let q = 1 + n_k(m, 3);
    let diff = dp.sub(&d0);
    let coeff = diff.coefficient(q);
    let bound = diff.specialize(q);
    if bound <= 0 || coeff.values().any(|&c| c < 0) {
        return Err(Error::invariant(format!(
            "no positive jump in degree {q}: difference {diff}"
        )));
    }
    let b = polarize(a, m)?;
    Ok(TorsionCertificate {
        prime: p,
        degree: q,
        bound: bound as u64,
        dim_zero: d0.specialize(q) as u64,
        dim_p: dp.specialize(q) as u64,
        witnesses: Vec::new(),
        cyclic_bound: None,
        chain: vec![
            json!({"stage": "polarization", "hyperplanes": b.arrangement.len(), "rank": b.arrangement.rank(),
                   "n2": b.n_k(2), "n3": b.n_k(3)}),
            json!({"stage": "transport", "backbone": m, "justification": "theta* sends delta of the polarization to (delta_{A,m}, eps)"}),
            json!({"stage": "difference", "delta_charp_minus_char0": diff.to_string(), "degree": q,
                   "coefficient": coeff}),
            json!({"stage": "fields", "char0": field_name(0, n), "charp": field_name(p, n)}),
        ],
        integral: None,
        charpoly: dp.charpoly(q).ok(),
    })
}
