//! Fixture checks bundled with the binary.

use cyclocover::arrangement::Arrangement;
use cyclocover::fpgroups::{integral_h1_kernel, sweep_presentation, AbelianGroup, Character};
use cyclocover::io::{parse_arrangement, parse_multinet, parse_presentation, parse_stratification};
use cyclocover::jumploci::{
    cover_homology, delta_u_poly, monodromy_charpoly, torsion_detect, JumpSource,
};
use cyclocover::milnor::{
    find_multiplicities, milnor_character, multinet_torsion_pipeline, polarization_torsion,
    polarized_milnor_delta, FindOptions, PipelineOptions,
};
use cyclocover::multinet::PointedMultinet;
use serde_json::{json, Value};

macro_rules! fixture {
    ($name:literal) => {
        serde_json::from_str::<Value>(include_str!(concat!("../../core/fixtures/", $name)))
            .expect("bundled fixtures are valid JSON")
    };
}

pub struct Outcome {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Outcome {
    pub fn to_json(&self) -> Value {
        json!({ "name": self.name, "pass": self.pass, "detail": self.detail })
    }
}

type Check = Result<String, String>;
type Named = (&'static str, fn() -> Check);

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn arrangement(v: Value) -> Result<Arrangement, String> {
    parse_arrangement(&v).map_err(e)
}

fn one_torus() -> Check {
    let p = parse_presentation(&fixture!("one_torus.json")).map_err(e)?;
    let chi = Character::new(3, &[1, 0]).map_err(e)?;
    let g = integral_h1_kernel(&p, &chi).map_err(e)?;
    expect("kernel", g.clone(), AbelianGroup::new(2, vec![2, 2]))?;
    let s = JumpSource::fox(p);
    let c2 = monodromy_charpoly(&s, &chi, 2, 1).map_err(e)?.to_string();
    expect("charpoly char 2", c2.as_str(), "(t-1)^2(t^2+t+1)")?;
    let c0 = monodromy_charpoly(&s, &chi, 0, 1).map_err(e)?.to_string();
    expect("charpoly char 0", c0.as_str(), "(t-1)^2")?;
    Ok(format!("H1 = {g}; {c2} over char 2, {c0} over char 0"))
}

fn ccm() -> Check {
    let s = JumpSource::Stratification(parse_stratification(&fixture!("ccm.json")).map_err(e)?);
    let chi = Character::new(3, &[1, 1, 0, 0, 0, 0]).map_err(e)?;
    expect("dim char 0", cover_homology(&s, &chi, 0, 1).map_err(e)?, 6)?;
    expect("dim char 2", cover_homology(&s, &chi, 2, 1).map_err(e)?, 10)?;
    let cp = monodromy_charpoly(&s, &chi, 2, 1).map_err(e)?.to_string();
    expect("charpoly", cp.as_str(), "(t-1)^6(t^2+t+1)^2")?;
    let tc = torsion_detect(&s, &chi, 2, 1)
        .map_err(e)?
        .ok_or("no certificate")?;
    expect("bound", tc.bound, 4)?;
    Ok(format!("dims 6 / 10, {cp}, 2-torsion bound 4"))
}

fn braid() -> Check {
    let a = arrangement(fixture!("braid.json"))?;
    let s = JumpSource::arrangement(&a).map_err(e)?;
    let delta = milnor_character(&a, &[1; 6]).map_err(e)?.delta;
    let d = delta_u_poly(&s, &delta, 0).map_err(e)?.to_string();
    expect(
        "delta",
        d.as_str(),
        "u1 + (5u1+2u3)x + (6u1+2u2+6u3+4u6)x^2",
    )?;
    let p = sweep_presentation(&a, true).map_err(e)?;
    expect(
        "H1(F)",
        integral_h1_kernel(&p, &delta).map_err(e)?,
        AbelianGroup::new(7, vec![]),
    )?;
    let cp = monodromy_charpoly(&s, &delta, 0, 1).map_err(e)?.to_string();
    expect("charpoly", cp.as_str(), "(t-1)^5(t^2+t+1)")?;
    Ok(format!("{d}; H1(F) = Z^7; {cp}"))
}

fn deleted_b3() -> Check {
    let b3 = arrangement(fixture!("b3.json"))?;
    let (mn, h) = parse_multinet(&b3, &fixture!("b3net.json")).map_err(e)?;
    let pm = PointedMultinet {
        multinet: mn,
        hyperplane: h.ok_or("fixture names no hyperplane")?,
    };
    let opts = PipelineOptions {
        prime: Some(2),
        integral: true,
        ..PipelineOptions::default()
    };
    let tc = multinet_torsion_pipeline(&b3, &pm, &opts).map_err(e)?;
    let g = tc
        .integral
        .as_ref()
        .map(|g| g.to_string())
        .unwrap_or_default();
    expect("H1(F)", g.as_str(), "Z^7 + Z/2 + Z/2")?;
    let cp = tc
        .charpoly
        .as_ref()
        .map(|c| c.to_string())
        .unwrap_or_default();
    expect("charpoly", cp.as_str(), "(t-1)^7(t^2+t+1)")?;
    let chi = Character::new(3, &[2, -2, 0, 0, -1, -1, 1, 1]).map_err(e)?;
    let forbid = FindOptions {
        forbid_two: true,
        max_n: None,
    };
    expect(
        "forbidTwo",
        find_multiplicities(&chi, 2, forbid).map_err(e)?,
        (vec![8, 1, 3, 3, 5, 5, 1, 1], 27),
    )?;
    Ok(format!("H1(F) = {g}; {cp}"))
}

fn polarization() -> Check {
    let a = arrangement(fixture!("deleted_b3.json"))?;
    let m = [8u64, 1, 3, 3, 5, 5, 1, 1];
    let cp = polarized_milnor_delta(&a, &m, 2, 6).map_err(e)?.to_string();
    expect("charpoly", cp.as_str(), "(t-1)^11968(t^2+t+1)^54")?;
    let tc = polarization_torsion(&a, &m, 2).map_err(e)?;
    expect("degree and bound", (tc.degree, tc.bound), (6, 108))?;
    Ok(format!("{cp}; 2-torsion bound 108 in degree 6"))
}

fn monomial() -> Check {
    let v = fixture!("monomial_p3.json");
    let a = arrangement(v.clone())?;
    let (mn, h) = parse_multinet(&a, &v).map_err(e)?;
    let pm = PointedMultinet {
        multinet: mn,
        hyperplane: h.ok_or("no hyperplane")?,
    };
    let opts = PipelineOptions {
        prime: Some(3),
        r: Some(7),
        ..PipelineOptions::default()
    };
    let tc = multinet_torsion_pipeline(&a, &pm, &opts).map_err(e)?;
    let j = tc.to_json();
    expect("N", j["chain"][4]["N"].clone(), json!(49))?;
    expect(
        "image in V1 over char 3",
        j["chain"][3]["image_in_V1_charp"].clone(),
        json!(true),
    )?;
    if tc.bound < 1 {
        return Err("no 3-torsion certified".into());
    }
    Ok(format!("N = 49, 3-torsion bound {}", tc.bound))
}

pub fn run_all() -> Vec<Outcome> {
    let checks: [Named; 6] = [
        ("1torus", one_torus),
        ("ccm", ccm),
        ("braid", braid),
        ("deleted-b3", deleted_b3),
        ("polarized-deleted-b3", polarization),
        ("monomial-p3", monomial),
    ];
    checks
        .iter()
        .map(|(name, f)| {
            let r = f();
            Outcome {
                name,
                pass: r.is_ok(),
                detail: r.unwrap_or_else(|x| x),
            }
        })
        .collect()
}
