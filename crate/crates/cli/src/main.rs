mod report;
mod selftest;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cyclocover::arrangement::Arrangement;
use cyclocover::fpgroups::{integral_h1_kernel, sweep_presentation, Character, Presentation};
use cyclocover::io::{
    arrangement_to_json, parse_arrangement, parse_character, parse_multiarrangement,
    parse_multinet, parse_presentation, parse_stratification, presentation_to_json,
    resolve_hyperplane,
};
use cyclocover::jumploci::{
    cover_homology, delta_u_poly, depths, monodromy_charpoly, torsion_detect, JumpSource,
};
use cyclocover::milnor::{
    find_multiplicities, milnor_character, multinet_torsion_pipeline, polarization_torsion,
    polarized_delta, recognize_milnor_cover, FindOptions, PipelineOptions,
};
use cyclocover::multinet::{
    deletion_pencil_certificate, verify_multinet, verify_pointed, PointedMultinet,
};
use cyclocover::parallel::polarize;
use cyclocover::{Error, Result};
use report::Inputs;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "cyclocover",
    version,
    about = "Homology of cyclic covers and Milnor fibers of arrangements"
)]
struct Cli {
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Arrangement utilities.
    #[command(subcommand)]
    Arr(ArrCmd),
    /// Multinet verification and deletion pencils.
    #[command(subcommand)]
    Multinet(MultinetCmd),
    /// Polarization 𝒜‖m of a multiarrangement.
    Polarize(MultiArgs),
    /// Group presentations.
    #[command(subcommand)]
    Present(PresentCmd),
    /// Homology of finite cyclic covers.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Milnor fibers of multiarrangements.
    #[command(subcommand)]
    Milnor(MilnorCmd),
    /// Built-in checks.
    #[command(subcommand)]
    Selftest(SelftestCmd),
}

#[derive(Subcommand)]
enum ArrCmd {
    Validate(ArrArgs),
    Flats(ArrArgs),
    Poincare(ArrArgs),
}

#[derive(Args)]
struct ArrArgs {
    /// Arrangement file.
    #[arg(short = 'a', long = "arrangement")]
    arrangement: PathBuf,
}

#[derive(Subcommand)]
enum MultinetCmd {
    Verify(MultinetArgs),
    Pencil(MultinetArgs),
}

#[derive(Args)]
struct MultinetArgs {
    #[arg(short = 'a', long = "arrangement")]
    arrangement: PathBuf,
    /// Multinet file.
    #[arg(short = 'n', long = "multinet")]
    multinet: PathBuf,
    /// Distinguished hyperplane, by index or label (overrides the file).
    #[arg(long)]
    hyperplane: Option<String>,
}

#[derive(Args)]
struct MultiArgs {
    /// Arrangement file, or a multiarrangement file with "arrangement" and "m".
    #[arg(short = 'a', long = "arrangement")]
    arrangement: PathBuf,
    /// Multiplicities, comma separated.
    #[arg(long, value_delimiter = ',')]
    m: Vec<u64>,
}

#[derive(Subcommand)]
enum PresentCmd {
    /// π₁ of the complement of a real rank-3 arrangement.
    Sweep {
        #[arg(short = 'a', long = "arrangement")]
        arrangement: PathBuf,
        /// Keep the affine presentation (no relator around all lines).
        #[arg(long)]
        affine: bool,
    },
}

#[derive(Args)]
struct CharArgs {
    /// Character file {"order", "exponents"}.
    #[arg(long)]
    chi: Option<PathBuf>,
    /// Character order, with --exponents.
    #[arg(long)]
    order: Option<u64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    exponents: Vec<i64>,
}

#[derive(Args)]
struct CoverArgs {
    /// Real rank-3 arrangement (wiring-diagram presentation, Euler-completed degree 2).
    #[arg(short = 'a', long = "arrangement", group = "source")]
    arrangement: Option<PathBuf>,
    /// Presentation file {"generators", "relators"}.
    #[arg(long, group = "source")]
    presentation: Option<PathBuf>,
    /// Jump-loci stratification file.
    #[arg(long, group = "source")]
    strat: Option<PathBuf>,
    #[command(flatten)]
    chi: CharArgs,
    /// Characteristic: 0 or a prime not dividing the cover degree.
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u64,
    #[arg(long, default_value_t = 1)]
    degree: usize,
    /// Compare characteristic 0 with this prime and certify torsion.
    #[arg(long)]
    prime: Option<u64>,
    /// Also compute H₁ of the cover integrally (presentation sources).
    #[arg(long)]
    integral: bool,
}

#[derive(Subcommand)]
enum CoverCmd {
    H1(CoverArgs),
    Charpoly(CoverArgs),
    Delta(CoverArgs),
}

#[derive(Subcommand)]
enum MilnorCmd {
    /// δ for (𝒜, m).
    Character(MultiArgs),
    /// Multiplicities m with F(𝒜, m) equal to the cover of χ.
    Recognize {
        #[arg(short = 'a', long = "arrangement")]
        arrangement: PathBuf,
        #[command(flatten)]
        chi: CharArgs,
    },
    /// Least N with m ≡ kχ and p ∤ N.
    FindM {
        #[command(flatten)]
        chi: CharArgs,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        forbid_two: bool,
        #[arg(long)]
        max_n: Option<u64>,
    },
    /// Multinet to torsion certificate.
    Pipeline {
        #[command(flatten)]
        multinet: MultinetArgs,
        #[arg(long)]
        prime: Option<u64>,
        /// Fix the cover order instead of searching.
        #[arg(long)]
        r: Option<u64>,
        #[arg(long, default_value_t = 30)]
        r_cap: u64,
        #[arg(long)]
        forbid_two: bool,
        /// Confirm with an integral computation when N·generators ≤ the cap.
        #[arg(long)]
        integral: bool,
        #[arg(long, default_value_t = 5000)]
        integral_cap: u64,
    },
    /// Torsion in the Milnor fiber of a polarization.
    PolarTorsion {
        #[command(flatten)]
        multi: MultiArgs,
        #[arg(long)]
        prime: u64,
    },
    /// Δ(u, x) of the polarization and its monodromy polynomials.
    Delta {
        #[command(flatten)]
        multi: MultiArgs,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long)]
        degree: Option<usize>,
    },
}

#[derive(Subcommand)]
enum SelftestCmd {
    /// Reproduce the fixture computations.
    Fixtures,
}

struct Ctx {
    inputs: Inputs,
    warnings: Vec<String>,
}

impl Ctx {
    fn arrangement(&mut self, p: &Path) -> Result<Arrangement> {
        parse_arrangement(&self.inputs.read(p)?)
    }

    fn multiarrangement(&mut self, args: &MultiArgs) -> Result<(Arrangement, Vec<u64>)> {
        let v = self.inputs.read(&args.arrangement)?;
        if v.get("arrangement").is_some() {
            let (a, m) = parse_multiarrangement(&v)?;
            if !args.m.is_empty() {
                ensure_len(&a, &args.m)?;
                return Ok((a, args.m.clone()));
            }
            return Ok((a, m));
        }
        let a = parse_arrangement(&v)?;
        if args.m.is_empty() {
            return Err(Error::input(
                "multiplicities needed: pass --m or a multiarrangement file",
            ));
        }
        ensure_len(&a, &args.m)?;
        Ok((a, args.m.clone()))
    }

    fn character(&mut self, c: &CharArgs) -> Result<Character> {
        match (&c.chi, c.order) {
            (Some(p), None) if c.exponents.is_empty() => parse_character(&self.inputs.read(p)?),
            (None, Some(r)) => Character::new(r, &c.exponents),
            _ => Err(Error::input(
                "give either --chi FILE or --order N with --exponents",
            )),
        }
    }

    fn pointed(&mut self, args: &MultinetArgs) -> Result<(Arrangement, PointedMultinet)> {
        let a = self.arrangement(&args.arrangement)?;
        let (mn, h) = parse_multinet(&a, &self.inputs.read(&args.multinet)?)?;
        let h = match &args.hyperplane {
            Some(s) => resolve_hyperplane(&a, &Value::String(s.clone()))?,
            None => {
                h.ok_or_else(|| Error::input("no distinguished hyperplane: pass --hyperplane"))?
            }
        };
        Ok((
            a,
            PointedMultinet {
                multinet: mn,
                hyperplane: h,
            },
        ))
    }

    fn source(&mut self, args: &CoverArgs) -> Result<(JumpSource, Option<Presentation>)> {
        if let Some(p) = &args.arrangement {
            let a = self.arrangement(p)?;
            let pres = sweep_presentation(&a, true)?;
            if args.degree == 2 {
                self.warnings
                    .push("degree-2 numbers are Euler-completed".into());
            }
            return Ok((JumpSource::arrangement(&a)?, Some(pres)));
        }
        if let Some(p) = &args.presentation {
            let pres = parse_presentation(&self.inputs.read(p)?)?;
            return Ok((JumpSource::fox(pres.clone()), Some(pres)));
        }
        if let Some(p) = &args.strat {
            let s = parse_stratification(&self.inputs.read(p)?)?;
            return Ok((JumpSource::Stratification(s), None));
        }
        Err(Error::input("give a source: -a, --presentation or --strat"))
    }
}

fn ensure_len(a: &Arrangement, m: &[u64]) -> Result<()> {
    if m.len() != a.len() {
        return Err(Error::input(format!(
            "{} multiplicities for {} hyperplanes",
            m.len(),
            a.len()
        )));
    }
    Ok(())
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report values serialize")
}

fn run(cmd: &Cmd, ctx: &mut Ctx) -> Result<Value> {
    Ok(match cmd {
        Cmd::Arr(op) => match op {
            ArrCmd::Validate(a) => {
                let arr = ctx.arrangement(&a.arrangement)?;
                json!({
                    "valid": true,
                    "hyperplanes": arr.len(),
                    "dim": arr.dim(),
                    "rank": arr.rank(),
                    "field_order": arr.field_order(),
                    "factors": arr.defining_factors(),
                    "normalized": arrangement_to_json(&arr),
                })
            }
            ArrCmd::Flats(a) => {
                let arr = ctx.arrangement(&a.arrangement)?;
                let flats: Vec<Value> = arr
                    .rank2_flats()
                    .iter()
                    .map(|f| {
                        json!({
                            "hyperplanes": f.hyperplanes,
                            "labels": f.hyperplanes.iter().map(|&h| arr.label(h)).collect::<Vec<_>>(),
                            "size": f.size(),
                        })
                    })
                    .collect();
                let multiple = flats
                    .iter()
                    .filter(|f| f["size"].as_u64() > Some(2))
                    .count();
                json!({ "count": flats.len(), "multiple_points": multiple, "flats": flats })
            }
            ArrCmd::Poincare(a) => {
                let arr = ctx.arrangement(&a.arrangement)?;
                json!({
                    "projective_complement": arr.os_poincare_rank3()?,
                    "euler_characteristic": arr.euler_characteristic()?,
                })
            }
        },
        Cmd::Multinet(op) => match op {
            MultinetCmd::Verify(args) => {
                let a = ctx.arrangement(&args.arrangement)?;
                let (mn, h) = parse_multinet(&a, &ctx.inputs.read(&args.multinet)?)?;
                let h = match &args.hyperplane {
                    Some(s) => Some(resolve_hyperplane(&a, &Value::String(s.clone()))?),
                    None => h,
                };
                let rep = verify_multinet(&a, &mn)?;
                let mut out = json!({ "valid": rep.valid, "multinet": to_value(&rep) });
                if let Some(h) = h {
                    out["pointed"] = to_value(&verify_pointed(&a, &mn, h)?);
                }
                out
            }
            MultinetCmd::Pencil(args) => {
                let (a, pm) = ctx.pointed(args)?;
                let cert = deletion_pencil_certificate(&a, &pm)?;
                let mut out = to_value(&cert);
                if let Some(d) = &cert.deletion {
                    out["deletion"] = arrangement_to_json(d);
                }
                out
            }
        },
        Cmd::Polarize(args) => {
            let (a, m) = ctx.multiarrangement(args)?;
            let b = polarize(&a, &m)?;
            let mut out = b.report();
            out["arrangement"] = arrangement_to_json(&b.arrangement);
            out
        }
        Cmd::Present(PresentCmd::Sweep {
            arrangement,
            affine,
        }) => {
            let a = ctx.arrangement(arrangement)?;
            let p = sweep_presentation(&a, !affine)?;
            let ab = p.abelianization();
            json!({
                "presentation": presentation_to_json(&p),
                "abelianization": ab.to_string(),
                "relators": p.relators.len(),
            })
        }
        Cmd::Cover(op) => {
            let (args, kind) = match op {
                CoverCmd::H1(a) => (a, "h1"),
                CoverCmd::Charpoly(a) => (a, "charpoly"),
                CoverCmd::Delta(a) => (a, "delta"),
            };
            let (s, pres) = ctx.source(args)?;
            let chi = ctx.character(&args.chi)?;
            let (c, q) = (args.characteristic, args.degree);
            let mut out = match kind {
                "h1" => {
                    let (image, d) = depths(&s, &chi, c, q)?;
                    json!({
                        "dimension": cover_homology(&s, &chi, c, q)?,
                        "image_order": image.order,
                        "depths": d,
                    })
                }
                "charpoly" => {
                    let cp = monodromy_charpoly(&s, &chi, c, q)?;
                    json!({ "charpoly": cp.to_string(), "phi": to_value(&cp.phi), "degree": cp.degree() })
                }
                _ => {
                    let d = delta_u_poly(&s, &chi, c)?;
                    let coeffs: Vec<Value> = (0..=d.degree().unwrap_or(0))
                        .map(|i| to_value(&d.coefficient(i)))
                        .collect();
                    json!({ "delta": d.to_string(), "coefficients": coeffs, "euler_completed": s.euler_completed() })
                }
            };
            out["characteristic"] = json!(c);
            out["degree"] = json!(q);
            if let Some(p) = args.prime {
                out["torsion"] = match torsion_detect(&s, &chi, p, q)? {
                    Some(tc) => tc.to_json(),
                    None => Value::Null,
                };
            }
            if args.integral {
                match &pres {
                    Some(p) => {
                        let g = integral_h1_kernel(p, &chi)?;
                        out["integral"] = json!({ "rank": g.rank, "group": g.to_string(),
                            "torsion": g.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>() });
                    }
                    None => ctx
                        .warnings
                        .push("no integral computation for stratification sources".into()),
                }
            }
            out
        }
        Cmd::Milnor(op) => match op {
            MilnorCmd::Character(args) => {
                let (a, m) = ctx.multiarrangement(args)?;
                let spec = milnor_character(&a, &m)?;
                if spec.gcd_warning {
                    ctx.warnings
                        .push("gcd of the multiplicities is not 1".into());
                }
                to_value(&spec)
            }
            MilnorCmd::Recognize { arrangement, chi } => {
                let a = ctx.arrangement(arrangement)?;
                let chi = ctx.character(chi)?;
                let m = recognize_milnor_cover(&a, &chi)?;
                json!({ "recognized": m.is_some(), "m": m })
            }
            MilnorCmd::FindM {
                chi,
                prime,
                forbid_two,
                max_n,
            } => {
                let chi = ctx.character(chi)?;
                let opts = FindOptions {
                    forbid_two: *forbid_two,
                    max_n: *max_n,
                };
                let (m, n) = find_multiplicities(&chi, *prime, opts)?;
                json!({ "m": m, "N": n })
            }
            MilnorCmd::Pipeline {
                multinet,
                prime,
                r,
                r_cap,
                forbid_two,
                integral,
                integral_cap,
            } => {
                let (a, pm) = ctx.pointed(multinet)?;
                let opts = PipelineOptions {
                    prime: *prime,
                    r: *r,
                    r_cap: *r_cap,
                    forbid_two: *forbid_two,
                    integral: *integral,
                    integral_cap: *integral_cap,
                };
                multinet_torsion_pipeline(&a, &pm, &opts)?.to_json()
            }
            MilnorCmd::PolarTorsion { multi, prime } => {
                let (a, m) = ctx.multiarrangement(multi)?;
                polarization_torsion(&a, &m, *prime)?.to_json()
            }
            MilnorCmd::Delta {
                multi,
                characteristic,
                degree,
            } => {
                let (a, m) = ctx.multiarrangement(multi)?;
                let d = polarized_delta(&a, &m, *characteristic)?;
                let top = d.degree().unwrap_or(0);
                let degrees: Vec<usize> = match degree {
                    Some(q) => vec![*q],
                    None => (0..=top).collect(),
                };
                let mut charpolys = serde_json::Map::new();
                for q in degrees {
                    let v = match d.charpoly(q) {
                        Ok(cp) => json!(cp.to_string()),
                        Err(e) if e.is_input() => {
                            ctx.warnings.push(format!("degree {q}: {e}"));
                            Value::Null
                        }
                        Err(e) => return Err(e),
                    };
                    charpolys.insert(q.to_string(), v);
                }
                json!({ "delta": d.to_string(), "charpolys": charpolys, "N": m.iter().sum::<u64>() })
            }
        },
        Cmd::Selftest(SelftestCmd::Fixtures) => {
            let checks = selftest::run_all();
            let failed = checks.iter().filter(|c| !c.pass).count();
            let out = json!({
                "passed": checks.len() - failed,
                "failed": failed,
                "checks": checks.iter().map(selftest::Outcome::to_json).collect::<Vec<_>>(),
            });
            if failed > 0 {
                return Err(Error::invariant(format!(
                    "{failed} selftest checks failed: {out}"
                )));
            }
            out
        }
    })
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut ctx = Ctx {
        inputs: Inputs::default(),
        warnings: Vec::new(),
    };
    match run(&cli.cmd, &mut ctx) {
        Ok(results) => {
            let rep = report::report(&argv[1..], &ctx.inputs, results, &ctx.warnings);
            let text = serde_json::to_string_pretty(&rep).expect("reports serialize") + "\n";
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input() { 2 } else { 1 })
        }
    }
}
