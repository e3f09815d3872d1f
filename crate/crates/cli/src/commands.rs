use std::path::PathBuf;

use atlas::{
    allowed_groups, family_curve, isogeny_kernel_field, verify_dataset, Family, KernelOptions, VerifyOptions,
    DEFAULT_KERNEL_CAP,
};
use bigmath::Rational;
use clap::Subcommand;
use ellcurve::{division_poly, CurveJson, CurveModel};
use num_bigint::BigInt;
use numberfield::{roots_of_rational_poly, FieldElement, FieldSpec, NumberField};
use polyring::{PolyRing, Rationals};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use torsion::torsion_subgroup;

use crate::{CliError, Config, Fetcher};

/// One unit of work. The same shape is accepted on the command line and in batch files.
#[derive(Clone, Debug, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Command {
    /// Torsion subgroup of E over K.
    Torsion {
        /// LMFDB label, a-invariants as a JSON array, or a curve JSON object.
        #[arg(long)]
        curve: String,
        /// Q, cyclo:p, cyclo:p^k or quad:d.
        #[arg(long)]
        field: String,
    },
    /// Division polynomial ψ̃_n of the short model, in x.
    Divpoly {
        #[arg(long)]
        curve: String,
        #[arg(short = 'n')]
        n: u32,
    },
    /// Roots in K of a rational polynomial read from a JSON file, constant term first.
    Roots {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        field: String,
    },
    /// Roots of ψ̃_ℓ in K, their Galois orbits and ramification.
    KernelField {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        field: String,
        /// Largest ℓ searched.
        #[arg(long)]
        #[serde(default)]
        cap: Option<u32>,
    },
    /// Torsion groups allowed over Q(ζ_p).
    Classify {
        #[arg(long)]
        p: u64,
    },
    /// Quadratic twist E_d.
    Twist {
        #[arg(long)]
        curve: String,
        #[arg(short = 'd', allow_hyphen_values = true)]
        d: i64,
    },
    /// A member of the jkl10 or jkl12 family and its quadratic field.
    Family {
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Runs a bundled verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        /// Also run the long opt-in claims.
        #[arg(long)]
        #[serde(default)]
        stretch: bool,
        /// Include per-claim wall times, which makes reports nondeterministic.
        #[arg(long)]
        #[serde(default)]
        timings: bool,
    },
    /// a-invariants and conductor for an LMFDB label.
    Fetch { label: String },
}

pub struct Context {
    pub config: Config,
    pub fetcher: Fetcher,
    pub quiet: bool,
}

impl Context {
    pub fn progress(&self, msg: &str) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }
}

#[derive(Debug)]
pub struct Outcome {
    pub value: Value,
    /// False only for a verification report with failures.
    pub passed: bool,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { value, passed: true }
    }
}

fn field(s: &str) -> Result<NumberField, CliError> {
    let spec: FieldSpec = s.parse()?;
    Ok(NumberField::new(spec)?)
}

fn rational(s: &str) -> Result<Rational, CliError> {
    s.parse().map_err(|e| CliError::Domain(format!("'{s}' is not a rational number: {e}")))
}

/// A label, a JSON array of 2 (short model) or 5 a-invariants, or a curve JSON object.
pub fn resolve_curve(spec: &str, fetcher: &Fetcher) -> Result<CurveModel, CliError> {
    let s = spec.trim();
    if s.starts_with('{') {
        let j: CurveJson = serde_json::from_str(s).map_err(|e| CliError::Usage(format!("curve JSON: {e}")))?;
        return Ok(CurveModel::from_json(&j)?);
    }
    if s.starts_with('[') {
        let a: Vec<Rational> = serde_json::from_str(s).map_err(|e| CliError::Usage(format!("curve invariants: {e}")))?;
        let z = Rational::zero();
        let a: [Rational; 5] = match a.len() {
            2 => [z.clone(), z.clone(), z, a[0].clone(), a[1].clone()],
            5 => a.try_into().unwrap(),
            n => return Err(CliError::Usage(format!("expected 2 or 5 a-invariants, got {n}"))),
        };
        return Ok(CurveModel::from_a_invariants(a)?);
    }
    let entry = fetcher.fetch(s)?;
    Ok(entry.curve()?.with_label(entry.label))
}

fn int_json(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

pub fn run(cmd: &Command, ctx: &Context, seed: u64) -> Result<Outcome, CliError> {
    let cfg = &ctx.config;
    match cmd {
        Command::Torsion { curve, field: f } => {
            let e = resolve_curve(curve, &ctx.fetcher)?;
            let k = field(f)?;
            ctx.progress(&format!("torsion of {} over {}", e.label.as_deref().unwrap_or("curve"), k.spec()));
            let g = torsion_subgroup(&e, &k, &cfg.torsion_options(seed))?;
            Ok(Outcome::ok(json!({
                "curve": e.to_json(),
                "field": k.spec().to_string(),
                "structure": g.structure(),
                "resolved": g.is_resolved(),
                "torsion": g.to_json(&k),
            })))
        }
        Command::Divpoly { curve, n } => {
            let e = resolve_curve(curve, &ctx.fetcher)?;
            let s = e.short_form();
            let psi = division_poly(&s.a, &s.b, *n, cfg.divpoly_cap)?;
            Ok(Outcome::ok(json!({
                "curve": e.to_json(),
                "short_model": { "a": s.a.to_string(), "b": s.b.to_string() },
                "n": n,
                "degree": psi.deg(),
                "coefficients": psi.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            })))
        }
        Command::Roots { poly, field: f } => {
            let text = std::fs::read_to_string(poly)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", poly.display())))?;
            let coeffs: Vec<Rational> =
                serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("polynomial file: {e}")))?;
            let k = field(f)?;
            let p = PolyRing::new(Rationals).from_coeffs(coeffs);
            if p.is_zero() {
                return Err(CliError::Domain("roots of the zero polynomial".into()));
            }
            let rep = roots_of_rational_poly(&k, &p, &cfg.root_options(seed))?;
            let roots: Vec<FieldElement> = rep.roots.iter().map(|r| FieldElement::from_elem(&k, r)).collect();
            Ok(Outcome::ok(json!({
                "field": k.spec().to_string(),
                "degree": p.deg(),
                "roots": roots,
                "report": rep,
            })))
        }
        Command::KernelField { curve, ell, field: f, cap } => {
            let e = resolve_curve(curve, &ctx.fetcher)?;
            let k = field(f)?;
            let opts = KernelOptions { cap: cap.unwrap_or(DEFAULT_KERNEL_CAP), roots: cfg.root_options(seed) };
            ctx.progress(&format!("ψ̃_{ell} over {}", k.spec()));
            let r = isogeny_kernel_field(&e, *ell, &k, &opts)?;
            Ok(Outcome::ok(serde_json::to_value(r).unwrap()))
        }
        Command::Classify { p } => Ok(Outcome::ok(serde_json::to_value(allowed_groups(*p)?).unwrap())),
        Command::Twist { curve, d } => {
            let e = resolve_curve(curve, &ctx.fetcher)?;
            let t = e.quadratic_twist(&BigInt::from(*d))?;
            Ok(Outcome::ok(json!({ "curve": e.to_json(), "d": d, "twist": t.to_json() })))
        }
        Command::Family { family, t } => {
            let fam: Family = family.parse()?;
            let c = family_curve(fam, &rational(t)?)?;
            Ok(Outcome::ok(json!({
                "family": fam,
                "t": c.t,
                "curve": c.curve.to_json(),
                "d_value": c.d_value,
                "d": int_json(&c.d),
            })))
        }
        Command::Verify { suite, stretch, timings } => {
            let opts = VerifyOptions {
                seed: cfg.seed,
                jobs: cfg.jobs,
                stretch: *stretch,
                timings: *timings,
                torsion: cfg.torsion_options(cfg.seed),
                ..Default::default()
            };
            ctx.progress(&format!("verifying {suite} with {} worker(s)", cfg.jobs));
            let r = verify_dataset(suite, &opts)?;
            if !ctx.quiet {
                eprint!("{}", r.to_table());
            }
            Ok(Outcome { passed: r.passed(), value: serde_json::to_value(&r).unwrap() })
        }
        Command::Fetch { label } => Ok(Outcome::ok(serde_json::to_value(ctx.fetcher.fetch(label)?).unwrap())),
    }
}
