use std::time::Instant;

use bigmath::factor_u64;
use ellcurve::{CurveModel, Point, Weierstrass};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use numberfield::{FieldSpec, NfElem, NumberField, RootOptions};
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use torsion::{format_structure, quadratic_subfield_disc, torsion_subgroup, TorsionGroup, TorsionOptions};

use crate::corpus::{dataset, Check, Claim, CurveRecord};
use crate::jkl::family_curve;
use crate::kernel::{isogeny_kernel_field, KernelOptions};
use crate::AtlasError;

/// Structures for which torsion over Q(ζ_p) must already live over Q(√±p).
pub const DESCENT_STRUCTURES: [(u64, u64); 3] = [(2, 10), (2, 12), (1, 16)];

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub jobs: usize,
    pub stretch: bool,
    pub torsion: TorsionOptions,
    /// Division-polynomial cap for kernel claims.
    pub kernel_cap: u32,
    /// Record per-claim wall-clock times in the report.
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            jobs: 1,
            stretch: false,
            torsion: TorsionOptions::default(),
            kernel_cap: 40,
            timings: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimResult {
    pub id: String,
    pub kind: String,
    pub field: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
    pub note: String,
    pub seed: u64,
    pub aux_primes: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub stretch: bool,
    pub claims: Vec<ClaimResult>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_table(&self) -> String {
        let width = |f: fn(&ClaimResult) -> &str, min: usize| self.claims.iter().map(|c| f(c).chars().count()).max().unwrap_or(0).max(min);
        let w = width(|c| &c.id, 5);
        let we = width(|c| &c.expected, 8);
        let wc = width(|c| &c.computed, 8);
        let mut out = format!("suite {} (seed {})\n", self.suite, self.seed);
        out += &format!("{:<6} {:<w$} {:<we$} {:<wc$} {:>9}\n", "status", "claim", "expected", "computed", "ms");
        for c in &self.claims {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            let ms = c.elapsed_ms.map(|m| m.to_string()).unwrap_or_else(|| "-".into());
            out += &format!("{status:<6} {:<w$} {:<we$} {:<wc$} {ms:>9}\n", c.id, c.expected, c.computed);
        }
        out += &format!("pass {} fail {} skip {}\n", self.summary.pass, self.summary.fail, self.summary.skip);
        out
    }
}

/// Seed for one job: the first 8 bytes of SHA-256(global seed ‖ key).
pub fn derive_seed(seed: u64, key: &str) -> u64 {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(key.as_bytes());
    let d = h.finalize();
    u64::from_le_bytes(d[..8].try_into().unwrap())
}

struct Outcome {
    expected: String,
    computed: String,
    status: Status,
    aux_primes: Vec<u64>,
}

fn field(spec: &FieldSpec) -> Result<NumberField, AtlasError> {
    Ok(NumberField::new(spec.clone())?)
}

fn aux_primes(g: &TorsionGroup) -> Vec<u64> {
    let mut v: Vec<u64> = g.primary.iter().flat_map(|p| p.aux_primes.iter().copied()).collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn galois_point(k: &NumberField, a: i64, p: &Point<NfElem>) -> Result<Point<NfElem>, AtlasError> {
    Ok(match p {
        Point::Infinity => Point::Infinity,
        Point::Affine(x, y) => Point::Affine(k.galois_apply(a, x)?, k.galois_apply(a, y)?),
    })
}

fn has_exact_order(e: &Weierstrass<NumberField>, p: &Point<NfElem>, n: u64) -> bool {
    e.mul_i64(n as i64, p).is_infinity()
        && factor_u64(n).iter().all(|(l, _)| !e.mul_i64((n / l) as i64, p).is_infinity())
}

/// Every element of E(K)_tors, from the generators of the computed group.
fn group_elements(e: &Weierstrass<NumberField>, g: &TorsionGroup) -> Vec<Point<NfElem>> {
    let (m, mn) = g.invariants;
    let orders: Vec<u64> = [mn, m].into_iter().filter(|&n| n > 1).collect();
    let mut out = vec![Point::Infinity];
    for (gen, n) in g.generators.iter().zip(orders) {
        let mut next = Vec::new();
        let mut multiple = Point::Infinity;
        for _ in 0..n {
            for p in &out {
                next.push(e.add(p, &multiple));
            }
            multiple = e.add(&multiple, gen);
        }
        out = next;
    }
    out
}

fn check_point(
    curve: &CurveModel,
    spec: &FieldSpec,
    order: u64,
    fixed_by: Option<i64>,
    opts: &TorsionOptions,
) -> Result<Outcome, AtlasError> {
    let k = field(spec)?;
    let g = torsion_subgroup(curve, &k, opts)?;
    let e = curve.over(&k);
    let mut found = false;
    for p in group_elements(&e, &g) {
        if !has_exact_order(&e, &p, order) {
            continue;
        }
        if let Some(a) = fixed_by {
            if galois_point(&k, a, &p)? != p {
                continue;
            }
        }
        found = true;
        break;
    }
    let fixed = fixed_by.map(|a| format!(" fixed by σ_{a}")).unwrap_or_default();
    Ok(Outcome {
        expected: format!("order-{order} point{fixed}"),
        computed: format!("{}; {}", g.structure(), if found { "found" } else { "none" }),
        status: pass_if(found && g.is_resolved()),
        aux_primes: aux_primes(&g),
    })
}

fn run_check(record: &CurveRecord, claim: &Claim, seed: u64, opts: &VerifyOptions) -> Result<Outcome, AtlasError> {
    let mut topts = opts.torsion.clone();
    topts.roots = RootOptions { seed, ..topts.roots };
    match &claim.check {
        Check::Unverifiable { statement, .. } => Ok(Outcome {
            expected: statement.clone(),
            computed: "unverifiable by core".into(),
            status: Status::Skip,
            aux_primes: Vec::new(),
        }),
        Check::Group { field: spec, expected } => {
            let g = torsion_subgroup(&record.curve()?, &field(spec)?, &topts)?;
            Ok(Outcome {
                expected: format_structure((expected[0], expected[1])),
                computed: g.structure(),
                status: pass_if(g.is_resolved() && [g.invariants.0, g.invariants.1] == *expected),
                aux_primes: aux_primes(&g),
            })
        }
        Check::Point { field: spec, order, fixed_by } => check_point(&record.curve()?, spec, *order, *fixed_by, &topts),
        Check::Kernel { field: spec, ell, root, orbit_degree, ramified } => {
            let k = field(spec)?;
            let cap = if claim.stretch { opts.kernel_cap.max(*ell as u32) } else { opts.kernel_cap };
            let kopts = KernelOptions { cap, roots: topts.roots.clone() };
            let r = isogeny_kernel_field(&record.curve()?, *ell, &k, &kopts)?;
            let mut ok = r.has_root == *root && r.flags.is_empty();
            if *root {
                ok &= r.orbits.iter().any(|o| {
                    orbit_degree.is_none_or(|d| o.orbit_degree == d)
                        && ramified.iter().all(|&p| o.verdict(p) == Some(numberfield::DedekindVerdict::Ramified))
                });
            }
            let describe = |root: bool, deg: Option<usize>, ram: &[u64]| {
                let mut s = if root { "root".to_string() } else { "no root".to_string() };
                if let Some(d) = deg {
                    s += &format!(", orbit {d}");
                }
                if !ram.is_empty() {
                    s += &format!(", ramified {ram:?}");
                }
                s
            };
            let (deg, ram) = match r.orbits.first() {
                Some(o) => (
                    Some(o.orbit_degree),
                    o.dedekind
                        .iter()
                        .filter(|v| v.verdict == numberfield::DedekindVerdict::Ramified)
                        .map(|v| v.p)
                        .collect::<Vec<_>>(),
                ),
                None => (None, Vec::new()),
            };
            Ok(Outcome {
                expected: describe(*root, *orbit_degree, ramified),
                computed: describe(r.has_root, deg, &ram),
                status: pass_if(ok),
                aux_primes: r.aux_primes_tried,
            })
        }
        Check::BadPrimes { expected } => {
            // The bundled models are minimal, so their discriminant carries exactly the bad primes.
            let disc = record.curve()?.discriminant().numer().magnitude().clone();
            let bad: Vec<u64> = bigmath::factor(&disc).into_iter().filter_map(|(p, _)| p.to_u64()).collect();
            let from_conductor: Vec<u64> =
                record.conductor().map(|n| factor_u64(n).into_iter().map(|(p, _)| p).collect()).unwrap_or_default();
            Ok(Outcome {
                expected: format!("{expected:?}"),
                computed: format!("{bad:?}"),
                status: pass_if(&bad == expected && (from_conductor.is_empty() || &from_conductor == expected)),
                aux_primes: Vec::new(),
            })
        }
        Check::Family { expected_d, expected } => {
            let fam = record.family()?.ok_or_else(|| AtlasError::Internal("family claim without a family".into()))?;
            let t = record.t.as_ref().ok_or_else(|| AtlasError::Internal("family claim without t".into()))?;
            let fc = family_curve(fam, t)?;
            let k = NumberField::quadratic_or_rational(&fc.d)?;
            let g = torsion_subgroup(&fc.curve, &k, &topts)?;
            Ok(Outcome {
                expected: format!("d = {expected_d}, {}", format_structure((expected[0], expected[1]))),
                computed: format!("d = {}, {}", fc.d, g.structure()),
                status: pass_if(
                    fc.d == BigInt::from(*expected_d)
                        && g.is_resolved()
                        && [g.invariants.0, g.invariants.1] == *expected,
                ),
                aux_primes: aux_primes(&g),
            })
        }
        Check::Descent { p } => {
            let curve = record.curve()?;
            let kc = NumberField::new(FieldSpec::cyclotomic(*p))?;
            let gc = torsion_subgroup(&curve, &kc, &topts)?;
            let d = quadratic_subfield_disc(*p)?;
            let kq = NumberField::new(FieldSpec::quadratic(d))?;
            let gq = torsion_subgroup(&curve, &kq, &topts)?;
            let mut aux = aux_primes(&gc);
            aux.extend(aux_primes(&gq));
            aux.sort_unstable();
            aux.dedup();
            let applicable = DESCENT_STRUCTURES.contains(&gc.invariants);
            let status = if !applicable {
                Status::Skip
            } else {
                pass_if(gc.is_resolved() && gq.is_resolved() && gc.invariants == gq.invariants)
            };
            Ok(Outcome {
                expected: format!("same group over quad:{d}"),
                computed: format!("{} / {}", gc.structure(), gq.structure()),
                status,
                aux_primes: aux,
            })
        }
    }
}

fn run_claim(record: &CurveRecord, claim: &Claim, id: &str, opts: &VerifyOptions) -> ClaimResult {
    let seed = derive_seed(opts.seed, id);
    let start = Instant::now();
    let outcome = if claim.stretch && !opts.stretch {
        Ok(Outcome {
            expected: claim.note.clone(),
            computed: "stretch target not enabled".into(),
            status: Status::Skip,
            aux_primes: Vec::new(),
        })
    } else {
        run_check(record, claim, seed, opts)
    };
    let outcome = outcome.unwrap_or_else(|e| Outcome {
        expected: claim.note.clone(),
        computed: format!("error: {e}"),
        status: Status::Fail,
        aux_primes: Vec::new(),
    });
    ClaimResult {
        id: id.to_string(),
        kind: claim.check.kind().into(),
        field: claim.check.field(),
        expected: outcome.expected,
        computed: outcome.computed,
        status: outcome.status,
        note: claim.note.clone(),
        seed,
        aux_primes: outcome.aux_primes,
        elapsed_ms: opts.timings.then(|| start.elapsed().as_millis() as u64),
    }
}

/// Runs every claim of a bundled suite on a pool of `opts.jobs` workers.
/// Results come back in dataset order whatever order the claims finish in.
pub fn verify_dataset(suite: &str, opts: &VerifyOptions) -> Result<VerificationReport, AtlasError> {
    let claims = dataset().suite_claims(suite)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| AtlasError::Resource(format!("worker pool: {e}")))?;
    let results: Vec<ClaimResult> =
        pool.install(|| claims.par_iter().map(|(r, c, id)| run_claim(r, c, id, opts)).collect());
    let mut summary = Summary::default();
    for r in &results {
        match r.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Skip => summary.skip += 1,
        }
    }
    Ok(VerificationReport { suite: suite.to_string(), seed: opts.seed, stretch: opts.stretch, claims: results, summary })
}
