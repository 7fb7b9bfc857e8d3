//! Check selection, execution and the deterministic run report shared by the
//! command-line tool and the acceptance suite.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::combinat::{
    verify_catalan_identity, verify_char0_identity, verify_tower_relation, verify_zero_window,
};
use crate::drinfeld::{
    default_extension_degree, expand_phi, oracle_interpolate, oracle_resultant_points,
    verify_boundary, verify_proof_intermediates, verify_ratio, verify_substitution, ModularPoly,
};
use crate::error::{Error, Result};
use crate::ff::prime_power;
use crate::rng::stream;

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

const PURPOSE_INTERP: u16 = 1;
const PURPOSE_RESULTANT: u16 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Boundary,
    Substitution,
    Ratio,
    Intermediates,
    OracleInterp,
    OracleResultant,
    Catalan,
    Char0,
    Tower,
    ZeroWindow,
}

impl Check {
    pub const ALL: [Check; 10] = [
        Check::Boundary,
        Check::Substitution,
        Check::Ratio,
        Check::Intermediates,
        Check::OracleInterp,
        Check::OracleResultant,
        Check::Catalan,
        Check::Char0,
        Check::Tower,
        Check::ZeroWindow,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Boundary => "boundary",
            Check::Substitution => "substitution",
            Check::Ratio => "ratio",
            Check::Intermediates => "intermediates",
            Check::OracleInterp => "oracle-interp",
            Check::OracleResultant => "oracle-resultant",
            Check::Catalan => "catalan",
            Check::Char0 => "char0",
            Check::Tower => "tower",
            Check::ZeroWindow => "zero-window",
        }
    }

    /// Parse `all` or a comma-separated list; the result is sorted and
    /// deduplicated.
    pub fn parse_list(s: &str) -> Result<Vec<Check>> {
        if s.trim() == "all" {
            return Ok(Check::ALL.to_vec());
        }
        let mut out = s
            .split(',')
            .map(|t| t.trim().parse())
            .collect::<Result<Vec<Check>>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Check> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Malformed(format!("unknown check `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: Check,
    /// Field size the check ran at, or the exponent `e` for `char0`.
    pub param: u64,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub terms: usize,
    pub t_coefficients: usize,
    pub max_t_degree: usize,
    pub max_t_degree_at: (u32, u32),
}

impl Counts {
    pub fn of(phi: &ModularPoly) -> Counts {
        let ((m, n), d) = phi.max_t_degree().unwrap_or(((0, 0), 0));
        Counts {
            terms: phi.terms().len(),
            t_coefficients: phi.terms().values().map(|c| c.nnz()).sum(),
            max_t_degree: d,
            max_t_degree_at: (m, n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<Counts>,
    pub results: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.status != Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serialises") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "drinfeld {} {}", self.version, self.command);
        let _ = writeln!(s, "seed {}", self.seed);
        if let Some(c) = &self.counts {
            let _ = writeln!(
                s,
                "terms {}, T-coefficients {}, max T-degree {} at X^{} Y^{}",
                c.terms, c.t_coefficients, c.max_t_degree, c.max_t_degree_at.0, c.max_t_degree_at.1
            );
        }
        for r in &self.results {
            let _ = write!(
                s,
                "{:<7} {:<16} {:>5}  {}",
                r.status, r.check, r.param, r.detail
            );
            if let Some(ms) = r.millis {
                let _ = write!(s, " ({ms} ms)");
            }
            s.push('\n');
        }
        let failed = self
            .results
            .iter()
            .filter(|r| r.status == Status::Fail)
            .count();
        let _ = write!(s, "{} checks, {} failed", self.results.len(), failed);
        if let Some(ms) = self.millis {
            let _ = write!(s, ", {ms} ms");
        }
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub checks: Vec<Check>,
    pub seed: u64,
    pub trials: u32,
    pub timings: bool,
}

fn outcome(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn flag(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "MISMATCH"
    }
}

fn timed<F>(check: Check, param: u64, timings: bool, f: F) -> CheckResult
where
    F: FnOnce() -> Result<(Status, String)>,
{
    let start = Instant::now();
    let (status, detail) = f().unwrap_or_else(|e| (Status::Fail, format!("error: {e}")));
    CheckResult {
        check,
        param,
        status,
        detail,
        millis: timings.then(|| start.elapsed().as_millis() as u64),
    }
}

fn run_on_phi(phi: &ModularPoly, check: Check, opts: &VerifyOptions) -> Result<(Status, String)> {
    let q = phi.q() as u64;
    match check {
        Check::Boundary => {
            let r = verify_boundary(phi)?;
            Ok((
                outcome(r.passed()),
                format!(
                    "P_(q+1) {}, P_q {}, P_1 {}, P_0 {}",
                    flag(r.p_top),
                    flag(r.p_q),
                    flag(r.p_1),
                    flag(r.p_0)
                ),
            ))
        }
        Check::Substitution => {
            let r = verify_substitution(phi)?;
            Ok((
                outcome(r.passed()),
                format!(
                    "{} residual terms up to z^{}",
                    r.residual_terms, r.z_degree_bound
                ),
            ))
        }
        Check::Ratio => {
            let r = verify_ratio(phi)?;
            let detail = if r.cases.is_empty() {
                "no m with 2 <= m <= q-1".to_string()
            } else {
                let bad: Vec<String> = r
                    .cases
                    .iter()
                    .filter(|c| !c.1)
                    .map(|c| c.0.to_string())
                    .collect();
                if bad.is_empty() {
                    format!("{} cross-multiplied cases hold", r.cases.len())
                } else {
                    format!("fails at m = {}", bad.join(", "))
                }
            };
            Ok((outcome(r.passed()), detail))
        }
        Check::Intermediates => {
            let r = verify_proof_intermediates(q)?;
            Ok((
                outcome(r.passed()),
                format!(
                    "product form {}, root relations {}, closing identity {}",
                    flag(r.product_form),
                    flag(r.root_relations),
                    flag(r.closing_identity)
                ),
            ))
        }
        Check::OracleInterp => {
            let k = default_extension_degree(q);
            let verdicts = (0..opts.trials)
                .into_par_iter()
                .map(|i| {
                    let mut rng = stream(opts.seed, q, PURPOSE_INTERP, i);
                    oracle_interpolate(phi, k, &mut rng)
                })
                .collect::<Result<Vec<_>>>()?;
            let agree = verdicts.iter().filter(|v| v.agrees()).count();
            let retries: u32 = verdicts.iter().map(|v| v.attempts - 1).sum();
            Ok((
                outcome(agree == verdicts.len()),
                format!(
                    "{agree}/{} specialisations agree over F_(q^{k}), {retries} retries",
                    verdicts.len()
                ),
            ))
        }
        Check::OracleResultant => {
            let k = default_extension_degree(q);
            let verdicts = (0..opts.trials)
                .into_par_iter()
                .map(|i| {
                    let mut rng = stream(opts.seed, q, PURPOSE_RESULTANT, i);
                    oracle_resultant_points(phi, k, 1, &mut rng)
                })
                .collect::<Result<Vec<_>>>()?;
            let ok = verdicts.iter().filter(|v| v.passed()).count();
            let mut scalars: Vec<String> = verdicts
                .iter()
                .flat_map(|v| {
                    let minus_one = v.field.neg(1);
                    v.trials.iter().map(move |t| match t.scalar {
                        Some(1) => "+1".to_string(),
                        Some(s) if s == minus_one => "-1".to_string(),
                        Some(s) => v.field.format_raw(s),
                        None => "none".to_string(),
                    })
                })
                .collect();
            scalars.sort();
            scalars.dedup();
            Ok((
                outcome(ok == verdicts.len()),
                format!(
                    "{ok}/{} trials pass over F_(q^{k}), scalars {{{}}}",
                    verdicts.len(),
                    scalars.join(", ")
                ),
            ))
        }
        _ => unreachable!("identity checks do not take Phi"),
    }
}

fn run_identity(check: Check, param: u64) -> Result<(Status, String)> {
    match check {
        Check::Catalan => {
            let r = verify_catalan_identity(param)?;
            Ok((
                outcome(r.passed()),
                format!(
                    "main form {}, restated form {}",
                    flag(r.main.passed()),
                    flag(r.restated.passed())
                ),
            ))
        }
        Check::Char0 => {
            let r = verify_char0_identity(param as i64)?;
            Ok((outcome(r.passed()), format!("degree {} over Z", param + 1)))
        }
        Check::Tower => {
            let r = verify_tower_relation(param)?;
            Ok((outcome(r.passed()), "cleared form".to_string()))
        }
        Check::ZeroWindow => {
            let ok = verify_zero_window(param)?;
            Ok((
                outcome(ok),
                "C_i = 0 mod p for (q-1)/2 < i < q-1".to_string(),
            ))
        }
        _ => unreachable!("drinfeld checks need Phi"),
    }
}

fn total_millis(start: Instant, timings: bool) -> Option<u64> {
    timings.then(|| start.elapsed().as_millis() as u64)
}

/// Run the selected checks against an already built `phi`. Checks run
/// concurrently; results come back in `opts.checks` order.
///
/// The identity checks run at `q` itself; `char0` does not depend on `q` and
/// is reported as skipped.
pub fn verify_phi(phi: &ModularPoly, opts: &VerifyOptions) -> Report {
    let start = Instant::now();
    let q = phi.q() as u64;
    let results = opts
        .checks
        .par_iter()
        .map(|&check| match check {
            Check::Char0 => CheckResult {
                check,
                param: q,
                status: Status::Skipped,
                detail: "independent of q; run through `identity`".to_string(),
                millis: None,
            },
            Check::Catalan | Check::Tower | Check::ZeroWindow => {
                timed(check, q, opts.timings, || run_identity(check, q))
            }
            _ => timed(check, q, opts.timings, || run_on_phi(phi, check, opts)),
        })
        .collect();
    Report {
        version: ARTIFACT_VERSION,
        command: format!(
            "verify --q {q} --checks {} --seed {} --trials {}",
            opts.checks
                .iter()
                .map(|c| c.name())
                .collect::<Vec<_>>()
                .join(","),
            opts.seed,
            opts.trials
        ),
        seed: opts.seed,
        q: Some(q),
        counts: Some(Counts::of(phi)),
        results,
        millis: total_millis(start, opts.timings),
    }
}

/// Expand `Phi` for `q` and run [`verify_phi`].
pub fn verify(q: u64, opts: &VerifyOptions) -> Result<Report> {
    let phi = expand_phi(q)?;
    Ok(verify_phi(&phi, opts))
}

/// Prime powers `p^e <= bound`, enumerated by `p` and then `e`, in increasing
/// order.
pub fn prime_powers_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&n| prime_power(n).is_some()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityOptions {
    pub checks: Vec<Check>,
    pub q_max: u64,
    pub e_max: u64,
    pub seed: u64,
    pub timings: bool,
}

/// Sweep the identity checks: `char0` for `2 <= e <= e_max`, the others for
/// every prime power `q <= q_max`. Drinfeld checks in the selection are
/// reported as skipped.
pub fn identity_sweep(opts: &IdentityOptions) -> Report {
    let start = Instant::now();
    let qs = prime_powers_up_to(opts.q_max);
    let mut jobs = Vec::new();
    for &check in &opts.checks {
        match check {
            Check::Char0 => jobs.extend((2..=opts.e_max).map(|e| (check, e))),
            Check::Catalan | Check::Tower | Check::ZeroWindow => {
                jobs.extend(qs.iter().map(|&q| (check, q)))
            }
            _ => {}
        }
    }
    let mut results: Vec<CheckResult> = opts
        .checks
        .iter()
        .filter(|c| {
            !matches!(
                c,
                Check::Char0 | Check::Catalan | Check::Tower | Check::ZeroWindow
            )
        })
        .map(|&check| CheckResult {
            check,
            param: 0,
            status: Status::Skipped,
            detail: "needs --q; run through `verify`".to_string(),
            millis: None,
        })
        .collect();
    results.extend(
        jobs.par_iter()
            .map(|&(check, param)| timed(check, param, opts.timings, || run_identity(check, param)))
            .collect::<Vec<_>>(),
    );
    Report {
        version: ARTIFACT_VERSION,
        command: format!(
            "identity --q-max {} --e-max {} --checks {}",
            opts.q_max,
            opts.e_max,
            opts.checks
                .iter()
                .map(|c| c.name())
                .collect::<Vec<_>>()
                .join(",")
        ),
        seed: opts.seed,
        q: None,
        counts: None,
        results,
        millis: total_millis(start, opts.timings),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_checks() {
        assert_eq!(Check::parse_list("all").unwrap().len(), 10);
        assert_eq!(
            Check::parse_list("substitution,ratio").unwrap(),
            vec![Check::Substitution, Check::Ratio]
        );
        assert_eq!(
            Check::parse_list("ratio,substitution,ratio").unwrap(),
            vec![Check::Substitution, Check::Ratio]
        );
        assert!(Check::parse_list("ratio,bogus").is_err());
    }

    #[test]
    fn verify_q2_all_passes_and_is_deterministic() {
        let opts = VerifyOptions {
            checks: Check::ALL.to_vec(),
            seed: 3,
            trials: 2,
            timings: false,
        };
        let a = verify(2, &opts).unwrap();
        assert!(a.passed(), "{}", a.to_text());
        assert_eq!(a.to_text(), verify(2, &opts).unwrap().to_text());
        assert_eq!(a.results[7].status, Status::Skipped);
    }

    #[test]
    fn perturbed_phi_fails() {
        let phi = expand_phi(4).unwrap();
        let c = phi.coeff(1, 1);
        let bad = phi
            .with_coeff(
                1,
                1,
                c.checked_add(&crate::poly::Poly::one(phi.field())).unwrap(),
            )
            .unwrap();
        let opts = VerifyOptions {
            checks: vec![Check::Substitution],
            seed: 0,
            trials: 1,
            timings: false,
        };
        assert!(!verify_phi(&bad, &opts).passed());
    }

    #[test]
    fn small_identity_sweep() {
        let r = identity_sweep(&IdentityOptions {
            checks: Check::ALL.to_vec(),
            q_max: 16,
            e_max: 8,
            seed: 0,
            timings: false,
        });
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(
            r.results
                .iter()
                .filter(|x| x.status == Status::Skipped)
                .count(),
            6
        );
        assert_eq!(
            prime_powers_up_to(16),
            vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
        );
    }
}
