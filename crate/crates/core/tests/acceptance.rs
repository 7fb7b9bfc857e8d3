//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use drinfeld_core::combinat::{
    verify_binomial_reduction, verify_catalan_congruence, verify_catalan_identity,
    verify_char0_identity, verify_tower_relation, verify_trinomial_and_sum, verify_zero_window,
};
use drinfeld_core::drinfeld::{
    default_extension_degree, expand_phi, from_json, oracle_interpolate, oracle_resultant_points,
    to_json, verify_boundary, verify_proof_intermediates, verify_ratio, verify_substitution,
    ModularPoly,
};
use drinfeld_core::poly::Poly;
use drinfeld_core::rng::stream;
use drinfeld_core::runner::{prime_powers_up_to, verify, Check, VerifyOptions};
use drinfeld_core::Result;

const MAIN_QS: [u64; 12] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27];
const SMALL_QS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];
const SEED: u64 = 2024;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        passed,
        detail: detail.into(),
    })
}

fn failures<T: std::fmt::Display>(bad: &[T]) -> String {
    bad.iter()
        .map(|b| b.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn summary<T: std::fmt::Display>(ok: &str, bad: &[T]) -> String {
    if bad.is_empty() {
        ok.to_string()
    } else {
        format!("failed at {}", failures(bad))
    }
}

struct Phis(BTreeMap<u64, ModularPoly>);

impl Phis {
    fn build() -> Result<Phis> {
        MAIN_QS
            .iter()
            .map(|&q| expand_phi(q).map(|phi| (q, phi)))
            .collect::<Result<_>>()
            .map(Phis)
    }

    fn get(&self, q: u64) -> &ModularPoly {
        &self.0[&q]
    }
}

fn closed_form_validity(phis: &Phis) -> Result<Outcome> {
    let mut bad = Vec::new();
    let mut slowest = (0, 0.0);
    for q in MAIN_QS {
        let start = Instant::now();
        let r = verify_substitution(phis.get(q))?;
        let secs = start.elapsed().as_secs_f64();
        if secs > slowest.1 {
            slowest = (q, secs);
        }
        if !r.passed() {
            bad.push(format!("q={q} ({} residual terms)", r.residual_terms));
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} ; slowest substitution q={} in {:.2}s",
            summary("substitution vanishes for all 12 q", &bad),
            slowest.0,
            slowest.1
        ),
    )
}

fn boundary_formulas(phis: &Phis) -> Result<Outcome> {
    let mut bad = Vec::new();
    for q in MAIN_QS {
        let r = verify_boundary(phis.get(q))?;
        if !r.passed() {
            bad.push(format!("q={q} {r:?}"));
        }
    }
    outcome(
        bad.is_empty(),
        summary("P_(q+1), P_q, P_1, P_0 match for all 12 q", &bad),
    )
}

fn coefficient_ratio(phis: &Phis) -> Result<Outcome> {
    let mut bad = Vec::new();
    let mut cases = 0;
    for q in MAIN_QS {
        let r = verify_ratio(phis.get(q))?;
        cases += r.cases.len();
        bad.extend(
            r.cases
                .iter()
                .filter(|c| !c.1)
                .map(|c| format!("q={q} m={}", c.0)),
        );
    }
    outcome(
        bad.is_empty(),
        summary(&format!("{cases} cross-multiplied cases hold"), &bad),
    )
}

fn catalan_identity() -> Result<Outcome> {
    let qs = prime_powers_up_to(1024);
    let mut bad = Vec::new();
    for &q in &qs {
        let r = verify_catalan_identity(q)?;
        if !r.main.passed() {
            bad.push(format!("q={q} main"));
        }
        if !r.restated.passed() {
            bad.push(format!("q={q} restated"));
        }
    }
    outcome(
        bad.is_empty(),
        summary(
            &format!("both forms hold for all {} prime powers <= 1024", qs.len()),
            &bad,
        ),
    )
}

fn char0_identity() -> Result<Outcome> {
    let mut bad = Vec::new();
    for e in 2..=64 {
        if !verify_char0_identity(e)?.passed() {
            bad.push(e);
        }
    }
    outcome(
        bad.is_empty(),
        summary("holds over Z for 2 <= e <= 64", &bad),
    )
}

fn congruence_suite() -> Result<Outcome> {
    let mut bad = Vec::new();
    for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25] {
        if !verify_binomial_reduction(q)? {
            bad.push(format!("reduce q={q}"));
        }
    }
    let mut sweeps = 0;
    for r in -10i64..=10 {
        for l in 0..=8 {
            sweeps += 1;
            if !verify_trinomial_and_sum(r, 0, 0, l).1 {
                bad.push(format!("sum r={r} l={l}"));
            }
        }
        for m in -10..=10 {
            for n in -10..=10 {
                sweeps += 1;
                if !verify_trinomial_and_sum(r, m, n, 0).0 {
                    bad.push(format!("trinomial r={r} m={m} n={n}"));
                }
            }
        }
    }
    let qs = prime_powers_up_to(512);
    for &q in &qs {
        if !verify_catalan_congruence(q)? {
            bad.push(format!("catalan q={q}"));
        }
    }
    outcome(
        bad.is_empty(),
        summary(
            &format!(
                "reduction for 9 q, {sweeps} trinomial/sum cases, congruence for {} q <= 512",
                qs.len()
            ),
            &bad,
        ),
    )
}

fn vanishing_window() -> Result<Outcome> {
    let qs = prime_powers_up_to(1024);
    let mut bad = Vec::new();
    for &q in &qs {
        if !verify_zero_window(q)? {
            bad.push(q);
        }
    }
    outcome(
        bad.is_empty(),
        summary(
            &format!("C_i = 0 mod p in the window for all {} q", qs.len()),
            &bad,
        ),
    )
}

fn proof_intermediates() -> Result<Outcome> {
    let mut bad = Vec::new();
    for q in SMALL_QS {
        let r = verify_proof_intermediates(q)?;
        if !r.passed() {
            bad.push(format!("q={q} {r:?}"));
        }
    }
    outcome(
        bad.is_empty(),
        summary("all intermediates hold for q <= 9", &bad),
    )
}

fn bump(phi: &ModularPoly, m: u32, n: u32) -> Result<ModularPoly> {
    let c = phi.coeff(m, n).checked_add(&Poly::one(phi.field()))?;
    phi.with_coeff(m, n, c)
}

fn oracle_equivalence(phis: &Phis) -> Result<Outcome> {
    const SPECIALISATIONS: u32 = 5;
    const TRIALS: u32 = 10;
    let mut bad = Vec::new();
    let mut retries = 0;
    for q in SMALL_QS {
        let phi = phis.get(q);
        let k = default_extension_degree(q);
        let mutant = bump(phi, 1, 1)?;
        for i in 0..SPECIALISATIONS {
            let v = oracle_interpolate(phi, k, &mut stream(SEED, q, 1, i))?;
            retries += v.attempts - 1;
            if !v.agrees() {
                bad.push(format!("interp q={q} #{i}"));
            }
            if oracle_interpolate(&mutant, k, &mut stream(SEED, q, 1, i))?.agrees() {
                bad.push(format!("interp missed mutant q={q} #{i}"));
            }
        }
        let v = oracle_resultant_points(phi, k, TRIALS, &mut stream(SEED, q, 2, 0))?;
        if v.trials.len() != TRIALS as usize || !v.passed() {
            bad.push(format!("resultant q={q}"));
        }
        let mv = oracle_resultant_points(&mutant, k, TRIALS, &mut stream(SEED, q, 2, 0))?;
        if mv.passed() {
            bad.push(format!("resultant missed mutant q={q}"));
        }
    }
    outcome(
        bad.is_empty(),
        summary(
            &format!(
                "{SPECIALISATIONS} interpolations ({retries} retries) and {TRIALS} resultant trials \
                 per q agree; both oracles reject a perturbed c_(1,1)"
            ),
            &bad,
        ),
    )
}

fn tower_relation() -> Result<Outcome> {
    let qs = prime_powers_up_to(256);
    let mut bad = Vec::new();
    for &q in &qs {
        if !verify_tower_relation(q)?.passed() {
            bad.push(q);
        }
    }
    outcome(
        bad.is_empty(),
        summary(
            &format!("cleared form holds for all {} q <= 256", qs.len()),
            &bad,
        ),
    )
}

fn determinism(phis: &Phis) -> Result<Outcome> {
    let opts = VerifyOptions {
        checks: Check::ALL.to_vec(),
        seed: 7,
        trials: 10,
        timings: false,
    };
    let a = verify(9, &opts)?;
    let b = verify(9, &opts)?;
    let mut bad = Vec::new();
    if a.to_text() != b.to_text() || a.to_json() != b.to_json() {
        bad.push("verify --q 9 --seed 7 reports differ".to_string());
    }
    if !a.passed() {
        bad.push("verify --q 9 --seed 7 failed".to_string());
    }
    for q in MAIN_QS {
        let json = to_json(phis.get(q));
        let back = from_json(&json)?;
        if &back != phis.get(q) || to_json(&back) != json {
            bad.push(format!("round trip q={q}"));
        }
    }
    outcome(
        bad.is_empty(),
        summary("identical reports; JSON round-trips for all 12 q", &bad),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let phis = match Phis::build() {
        Ok(p) => p,
        Err(e) => {
            println!("acceptance: cannot expand Phi: {e}");
            return ExitCode::FAILURE;
        }
    };
    println!(
        "expanded Phi for 12 q in {:.2}s",
        start.elapsed().as_secs_f64()
    );

    let criteria: [(&str, &dyn Fn() -> Result<Outcome>); 11] = [
        ("closed-form validity", &|| closed_form_validity(&phis)),
        ("boundary formulas", &|| boundary_formulas(&phis)),
        ("coefficient ratio", &|| coefficient_ratio(&phis)),
        ("catalan identity", &catalan_identity),
        ("characteristic-0 identity", &char0_identity),
        ("binomial and Catalan congruences", &congruence_suite),
        ("vanishing window", &vanishing_window),
        ("proof intermediates", &proof_intermediates),
        ("oracle equivalence", &|| oracle_equivalence(&phis)),
        ("tower relation", &tower_relation),
        ("determinism", &|| determinism(&phis)),
    ];

    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (passed, detail) = match run() {
            Ok(o) => (o.passed, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !passed {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {name}: {detail} [{:.2}s]",
            i + 1,
            if passed { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of 11 criteria passed in {:.2}s",
        11 - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
