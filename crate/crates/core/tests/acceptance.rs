//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Failing criteria are reported, not hidden; the process exits 0 so that the
//! rest of the workspace tests still run. Set SHIFTLAB_STRICT=1 to turn any
//! FAIL into a nonzero exit.

use std::time::{Duration, Instant};

use num_traits::Signed;
use rayon::prelude::*;

use shiftlab_core::alcove::{independence_scan, verma_scan};
use shiftlab_core::characters::{
    dominant_root_lattice_level, multiplet_char, wall_scan, walg_vacuum_oracle,
};
use shiftlab_core::qseries::{eta_inv_pow, eta_pow, restricted_partitions};
use shiftlab_core::rational::{qi, qr};
use shiftlab_core::{LambdaParam, ShiftCase, Variant};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn case(t: &str, v: Variant, m: i64) -> ShiftCase {
    ShiftCase::from_type(t, v, m).unwrap_or_else(|e| panic!("{t} {v} m={m}: {e}"))
}

fn variants(t: &str) -> Vec<Variant> {
    let mut v = Vec::new();
    if t != "B1" {
        v.push(Variant::NonSuper);
    }
    if t.starts_with('B') {
        v.push(Variant::Super);
        v.push(Variant::SuperRamond);
    }
    v
}

fn cases(types: &[&str], ms: std::ops::RangeInclusive<i64>, with_ramond: bool) -> Vec<ShiftCase> {
    let mut out = Vec::new();
    for t in types {
        for v in variants(t) {
            if v == Variant::SuperRamond && !with_ramond {
                continue;
            }
            for m in ms.clone() {
                out.push(case(t, v, m));
            }
        }
    }
    out
}

fn strong(c: &ShiftCase) -> Vec<LambdaParam> {
    c.enumerate_lambda().into_iter().filter(|l| c.alcove_inequality(l)).collect()
}

const RANK3: [&str; 9] = ["A1", "A2", "A3", "B1", "B2", "B3", "C2", "C3", "G2"];

fn axioms() -> Outcome {
    let cs = cases(&["A1", "A2", "A3", "B2", "B3", "C3", "G2"], 1..=3, true);
    let reps: Vec<_> = cs.par_iter().map(|c| c.verify_axioms()).collect();
    let checks: usize = reps.iter().map(|r| r.checks.values().sum::<usize>()).sum();
    let bad: Vec<String> = reps.iter().filter(|r| !r.passed()).map(|r| format!("{} ({})", r.case, r.failures.len())).collect();
    outcome(bad.is_empty(), format!("{} cases, {checks} axiom instances, failing: {bad:?}", cs.len()))
}

fn strong_vs_alcove() -> Outcome {
    let cs = cases(&RANK3, 1..=3, false);
    let results: Vec<(usize, Vec<String>)> = cs
        .par_iter()
        .map(|c| {
            let mut bad = Vec::new();
            let lams = c.enumerate_lambda();
            for lam in &lams {
                let v = c.check_strong_all_words(lam).expect("word cap");
                if v.all != c.alcove_inequality(lam) || v.all != v.any {
                    bad.push(format!("{} {lam}", c.id()));
                }
            }
            (lams.len(), bad)
        })
        .collect();
    let n: usize = results.iter().map(|r| r.0).sum();
    let bad: Vec<String> = results.into_iter().flat_map(|r| r.1).collect();
    outcome(bad.is_empty(), format!("{} cases, {n} λ, every reduced word of w0, discrepancies: {bad:?}", cs.len()))
}

fn w0_shift() -> Outcome {
    let cs = cases(&RANK3, 1..=3, false);
    let mut checked = 0;
    let mut bad_cases = Vec::new();
    // mismatches whose value is −ρ, and the remaining ones with their value
    let mut minus_rho = 0;
    let mut other = Vec::new();
    for c in &cs {
        let expect = if c.variant.is_super() { -&c.rs.rho } else { -&c.rs.rho_check };
        let mut bad = 0;
        for lam in strong(c) {
            checked += 1;
            let s = c.w0_shift(&lam);
            if s == expect {
                continue;
            }
            bad += 1;
            if s == -&c.rs.rho {
                minus_rho += 1;
            } else {
                other.push(format!("{} λ={lam} gives {s}", c.id()));
            }
        }
        if bad > 0 {
            bad_cases.push(format!("{} ({bad})", c.id()));
        }
    }
    let mut d = format!("{checked} strong λ; cases with mismatches: {bad_cases:?}");
    if !bad_cases.is_empty() {
        d.push_str(&format!(
            "; {minus_rho} mismatches equal −ρ (≠ −ρ∨ in non simply laced types), the rest are σ-fixed rank-one boundary points with −2ρ: {other:?}"
        ));
    }
    outcome(bad_cases.is_empty(), d)
}

fn triplet() -> Outcome {
    let c = case("A1", Variant::NonSuper, 2);
    let got = multiplet_char(&shiftlab_core::WeightVec::zero(1), &c.lambda_zero(), &c, 50).unwrap();
    let want = restricted_partitions(2, 50).qshift(&qr(1, 12));
    let prefix: Vec<i64> = got.integer_steps().iter().take(7).map(|x| i64::try_from(x).unwrap()).collect();
    let ok = got == want && c.central_charge == qi(-2) && prefix == [1, 0, 1, 1, 2, 2, 4];
    outcome(ok, format!("c = {}, series {}…, precision q^{}", c.central_charge, fmt_prefix(&prefix), got.precision()))
}

fn fmt_prefix(p: &[i64]) -> String {
    format!("q^(1/12)·{p:?}")
}

fn vacua() -> Outcome {
    let list = [
        ("A1", Variant::NonSuper, 2),
        ("A1", Variant::NonSuper, 3),
        ("A2", Variant::NonSuper, 2),
        ("B2", Variant::NonSuper, 2),
        ("B2", Variant::NonSuper, 3),
        ("G2", Variant::NonSuper, 3),
        ("B1", Variant::Super, 2),
        ("B1", Variant::Super, 3),
    ];
    let bad: Vec<String> = list
        .par_iter()
        .filter_map(|&(t, v, m)| {
            let c = case(t, v, m);
            let z = shiftlab_core::WeightVec::zero(c.rank());
            let f = multiplet_char(&z, &c.lambda_zero(), &c, 30).unwrap();
            let o = walg_vacuum_oracle(&c, 30).unwrap();
            (f != o || f.order() < 30).then(|| c.id())
        })
        .collect();
    outcome(bad.is_empty(), format!("{} cases to order 30, mismatches: {bad:?}", list.len()))
}

fn walls() -> Outcome {
    let cs: Vec<ShiftCase> = [("A1", Variant::NonSuper), ("A2", Variant::NonSuper), ("B2", Variant::NonSuper), ("C2", Variant::NonSuper), ("G2", Variant::NonSuper), ("B1", Variant::Super), ("B2", Variant::Super)]
        .iter()
        .map(|&(t, v)| case(t, v, 2))
        .collect();
    let (mut points, mut walls, mut checks) = (0, 0, 0);
    let mut bad = Vec::new();
    for c in &cs {
        let mut lams = strong(c);
        lams.push(c.lambda_zero());
        lams.dedup();
        for lam in &lams {
            let r = wall_scan(c, lam, 4, 8).unwrap();
            points += r.points;
            walls += r.walls;
            checks += r.antisymmetry_checks;
            bad.extend(r.failures.iter().map(|f| format!("{} {lam}: {f}", c.id())));
        }
    }
    outcome(
        bad.is_empty() && walls > 0,
        format!("{points} β (labels in [−4,4]), {walls} wall points all zero, {checks} antisymmetry identities, failures: {}", bad.len()),
    )
}

fn positivity() -> Outcome {
    let cs = cases(&["A1", "A2", "B1", "B2", "C2", "G2"], 1..=3, false);
    let results: Vec<(usize, Vec<String>)> = cs
        .par_iter()
        .map(|c| {
            let mut n = 0;
            let mut bad = Vec::new();
            for lam in strong(c) {
                for h in 0..=4 {
                    for alpha in dominant_root_lattice_level(c, h) {
                        let s = multiplet_char(&alpha, &lam, c, 30).unwrap();
                        n += 1;
                        if s.coeffs().iter().any(|x| x.is_negative()) || s.is_zero() {
                            bad.push(format!("{} λ={lam} α={alpha}", c.id()));
                        }
                    }
                }
            }
            (n, bad)
        })
        .collect();
    let n: usize = results.iter().map(|r| r.0).sum();
    let bad: Vec<String> = results.into_iter().flat_map(|r| r.1).collect();
    outcome(bad.is_empty(), format!("{n} characters (strong λ, height ≤ 4, order 30), negative coefficients: {bad:?}"))
}

fn verma() -> Outcome {
    let cs = cases(&["B1", "B2"], 1..=3, false);
    let mut checks = 0;
    let mut bad = Vec::new();
    for c in &cs {
        let r = verma_scan(c, &c.enumerate_lambda(), 3, 30, true).unwrap();
        checks += r.checks;
        bad.extend(r.failures.iter().map(|f| format!("{} {f}", c.id())));
        let r = verma_scan(c, &strong(c), 2, 12, false).unwrap();
        checks += r.checks;
        bad.extend(r.failures.iter().map(|f| format!("{} {f}", c.id())));
    }
    outcome(bad.is_empty(), format!("{checks} identities (every λ, height ≤ 3, order 30; plus y_σ parameters for all σ), failures: {bad:?}"))
}

fn alcove() -> Outcome {
    let mut literal_bad = Vec::new();
    let mut flip_bad = Vec::new();
    let mut rows = 0;
    for c in cases(&["B1", "B2"], 1..=3, false).into_iter().filter(|c| c.variant == Variant::Super) {
        for r in independence_scan(&c, 3) {
            rows += 1;
            if r.error.is_some() || r.simple_form != Some(true) {
                literal_bad.push(format!("{} α={} λ•={}", c.id(), r.alpha, r.lambda_bullet));
            }
            if !r.passed() {
                flip_bad.push(format!("{} α={}", c.id(), r.alpha));
            }
        }
    }
    let mut indep_bad = Vec::new();
    let mut indep_rows = 0;
    let mut wall_only = 0;
    for c in cases(&["A1", "A2", "B1", "B2", "C2", "G2"], 1..=5, false).into_iter().filter(|c| c.p <= 9) {
        for r in independence_scan(&c, 2) {
            indep_rows += 1;
            if r.regular == 0 {
                wall_only += 1;
            }
            if let Some(e) = r.error {
                indep_bad.push(format!("{}: {e}", c.id()));
            }
        }
    }
    let ok = literal_bad.is_empty() && indep_bad.is_empty();
    let mut d = format!(
        "super r ≤ 2, m ≤ 3, height ≤ 3: {rows} (α, λ•) pairs, closed-form mismatches {literal_bad:?}; \
         λ_•-independence at rank ≤ 2, p ≤ 9: {indep_rows} pairs ({wall_only} wall-only), violations {indep_bad:?}"
    );
    if !literal_bad.is_empty() {
        d.push_str(&format!(
            "; with σ_r replaced by the shortest σ sending ϖ_r to −ϖ_r (σ_r itself when r = 1) mismatches are {flip_bad:?}"
        ));
    }
    outcome(ok, d)
}

fn performance(suite_start: Instant) -> Outcome {
    let a = eta_inv_pow(3, 5000);
    let b = eta_pow(2, 5000);
    let t = Instant::now();
    let prod = a.mul(&b).unwrap();
    let mul = t.elapsed();
    let check = eta_inv_pow(1, 5000);
    let ok_value = prod == check;
    let total = suite_start.elapsed();
    let ok = ok_value && mul < Duration::from_secs(1) && total < Duration::from_secs(300);
    outcome(ok, format!("order-5000 product in {:.3} s (value correct: {ok_value}); suite so far {:.1} s", mul.as_secs_f64(), total.as_secs_f64()))
}

fn main() {
    let start = Instant::now();
    let crits: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("shift-system axioms", Box::new(axioms)),
        ("strong condition equals alcove inequality", Box::new(strong_vs_alcove)),
        ("w0 shift equals −ρ∨ (non-super) / −ρ (super)", Box::new(w0_shift)),
        ("triplet vacuum character", Box::new(triplet)),
        ("W-algebra vacuum coincidences", Box::new(vacua)),
        ("wall vanishing and antisymmetry", Box::new(walls)),
        ("positivity", Box::new(positivity)),
        ("Verma identity", Box::new(verma)),
        ("alcove closed forms and independence", Box::new(alcove)),
    ];
    let mut failures = 0;
    let mut report = |i: usize, name: &str, o: Outcome, dt: Duration| {
        if !o.pass {
            failures += 1;
        }
        println!(
            "criterion {i:>2} {} [{:>6.2} s] {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            dt.as_secs_f64(),
            o.detail
        );
    };
    for (i, (name, f)) in crits.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        report(i + 1, name, o, t.elapsed());
    }
    let t = Instant::now();
    let o = performance(start);
    report(10, "performance", o, t.elapsed());
    println!("acceptance: {} of 10 criteria pass, {:.1} s total", 10 - failures, start.elapsed().as_secs_f64());
    if failures > 0 && std::env::var_os("SHIFTLAB_STRICT").is_some() {
        std::process::exit(1);
    }
}
