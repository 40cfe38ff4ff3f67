use anyhow::{bail, Context};
use serde_json::{json, Value};
use shiftlab_core::alcove::{independence_scan, verma_scan, Family};
use shiftlab_core::characters::{
    ft_char, multiplet_series, wall_scan, walg_vacuum_oracle, walg_vacuum_superchar_oracle, CharKind,
};
use shiftlab_core::rational::{fmt_q, parse_q};
use shiftlab_core::{LambdaParam, QSeries, Q, ShiftCase, WeightVec, WeylGroup};

use crate::config::{build_case, root_system, CaseArgs, Caps, KindArg, Suite, Target};
use crate::output::Report;

fn q(x: &Q) -> String {
    fmt_q(x)
}

fn gram_json(g: &[Vec<Q>]) -> Value {
    g.iter().map(|r| r.iter().map(q).collect::<Vec<_>>()).collect()
}

pub fn info(algebra: &str, caps: &Caps) -> anyhow::Result<Report> {
    let rs = root_system(algebra)?;
    let t = rs.lie_type;
    let weyl = WeylGroup::enumerate(&rs, caps.weyl).ok();
    let j = json!({
        "type": t.to_string(),
        "rank": rs.rank(),
        "lacing": rs.lacing,
        "coxeter": rs.coxeter,
        "dual_coxeter": rs.dual_coxeter,
        "dual_coxeter_langlands": rs.dual_coxeter_l,
        "exponents": rs.exponents,
        "weyl_order": t.weyl_order().to_string(),
        "weyl_enumerated": weyl.is_some(),
        "gram": gram_json(&rs.gram),
        "cartan": rs.cartan,
        "rho": rs.rho,
        "rho_check": rs.rho_check,
        "theta": rs.theta,
        "theta_s": rs.theta_s,
        "theta_l": rs.theta_l,
        "positive_roots": rs.positive_roots.len(),
        "minuscule": rs.minuscule,
        "longest_word": weyl.as_ref().map(|w| w.longest().word_1based()),
    });
    let rows = vec![
        vec!["type".into(), t.to_string()],
        vec!["rank".into(), rs.rank().to_string()],
        vec!["lacing".into(), rs.lacing.to_string()],
        vec!["coxeter".into(), rs.coxeter.to_string()],
        vec!["dual_coxeter".into(), rs.dual_coxeter.to_string()],
        vec!["weyl_order".into(), t.weyl_order().to_string()],
        vec!["rho".into(), rs.rho.to_string()],
        vec!["rho_check".into(), rs.rho_check.to_string()],
        vec!["theta".into(), rs.theta.to_string()],
        vec!["theta_s".into(), rs.theta_s.to_string()],
        vec!["theta_l".into(), rs.theta_l.to_string()],
    ];
    Ok(Report::new(j).table(&["key", "value"], rows))
}

fn case_json(c: &ShiftCase) -> Value {
    json!({
        "algebra": c.rs.lie_type.to_string(),
        "variant": c.variant,
        "m": c.m,
        "p": c.p,
        "central_charge": q(&c.central_charge),
    })
}

fn lambda_arg(c: &ShiftCase, s: &Option<String>) -> anyhow::Result<LambdaParam> {
    Ok(match s {
        Some(s) => c.parse_lambda(s)?,
        None => c.lambda_zero(),
    })
}

fn alpha_arg(c: &ShiftCase, s: &str) -> anyhow::Result<WeightVec> {
    let r = c.rank();
    let labels: Vec<Q> = if s.trim() == "0" {
        vec![Q::from_integer(0.into()); r]
    } else {
        s.split(',').map(|x| parse_q(x.trim())).collect::<Result<_, _>>()?
    };
    if labels.len() != r {
        bail!("--alpha needs {r} Dynkin labels, got {}", labels.len());
    }
    let a = c.rs.from_dynkin(&labels)?;
    if !c.rs.is_dominant(&a) || !a.in_root_lattice() {
        bail!("--alpha must be dominant and lie in the root lattice, got {a}");
    }
    Ok(a)
}

fn kind_arg(c: &ShiftCase, k: Option<KindArg>) -> CharKind {
    k.map(CharKind::from).unwrap_or_else(|| CharKind::default_for(c.variant))
}

pub fn lambda(a: &CaseArgs, all_words: bool, caps: &Caps) -> anyhow::Result<Report> {
    let c = build_case(a, caps)?;
    let rows = c.condition_table(all_words)?;
    let strong = rows.iter().filter(|r| r.strong).count();
    let table = rows
        .iter()
        .map(|r| vec![r.lambda.clone(), r.weak.to_string(), r.strong.to_string(), r.alcove.to_string(), r.w0_shift.to_string()])
        .collect();
    let j = json!({"case": case_json(&c), "count": rows.len(), "strong": strong, "all_words": all_words, "rows": rows});
    Ok(Report::new(j).table(&["lambda", "weak", "strong", "alcove", "w0_shift"], table))
}

pub fn check(suite: Suite, a: &CaseArgs, height: i64, caps: &Caps) -> anyhow::Result<Report> {
    let c = build_case(a, caps)?;
    match suite {
        Suite::Axioms => {
            let rep = c.verify_axioms();
            let rows = rep.checks.iter().map(|(k, n)| {
                let bad = rep.failures.iter().filter(|f| &f.axiom == k).count();
                vec![k.clone(), n.to_string(), bad.to_string()]
            });
            let rows = rows.collect();
            let failed = !rep.passed();
            Ok(Report::new(json!({"case": case_json(&c), "passed": !failed, "report": rep}))
                .table(&["axiom", "checks", "failures"], rows)
                .failed(failed))
        }
        Suite::WeakStrong => {
            let mut out = Vec::new();
            let mut bad = Vec::new();
            for lam in c.enumerate_lambda() {
                let v = c.check_strong_all_words(&lam)?;
                let alcove = c.alcove_inequality(&lam);
                let weak = c.check_weak(&lam);
                if v.all != v.any || v.all != alcove || (v.all && !weak) {
                    bad.push(lam.label());
                }
                out.push((lam.label(), weak, v, alcove));
            }
            let rows = out
                .iter()
                .map(|(l, w, v, a)| vec![l.clone(), w.to_string(), v.all.to_string(), v.any.to_string(), a.to_string()])
                .collect();
            let js: Vec<Value> = out
                .iter()
                .map(|(l, w, v, a)| json!({"lambda": l, "weak": w, "strong_all_words": v.all, "strong_some_word": v.any, "words": v.words, "alcove": a}))
                .collect();
            let failed = !bad.is_empty();
            Ok(Report::new(json!({"case": case_json(&c), "passed": !failed, "rows": js, "discrepancies": bad}))
                .table(&["lambda", "weak", "strong_all_words", "strong_some_word", "alcove"], rows)
                .failed(failed))
        }
        Suite::ShiftFacts => {
            let minus_rho = -&c.rs.rho;
            let minus_rho_check = -&c.rs.rho_check;
            let mut rows = Vec::new();
            let mut js = Vec::new();
            let mut failed = false;
            for lam in c.enumerate_lambda().into_iter().filter(|l| c.alcove_inequality(l)) {
                let s = c.w0_shift(&lam);
                let a = s == minus_rho;
                let b = s == minus_rho_check;
                failed |= s != c.expected_w0_shift();
                rows.push(vec![lam.label(), s.to_string(), a.to_string(), b.to_string()]);
                js.push(json!({"lambda": lam.label(), "w0_shift": s, "equals_minus_rho": a, "equals_minus_rho_check": b}));
            }
            let j = json!({"case": case_json(&c), "passed": !failed, "expected": c.expected_w0_shift(), "strong": js});
            Ok(Report::new(j)
                .table(&["lambda", "w0_shift", "equals_minus_rho", "equals_minus_rho_check"], rows)
                .failed(failed))
        }
        Suite::AlcoveIndependence => {
            let scan = independence_scan(&c, height);
            let failed = scan.iter().any(|r| !r.passed());
            let opt = |b: Option<bool>| b.map(|b| b.to_string()).unwrap_or_default();
            let rows = scan
                .iter()
                .map(|r| {
                    vec![
                        r.alpha.to_string(),
                        r.lambda_bullet.to_string(),
                        r.y.as_ref().map(|y| format!("{:?} t{}", y.finite_part.word_1based(), y.translation)).unwrap_or_default(),
                        r.regular.to_string(),
                        r.walls.to_string(),
                        opt(r.closed_form),
                        r.error.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            Ok(Report::new(json!({"case": case_json(&c), "family": Family::of(&c), "height": height, "passed": !failed, "rows": scan}))
                .table(&["alpha", "lambda_bullet", "y", "regular", "walls", "closed_form", "error"], rows)
                .failed(failed))
        }
    }
}

fn series_report(head: Value, s: &QSeries) -> Report {
    let rows = s.terms().iter().map(|(e, c)| vec![q(e), c.to_string()]).collect();
    let mut j = head;
    j["series"] = serde_json::to_value(s).expect("series serialize");
    Report::new(j).table(&["exponent", "coefficient"], rows).plain(s.to_string())
}

pub fn char_cmd(a: &CaseArgs, alpha: &str, lambda: &Option<String>, kind: Option<KindArg>, order: usize, caps: &Caps) -> anyhow::Result<Report> {
    let c = build_case(a, caps)?;
    let al = alpha_arg(&c, alpha)?;
    let lam = lambda_arg(&c, lambda)?;
    let k = kind_arg(&c, kind);
    let s = multiplet_series(&al, &lam, &c, k, order)?;
    let head = json!({"case": case_json(&c), "alpha": al, "lambda": lam.label(), "kind": k, "order": order});
    Ok(series_report(head, &s))
}

pub fn ftchar(a: &CaseArgs, lambda: &Option<String>, kind: Option<KindArg>, order: usize, caps: &Caps) -> anyhow::Result<Report> {
    let c = build_case(a, caps)?;
    let lam = lambda_arg(&c, lambda)?;
    let k = kind_arg(&c, kind);
    let s = ft_char(&lam, &c, k, order)?;
    let head = json!({"case": case_json(&c), "lambda": lam.label(), "kind": k, "order": order});
    Ok(series_report(head, &s))
}

pub fn verify(
    target: Target,
    a: &CaseArgs,
    lambda: &Option<String>,
    kind: Option<KindArg>,
    order: usize,
    height: i64,
    caps: &Caps,
) -> anyhow::Result<Report> {
    let c = build_case(a, caps)?;
    match target {
        Target::Wchar => {
            let k = kind_arg(&c, kind);
            let lam = c.lambda_zero();
            let zero = WeightVec::zero(c.rank());
            let formula = multiplet_series(&zero, &lam, &c, k, order)?;
            let oracle = match k {
                CharKind::Ch => walg_vacuum_oracle(&c, order)?,
                CharKind::Sch => walg_vacuum_superchar_oracle(&c, order)?,
                CharKind::Ramond => bail!("no independent oracle for the Ramond sector"),
            };
            let ok = formula == oracle;
            let j = json!({"case": case_json(&c), "kind": k, "order": order, "equal": ok, "formula": formula, "oracle": oracle});
            let rows = vec![vec!["formula".into(), formula.to_string()], vec!["oracle".into(), oracle.to_string()], vec!["equal".into(), ok.to_string()]];
            Ok(Report::new(j).table(&["source", "series"], rows).failed(!ok))
        }
        Target::Verma => {
            let lams: Vec<LambdaParam> = match lambda {
                Some(s) => vec![c.parse_lambda(s)?],
                None => c.enumerate_lambda().into_iter().filter(|l| c.alcove_inequality(l)).collect(),
            };
            if lams.is_empty() {
                bail!("{} has no λ satisfying the alcove inequality", c.id());
            }
            let direct = verma_scan(&c, &lams, height, order, true)?;
            let alcove = verma_scan(&c, &lams, height, order, false)?;
            let failed = !(direct.passed() && alcove.passed());
            let rows = vec![
                vec!["direct".into(), direct.checks.to_string(), direct.failures.len().to_string()],
                vec!["alcove".into(), alcove.checks.to_string(), alcove.failures.len().to_string()],
            ];
            let labels: Vec<String> = lams.iter().map(|l| l.label()).collect();
            let j = json!({"case": case_json(&c), "lambdas": labels, "height": height, "order": order, "passed": !failed, "direct": direct, "alcove": alcove});
            Ok(Report::new(j).table(&["check", "count", "failures"], rows).failed(failed))
        }
        Target::Walls => {
            let lam = lambda_arg(&c, lambda)?;
            let rep = wall_scan(&c, &lam, height, order).context("wall sweep")?;
            let failed = !rep.passed();
            let rows = vec![vec![
                rep.points.to_string(),
                rep.walls.to_string(),
                rep.antisymmetry_checks.to_string(),
                rep.failures.len().to_string(),
            ]];
            let j = json!({"case": case_json(&c), "lambda": lam.label(), "radius": height, "order": order, "passed": !failed, "report": rep});
            Ok(Report::new(j).table(&["points", "walls", "antisymmetry_checks", "failures"], rows).failed(failed))
        }
    }
}
