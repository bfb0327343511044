use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use cherednik::casimir::{build_pipeline, casimir_in, centrality_residuals, p_from_hc, p_from_pipeline, Construction};
use cherednik::exact::{fmt_scalar, int, parse_scalar, MultiPoly, Scalar, Var, VarKind};
use cherednik::findim::{character, classify, classify_with_p, design_deformation, Character};
use cherednik::json;
use cherednik::linalg::constant_ratio;
use cherednik::par::Exec;
use cherednik::pbw::{DeformationGl, GlAlgebra, Generator};
use cherednik::poisson::verify_center_gl;
use cherednik::sp::{verify_center_sp_with, zeta_pair_sp, DeformationSp, PoissonSp, TauConstruction};
use cherednik::verma::{gram_matrix, predicted_shapovalov_det, QPlusElement};
use cherednik::Error;

use crate::args::{Algebra, Command, ConstructionArg, Deform, TauArg};
use crate::suites;

/// A command result: JSON body, optional LaTeX, and whether every checked
/// identity held.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub body: Value,
    pub latex: Option<String>,
    pub ok: bool,
}

pub fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn split(text: &str) -> impl Iterator<Item = &str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty())
}

pub fn parse_rationals(text: &str) -> Result<Vec<Scalar>, Error> {
    let v: Vec<Scalar> = split(text).map(|s| parse_scalar(s).ok_or_else(|| bad(format!("not a rational: {s:?}")))).collect::<Result<_, _>>()?;
    if v.is_empty() {
        return Err(bad("empty list"));
    }
    Ok(v)
}

pub fn parse_naturals(text: &str) -> Result<Vec<u64>, Error> {
    let v: Vec<u64> = split(text).map(|s| s.parse().map_err(|_| bad(format!("not a nonnegative integer: {s:?}")))).collect::<Result<_, _>>()?;
    if v.is_empty() {
        return Err(bad("empty list"));
    }
    Ok(v)
}

/// Entries are rationals, `zeta_j`, or `s` for the symbol at that position.
/// `step` maps list position to ζ index (1 for gl, 2 for sp).
fn parse_zeta(text: &str, step: usize) -> Result<Vec<MultiPoly>, Error> {
    let mut out = Vec::new();
    for (pos, s) in split(text).enumerate() {
        let idx = pos * step;
        if let Some(c) = parse_scalar(s) {
            out.push(MultiPoly::constant(c));
        } else if s == "s" {
            out.push(MultiPoly::var(Var::zeta(idx)));
        } else {
            match Var::parse(s).map(Var::kind) {
                Some(VarKind::Zeta(j)) if step == 2 && j % 2 == 1 => {
                    return Err(bad(format!("{s}: only even ζ indices give an sp deformation")));
                }
                Some(VarKind::Zeta(_)) => out.push(MultiPoly::var(Var::parse(s).unwrap())),
                _ => return Err(bad(format!("ζ entry {s:?} is neither a rational nor a zeta_j symbol"))),
            }
        }
    }
    if out.is_empty() {
        return Err(bad("ζ needs at least one entry"));
    }
    Ok(out)
}

pub fn gl(d: &Deform) -> Result<DeformationGl, Error> {
    if d.n == 0 {
        return Err(bad("rank must be positive"));
    }
    Ok(DeformationGl::new(d.n, parse_zeta(&d.zeta, 1)?))
}

pub fn sp(d: &Deform) -> Result<DeformationSp, Error> {
    if d.n == 0 {
        return Err(bad("rank must be positive"));
    }
    Ok(DeformationSp::new(d.n, parse_zeta(&d.zeta, 2)?))
}

fn numeric(d: &DeformationGl) -> bool {
    d.zeta.iter().all(|z| z.as_constant().is_some())
}

fn lambda_values(text: &str, n: usize) -> Result<Option<Vec<Scalar>>, Error> {
    if text.trim() == "symbolic" {
        return Ok(None);
    }
    let v = parse_rationals(text)?;
    if v.len() != n {
        return Err(bad(format!("λ has {} entries, rank is {n}", v.len())));
    }
    Ok(Some(v))
}

fn residual_list(items: impl IntoIterator<Item = (String, MultiPoly)>) -> Vec<Value> {
    items.into_iter().filter(|(_, r)| !r.is_zero()).map(|(g, r)| json!({"generator": g, "residual": json::poly(&r)})).collect()
}

fn character_latex(ch: &Character) -> String {
    ch.components
        .iter()
        .map(|b| format!("V_{{({})}}", b.highest_weight.iter().map(fmt_scalar).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" \\oplus ")
}

pub fn run(cmd: &Command) -> Result<Report, Error> {
    match cmd {
        Command::Pair { deform, algebra, i, j } => {
            let (i, j) = (*i, *j);
            match algebra {
                Algebra::Gl => {
                    let d = gl(deform)?;
                    if !(1..=d.n).contains(&i) || !(1..=d.n).contains(&j) {
                        return Err(bad("indices out of range"));
                    }
                    let alg = GlAlgebra::new(d);
                    let e = alg.zeta_pair(i, j).clone();
                    let latex = e.to_latex(alg.layout());
                    Ok(Report { body: json!({"i": i, "j": j, "pair": json::pbw(&e, alg.layout())}), latex: Some(latex), ok: true })
                }
                Algebra::Sp => {
                    let d = sp(deform)?;
                    if !(1..=2 * d.n).contains(&i) || !(1..=2 * d.n).contains(&j) {
                        return Err(bad("indices out of range"));
                    }
                    let p = zeta_pair_sp(i, j, &d);
                    let labels = PoissonSp::new(&DeformationSp::zero(d.n)).data.labels;
                    Ok(Report { body: json!({"i": i, "j": j, "pair": json::poly(&p), "basis": labels}), latex: Some(p.to_latex()), ok: true })
                }
            }
        }
        Command::NormalOrder { deform, word } => {
            let d = gl(deform)?;
            let n = d.n;
            let gens: Vec<Generator> = split(word)
                .map(|s| {
                    Generator::parse(s)
                        .filter(|g| match *g {
                            Generator::X(i) | Generator::Y(i) => (1..=n).contains(&i),
                            Generator::E(i, j) => (1..=n).contains(&i) && (1..=n).contains(&j),
                        })
                        .ok_or_else(|| bad(format!("unknown generator {s:?} for rank {n}")))
                })
                .collect::<Result<_, _>>()?;
            let alg = GlAlgebra::new(d);
            let e = alg.normal_order(&gens);
            Ok(Report { body: json!({"word": word, "element": json::pbw(&e, alg.layout())}), latex: Some(e.to_latex(alg.layout())), ok: true })
        }
        Command::Shapovalov { deform, nu, lambda } => {
            let d = gl(deform)?;
            let nu_v: Vec<i64> = parse_naturals(nu)?.into_iter().map(|x| x as i64).collect();
            if nu_v.len() != d.n {
                return Err(bad(format!("ν has {} entries, rank is {}", nu_v.len(), d.n)));
            }
            let q = QPlusElement::new(nu_v.clone())?;
            let lam = lambda_values(lambda, d.n)?;
            let g = gram_matrix(&q, &d);
            let mut det = g.det();
            let mut pred = predicted_shapovalov_det(&q, &d)?;
            if let Some(l) = &lam {
                let map: HashMap<Var, MultiPoly> = l.iter().enumerate().map(|(i, x)| (Var::lambda(i + 1), MultiPoly::constant(x.clone()))).collect();
                det = det.substitute(&map);
                pred = pred.substitute(&map);
            }
            let (ratio, ok) = match (&lam, constant_ratio(&det, &pred)) {
                (_, Some(r)) if r != int(0) => (json::scalar(&r), true),
                (Some(_), _) => (Value::Null, det.is_zero() == pred.is_zero()),
                (None, _) => (Value::Null, false),
            };
            let body = json!({
                "n": d.n,
                "nu": nu_v,
                "lambda": lam.as_ref().map_or(json!("symbolic"), |l| json::scalars(l)),
                "tau": g.tau(),
                "det_computed": json::poly(&det),
                "det_predicted": json::poly(&pred),
                "ratio": ratio,
            });
            Ok(Report { body, latex: Some(det.to_latex()), ok })
        }
        Command::Casimir { deform, construction } => {
            let d = gl(deform)?;
            let alg = GlAlgebra::new(d.clone());
            let p = build_pipeline(&d)?;
            let residue = matches!(construction, ConstructionArg::Residue | ConstructionArg::Both).then(|| casimir_in(&alg, &p, Construction::Residue)).transpose()?;
            let trace = matches!(construction, ConstructionArg::Trace | ConstructionArg::Both).then(|| casimir_in(&alg, &p, Construction::TraceSum)).transpose()?;
            let agree = match (&residue, &trace) {
                (Some(a), Some(b)) => Some(a == b),
                _ => None,
            };
            let c = residue.as_ref().or(trace.as_ref()).unwrap();
            let residuals: Vec<Value> = centrality_residuals(&alg, c, Exec::Parallel)
                .into_iter()
                .filter(|(_, r)| !r.is_zero())
                .map(|(g, r)| json!({"generator": g.to_string(), "residual": json::pbw(&r, alg.layout())}))
                .collect();
            let central = residuals.is_empty();
            let body = json!({
                "n": d.n,
                "element": json::pbw(c, alg.layout()),
                "central": central,
                "constructions_agree": agree,
                "residuals": residuals,
            });
            Ok(Report { body, latex: Some(c.to_latex(alg.layout())), ok: central && agree != Some(false) })
        }
        Command::PPoly { deform } => {
            let d = gl(deform)?;
            let pipe = build_pipeline(&d)?;
            let p = p_from_pipeline(&pipe);
            let hc = p_from_hc(&d)?;
            let body = json!({
                "n": d.n,
                "p": json::poly(&p),
                "f": json::poly(&pipe.f),
                "g": json::poly(&pipe.g),
                "w": json::poly(&pipe.w),
                "matches_hc": p == hc,
            });
            Ok(Report { body, latex: Some(p.to_latex()), ok: p == hc })
        }
        Command::Classify { deform, lambda } => {
            let d = gl(deform)?;
            if !numeric(&d) {
                return Err(bad("classification needs numeric ζ"));
            }
            let lam = lambda_values(lambda, d.n)?.ok_or_else(|| bad("classification needs a numeric λ"))?;
            let rep = classify(&lam, &d)?;
            let latex = rep.character.as_ref().map(character_latex);
            Ok(Report { body: serde_json::to_value(&rep).unwrap(), latex, ok: true })
        }
        Command::Character { lambda, nu } => {
            let lam = parse_rationals(lambda)?;
            let nu = parse_naturals(nu)?;
            let ch = character(&lam, &nu)?;
            Ok(Report { body: serde_json::to_value(&ch).unwrap(), latex: Some(character_latex(&ch)), ok: true })
        }
        Command::Design { lambda, nu } => {
            let lam = parse_rationals(lambda)?;
            let nu = parse_naturals(nu)?;
            let r = design_deformation(&lam, &nu)?;
            let back = classify_with_p(&lam, &r.p());
            let ok = back.nu.as_deref() == Some(&nu[..]);
            let body = json!({
                "lambda": json::scalars(&lam),
                "nu": nu,
                "w": json::scalars(&r.w),
                "zeta": r.zeta.as_ref().map(|z| json::scalars(z)),
                "p": json::poly(&r.p()),
                "nondegeneracy": r.nondegeneracy.iter().map(|((l, m), det, closed)| json!({"direction": l, "shift": m + 1, "det": json::scalar(det), "closed_form": json::scalar(closed)})).collect::<Vec<_>>(),
                "round_trip_nu": back.nu,
            });
            Ok(Report { body, latex: Some(r.p().to_latex()), ok })
        }
        Command::PoissonCenter { deform, algebra, tau } => match algebra {
            Algebra::Gl if *tau != TauArg::Bracket => Err(bad("--tau applies to sp only")),
            Algebra::Gl => {
                let d = gl(deform)?;
                let cert = verify_center_gl(&d, Exec::Parallel)?;
                let residuals = residual_list(cert.residuals.iter().map(|(k, g, r)| (format!("tau_{k}+c_{k} vs {g}"), r.clone())));
                let body = json!({"algebra": "gl", "n": d.n, "passed": cert.passed(), "checked": cert.residuals.len(), "residuals": residuals});
                Ok(Report { body, latex: None, ok: cert.passed() })
            }
            Algebra::Sp => {
                let d = sp(deform)?;
                let construction = match tau {
                    TauArg::Bracket => TauConstruction::Bracket,
                    TauArg::Closed => TauConstruction::ClosedForm,
                };
                let cert = verify_center_sp_with(&d, construction, Exec::Parallel)?;
                let residuals = residual_list(cert.residuals.iter().map(|(k, g, r)| (format!("tau_{k}+c_{k} vs {g}"), r.clone())));
                let body = json!({
                    "algebra": "sp",
                    "n": d.n,
                    "tau": tau,
                    "passed": cert.passed(),
                    "checked": cert.residuals.len(),
                    "tau_constructions_related": cert.tau_agree,
                    "residuals": residuals,
                });
                Ok(Report { body, latex: None, ok: cert.passed() })
            }
        },
        Command::Verify { suite, n, kmax } => Ok(suites::run(*suite, *n, *kmax)),
    }
}
