use serde_json::{json, Value};

use cherednik::casimir::{bridge_identity_check, build_pipeline, casimir_in, centrality_residuals, Construction};
use cherednik::exact::{frac, int, MultiPoly, Scalar, Var};
use cherednik::findim::{classify_with_p, design_deformation};
use cherednik::linalg::constant_ratio;
use cherednik::par::{self, Exec};
use cherednik::pbw::{DeformationGl, GlAlgebra};
use cherednik::poisson::verify_center_gl;
use cherednik::sp::{appendix_identity_check, verify_center_sp, DeformationSp};
use cherednik::verma::{gram_matrix, predicted_shapovalov_det, QPlusElement};

use crate::args::Suite;
use crate::commands::Report;

/// One unit of work: a label and a closure returning (passed, detail).
type Item = (String, Box<dyn Fn() -> (bool, Value) + Send + Sync>);

fn item(label: String, f: impl Fn() -> (bool, Value) + Send + Sync + 'static) -> Item {
    (label, Box::new(f))
}

fn err(e: cherednik::Error) -> (bool, Value) {
    (false, json!({"error": e.to_string()}))
}

/// ζ = ζ_0 + … + ζ_k with symbolic coefficients.
fn symbolic(n: usize, k: usize) -> DeformationGl {
    DeformationGl::symbolic(n, k)
}

/// ν ∈ ℕ^n with 1 ≤ |ν| ≤ total.
fn weights(n: usize, total: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v: Vec<i64>| (0..=total).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out.retain(|v| (1..=total).contains(&v.iter().sum()));
    out
}

fn items(suite: Suite, n: Option<usize>, kmax: Option<usize>) -> Vec<Item> {
    let mut out = Vec::new();
    match suite {
        Suite::PbwConsistency => {
            for n in 1..=n.unwrap_or(2) {
                for k in 0..=kmax.unwrap_or(1) {
                    out.push(item(format!("gl{n} deg {k}"), move || {
                        let alg = GlAlgebra::new(symbolic(n, k));
                        let len = alg.len();
                        let one = |g| alg.normal_order_indices(&[g]);
                        let mut failures = 0;
                        for a in 0..len {
                            for b in 0..len {
                                for c in 0..len {
                                    let left = alg.mul(&alg.mul(&one(a), &one(b)), &one(c));
                                    let right = alg.mul(&one(a), &alg.mul(&one(b), &one(c)));
                                    if left != right || left != alg.normal_order_indices(&[a, b, c]) {
                                        failures += 1;
                                    }
                                }
                            }
                        }
                        (failures == 0, json!({"triples": len * len * len, "failures": failures}))
                    }));
                }
            }
        }
        Suite::Shapovalov => {
            for n in 1..=n.unwrap_or(2) {
                for nu in weights(n, kmax.unwrap_or(2) as i64) {
                    out.push(item(format!("gl{n} nu {nu:?}"), move || {
                        let d = symbolic(n, 1);
                        let q = match QPlusElement::new(nu.clone()) {
                            Ok(q) => q,
                            Err(e) => return err(e),
                        };
                        let det = gram_matrix(&q, &d).det();
                        match predicted_shapovalov_det(&q, &d) {
                            Ok(pred) => match constant_ratio(&det, &pred) {
                                Some(r) if r != int(0) => (true, json!({"ratio": cherednik::json::scalar(&r)})),
                                _ => (false, json!({"ratio": null})),
                            },
                            Err(e) => err(e),
                        }
                    }));
                }
            }
        }
        Suite::Casimir => {
            for n in 1..=n.unwrap_or(3) {
                for k in 0..=kmax.unwrap_or(2) {
                    out.push(item(format!("gl{n} deg {k}"), move || {
                        let d = symbolic(n, k);
                        let alg = GlAlgebra::new(d.clone());
                        let run = || -> cherednik::Result<(bool, Value)> {
                            let p = build_pipeline(&d)?;
                            let a = casimir_in(&alg, &p, Construction::Residue)?;
                            let b = casimir_in(&alg, &p, Construction::TraceSum)?;
                            let bad = centrality_residuals(&alg, &a, Exec::Sequential).iter().filter(|(_, r)| !r.is_zero()).count();
                            Ok((bad == 0 && a == b, json!({"noncentral_generators": bad, "constructions_agree": a == b})))
                        };
                        run().unwrap_or_else(err)
                    }));
                }
            }
        }
        Suite::Bridge => {
            for n in 2..=n.unwrap_or(3).max(2) {
                for k in 0..=kmax.unwrap_or(3) {
                    out.push(item(format!("gl{n} k {k}"), move || {
                        let r = bridge_identity_check(k, n);
                        // The first correction coefficient has a closed form at k = 1.
                        let c1_ok = k != 1 || r.coefficients.get(1) == Some(&frac(-(n as i64 + 1), 2));
                        (r.holds() && c1_ok, json!({"coefficients": cherednik::json::scalars(&r.coefficients)}))
                    }));
                }
            }
        }
        Suite::Findim => {
            for n in 1..=n.unwrap_or(3) {
                for nu in weights(n, kmax.unwrap_or(2) as i64) {
                    out.push(item(format!("gl{n} nu {nu:?}"), move || {
                        // Generic λ: integral gaps larger than ν so only the designed roots matter.
                        let lambda: Vec<Scalar> = (0..n).map(|i| int(((n - i) * 7) as i64)).collect();
                        let nu: Vec<u64> = nu.iter().map(|&x| x as u64).collect();
                        match design_deformation(&lambda, &nu) {
                            Ok(r) => {
                                let back = classify_with_p(&lambda, &r.p());
                                let nondegenerate = r.nondegeneracy.iter().all(|(_, det, closed)| det == closed && *det != int(0));
                                let ok = back.nu.as_deref() == Some(&nu[..]) && nondegenerate;
                                (ok, json!({"round_trip_nu": back.nu, "nondegenerate": nondegenerate}))
                            }
                            Err(e) => err(e),
                        }
                    }));
                }
            }
        }
        Suite::PoissonGl => {
            for n in 1..=n.unwrap_or(3) {
                for k in 0..=kmax.unwrap_or(2) {
                    out.push(item(format!("gl{n} deg {k}"), move || match verify_center_gl(&symbolic(n, k), Exec::Sequential) {
                        Ok(c) => (c.passed(), json!({"checked": c.residuals.len(), "failures": c.failures()})),
                        Err(e) => err(e),
                    }));
                }
            }
        }
        Suite::PoissonSp => {
            for n in 1..=n.unwrap_or(2) {
                for k in 0..=kmax.unwrap_or(1) {
                    out.push(item(format!("sp{} zeta_0..zeta_{}", 2 * n, 2 * k), move || {
                        let zeta: Vec<MultiPoly> = (0..=k).map(|j| MultiPoly::var(Var::zeta(2 * j))).collect();
                        match verify_center_sp(&DeformationSp::new(n, zeta), Exec::Sequential) {
                            Ok(c) => {
                                let failures = c.residuals.iter().filter(|(_, _, r)| !r.is_zero()).count();
                                (c.passed(), json!({"checked": c.residuals.len(), "failures": failures, "tau_constructions_related": c.tau_agree}))
                            }
                            Err(e) => err(e),
                        }
                    }));
                }
            }
        }
        Suite::AppendixSp => {
            let n = n.unwrap_or(2);
            for i in 1..=n {
                out.push(item(format!("sp{} Q_{i}", 2 * n), move || {
                    let c = appendix_identity_check(n, i);
                    let nonzero = c.sums.iter().filter(|(_, a, b)| !a.is_zero() || !b.is_zero()).count();
                    (c.passed(), json!({"vectors": c.sums.len(), "nonzero": nonzero}))
                }));
            }
        }
    }
    out
}

pub fn run(suite: Suite, n: Option<usize>, kmax: Option<usize>) -> Report {
    let work = items(suite, n, kmax);
    let results = par::map(Exec::Parallel, &work, |(label, f)| {
        let (passed, detail) = f();
        json!({"item": label, "passed": passed, "detail": detail})
    });
    let failed = results.iter().filter(|r| r["passed"] == false).count();
    let body = json!({
        "suite": suite,
        "items": results.len(),
        "failed": failed,
        "passed": failed == 0,
        "results": results,
    });
    Report { body, latex: None, ok: failed == 0 }
}
