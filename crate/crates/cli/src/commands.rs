use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};
use superlie_core::algebra::AlgebraDoc;
use superlie_core::expr::{parse_batch, parse_expr, Bindings, Evaluator, Expr};
use superlie_core::invariants::{verify_anti_invariant, verify_central, verify_even_central, BuildOptions};
use superlie_core::repr::{FactorSpec, ModuleSpec};
use superlie_core::{
    build_gl, build_rank1, laurent::lagrange_basis, load_algebra, rational, root_decomposition, validate_algebra, Pbw,
    Rank1Kind, Rational, SuperAlgebra, Weight,
};

use crate::report::{self, object};
use crate::{AlgebraAction, AlgebraArgs, Cli, Command, Mode, ModuleAction, ModuleArgs, OpArgs};

/// Outcome of a command body: results and whether every check passed.
struct Outcome {
    results: Value,
    pass: bool,
}

fn pass(results: Value) -> Outcome {
    Outcome { results, pass: true }
}

/// Runs a command; returns the report and the exit code (0 pass, 1 fail, 2 error).
pub fn run(cli: &Cli, echo: Vec<String>) -> (Value, u8) {
    let echo = strip_json_flag(echo);
    let mut algebra_info = Value::Null;
    if let Command::Algebra {
        action: AlgebraAction::Export,
        ..
    } = cli.command
    {
        if let Ok(alg) = load(&cli.command) {
            let doc = serde_json::to_value(AlgebraDoc::from_algebra(&alg)).expect("serializable");
            return (doc, 0);
        }
    }
    let outcome = load(&cli.command).and_then(|alg| {
        algebra_info = json!({ "name": alg.name(), "fingerprint": alg.fingerprint() });
        dispatch(&cli.command, &alg)
    });
    match outcome {
        Ok(o) => {
            let status = if o.pass { "pass" } else { "fail" };
            let report = object(vec![
                ("command", json!(echo)),
                ("algebra", algebra_info),
                ("status", json!(status)),
                ("results", o.results),
            ]);
            (report, if o.pass { 0 } else { 1 })
        }
        Err(e) => {
            let message = format!("{e:#}");
            eprintln!("error: {message}");
            let report = object(vec![
                ("command", json!(echo)),
                ("algebra", algebra_info),
                ("status", json!("error")),
                ("error", json!(message)),
            ]);
            (report, 2)
        }
    }
}

fn strip_json_flag(args: Vec<String>) -> Vec<String> {
    let mut out = Vec::with_capacity(args.len());
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        if a == "--json" {
            it.next();
        } else if !a.starts_with("--json=") {
            out.push(a);
        }
    }
    out
}

fn algebra_args(cmd: &Command) -> &AlgebraArgs {
    match cmd {
        Command::Algebra { algebra, .. }
        | Command::Eval { algebra, .. }
        | Command::Verify { algebra, .. }
        | Command::Module { algebra, .. } => algebra,
    }
}

fn load(cmd: &Command) -> Result<SuperAlgebra> {
    let args = algebra_args(cmd);
    match (&args.builtin, &args.algebra) {
        (Some(b), None) => builtin(b),
        (None, Some(path)) => {
            let text = read(path)?;
            let loaded = if let Command::Algebra {
                action: AlgebraAction::Validate,
                ..
            } = cmd
            {
                // validate reports axiom violations instead of refusing the file
                serde_json::from_str::<AlgebraDoc>(&text)
                    .map_err(|e| anyhow!("schema: {e}"))
                    .and_then(|doc| Ok(doc.to_algebra_unchecked()?))
            } else {
                load_algebra(&text).map_err(Into::into)
            };
            loaded.with_context(|| format!("loading {}", path.display()))
        }
        _ => bail!("specify exactly one of --builtin or --algebra"),
    }
}

fn builtin(spec: &str) -> Result<SuperAlgebra> {
    if let Some(shape) = spec.strip_prefix("gl:") {
        let (m, n) = shape
            .split_once(',')
            .ok_or_else(|| anyhow!("expected gl:M,N, got {spec:?}"))?;
        let m: usize = m.trim().parse().with_context(|| format!("bad M in {spec:?}"))?;
        let n: usize = n.trim().parse().with_context(|| format!("bad N in {spec:?}"))?;
        return Ok(build_gl(m, n)?);
    }
    let kind: Rank1Kind = spec
        .parse()
        .map_err(|_| anyhow!("unknown built-in {spec:?}; expected sl2, gl11, osp12 or gl:M,N"))?;
    Ok(build_rank1(kind))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn dispatch(cmd: &Command, alg: &SuperAlgebra) -> Result<Outcome> {
    match cmd {
        Command::Algebra { action, .. } => algebra(*action, alg),
        Command::Eval { op, .. } => eval(alg, op),
        Command::Verify { op, mode, .. } => verify(alg, op, *mode),
        Command::Module {
            action,
            module,
            op,
            weight,
            k,
            tuple,
            ..
        } => module_cmd(
            alg,
            *action,
            module,
            op.as_deref(),
            weight.as_deref(),
            *k,
            tuple.as_deref(),
        ),
    }
}

fn algebra(action: AlgebraAction, alg: &SuperAlgebra) -> Result<Outcome> {
    let axioms = validate_algebra(alg);
    let violations = json!(axioms.describe(alg));
    if action == AlgebraAction::Validate {
        return Ok(Outcome {
            results: json!({ "valid": axioms.is_valid(), "violations": violations }),
            pass: axioms.is_valid(),
        });
    }
    let roots = root_decomposition(alg)?;
    let basis: Vec<Value> = (0..alg.dim())
        .map(|i| json!({ "label": alg.label(i), "parity": alg.parity(i).as_str() }))
        .collect();
    let positive: Vec<Value> = roots
        .positive
        .iter()
        .map(|s| {
            json!({
                "root": report::weight(&s.root),
                "parity": s.parity.as_str(),
                "basis": s.basis.iter().map(|&i| alg.label(i)).collect::<Vec<_>>(),
                "norm": report::q(&roots.weight_form(&s.root, &s.root)),
            })
        })
        .collect();
    let rho_checks: Vec<Value> = roots
        .check_rho()
        .iter()
        .map(|c| {
            json!({
                "simple_root": report::weight(&c.root),
                "twice_rho_pairing": report::q(&c.twice_rho_pairing),
                "norm": report::q(&c.norm),
                "holds": c.holds(),
            })
        })
        .collect();
    let form: Vec<Value> = alg
        .form_matrix()
        .triplets()
        .iter()
        .map(|(i, j, c)| json!([alg.label(*i), alg.label(*j), report::q(c)]))
        .collect();
    let results = json!({
        "dim": alg.dim(),
        "basis": basis,
        "cartan": alg.cartan().iter().map(|&i| alg.label(i)).collect::<Vec<_>>(),
        "form": form,
        "positive_roots": positive,
        "simple_roots": roots.simple.iter().map(report::weight).collect::<Vec<_>>(),
        "h_rho": report::element(alg, &roots.h_rho),
        "rho_checks": rho_checks,
        "valid": axioms.is_valid(),
        "violations": violations,
    });
    Ok(Outcome {
        results,
        pass: axioms.is_valid(),
    })
}

fn parse_points(points: &[String]) -> Result<Vec<Rational>> {
    points
        .iter()
        .map(|p| rational::parse(p.trim()).with_context(|| format!("bad point {p:?}")))
        .collect()
}

fn bindings(points: &[String]) -> Result<Bindings> {
    let mut b = Bindings::new();
    if points.is_empty() {
        return Ok(b);
    }
    let basis = lagrange_basis(&parse_points(points)?)?;
    for (i, p) in basis.into_iter().enumerate() {
        b.insert(format!("p{}", i + 1), p);
    }
    Ok(b)
}

fn expressions(op: &OpArgs) -> Result<Vec<(Option<usize>, Expr)>> {
    match (&op.op, &op.batch) {
        (Some(text), None) => Ok(vec![(None, parse_expr(text)?)]),
        (None, Some(path)) => {
            let text = read(path)?;
            let list = parse_batch(&text).with_context(|| format!("in {}", path.display()))?;
            Ok(list.into_iter().map(|(l, e)| (Some(l), e)).collect())
        }
        _ => bail!("specify exactly one of --op or --batch"),
    }
}

fn eval(alg: &SuperAlgebra, op: &OpArgs) -> Result<Outcome> {
    let pbw = Pbw::new(alg);
    let b = bindings(&op.points)?;
    let ev = Evaluator::new(&pbw, &b).with_options(BuildOptions {
        allow_small_anti: op.allow_small,
    });
    let mut items = Vec::new();
    for (line, e) in expressions(op)? {
        let u = ev.eval(&e)?;
        items.push(json!({
            "line": line,
            "op": e.to_string(),
            "parity": format!("{:?}", u.parity(alg)).to_lowercase(),
            "degree": u.degree(),
            "element": report::uea(alg, &u),
        }));
    }
    Ok(pass(json!({ "items": items })))
}

fn verify(alg: &SuperAlgebra, op: &OpArgs, mode: Mode) -> Result<Outcome> {
    let pbw = Pbw::new(alg);
    let b = bindings(&op.points)?;
    let ev = Evaluator::new(&pbw, &b).with_options(BuildOptions {
        allow_small_anti: op.allow_small,
    });
    let mut items = Vec::new();
    let mut all = true;
    for (line, e) in expressions(op)? {
        let u = ev.eval(&e)?;
        let rep = match mode {
            Mode::Central => verify_central(&pbw, &u, None),
            Mode::EvenCentral => verify_even_central(&pbw, &u),
            Mode::Anti => verify_anti_invariant(&pbw, &u)?,
        };
        all &= rep.pass();
        items.push(json!({
            "line": line,
            "op": e.to_string(),
            "element": report::uea(alg, &u),
            "report": report::verification(alg, &rep),
        }));
    }
    let mode = match mode {
        Mode::Central => "central",
        Mode::EvenCentral => "even-central",
        Mode::Anti => "anti",
    };
    Ok(Outcome {
        results: json!({ "mode": mode, "items": items }),
        pass: all,
    })
}

fn module_spec(args: &ModuleArgs) -> Result<ModuleSpec> {
    if let Some(path) = &args.module {
        return Ok(ModuleSpec::from_json(&read(path)?)?);
    }
    if args.factors.is_empty() {
        bail!("specify --factors and --points, or --module");
    }
    Ok(ModuleSpec {
        factors: args
            .factors
            .iter()
            .map(|f| FactorSpec::Named(f.trim().to_string()))
            .collect(),
        points: args.points.clone(),
    })
}

fn parse_weight(text: &str) -> Result<Weight> {
    Ok(Weight(
        text.split(',')
            .map(|v| rational::parse(v.trim()).with_context(|| format!("bad weight entry {v:?}")))
            .collect::<Result<_>>()?,
    ))
}

fn parse_tuple(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|v| v.trim().parse().with_context(|| format!("bad tuple entry {v:?}")))
        .collect()
}

fn basis_vectors(m: &superlie_core::Matrix) -> Vec<Value> {
    (0..m.rows()).map(|r| report::vector(m.row(r))).collect()
}

fn module_cmd(
    alg: &SuperAlgebra,
    action: ModuleAction,
    args: &ModuleArgs,
    op: Option<&str>,
    weight: Option<&str>,
    k: Option<usize>,
    tuple: Option<&str>,
) -> Result<Outcome> {
    let spec = module_spec(args)?;
    let module = spec.build(alg)?;
    let pbw = Pbw::new(alg);
    let dims: Vec<usize> = module.factors().iter().map(|f| f.dim()).collect();
    let labels = report::tensor_labels(&dims);
    let header = json!({
        "dimension": module.dim(),
        "points": module.points().iter().map(report::q).collect::<Vec<_>>(),
        "lagrange": module.lagrange().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "basis": labels,
    });
    let require_k = || k.ok_or_else(|| anyhow!("--k is required"));
    let (body, ok) = match action {
        ModuleAction::Act => {
            let text = op.ok_or_else(|| anyhow!("--op is required"))?;
            let b = bindings(&spec.points)?;
            let u = Evaluator::new(&pbw, &b).eval(&parse_expr(text)?)?;
            (
                json!({ "op": text, "element": report::uea(alg, &u), "matrix": report::matrix(&module.act_uea(&u)) }),
                true,
            )
        }
        ModuleAction::Weights => {
            let spaces: Vec<Value> = module
                .weight_spaces()?
                .iter()
                .map(|(w, idx)| {
                    json!({
                        "weight": report::weight(w),
                        "vectors": idx.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            (json!({ "weight_spaces": spaces }), true)
        }
        ModuleAction::Hwv => {
            let spaces: Vec<Value> = match weight {
                Some(w) => {
                    let w = parse_weight(w)?;
                    let basis = module.find_hwv(&w)?;
                    vec![json!({ "weight": report::weight(&w), "basis": basis_vectors(&basis) })]
                }
                None => module
                    .hwv_spaces()?
                    .iter()
                    .map(|s| json!({ "weight": report::weight(&s.weight), "basis": basis_vectors(&s.basis) }))
                    .collect(),
            };
            (json!({ "hwv": spaces }), true)
        }
        ModuleAction::Stability => {
            let k = require_k()?;
            let tuples = match tuple {
                Some(t) => {
                    let t = parse_tuple(t)?;
                    if t.len() != k {
                        bail!("--tuple has {} entries but --k is {k}", t.len());
                    }
                    vec![t]
                }
                None => module.tuples(k),
            };
            let mut ok = true;
            let mut checks = Vec::new();
            for t in tuples {
                let rep = module.check_hwv_stability(&pbw, &t)?;
                ok &= rep.pass();
                let per_weight: Vec<Value> = rep
                    .per_weight
                    .iter()
                    .map(|(w, d, esc)| {
                        json!({
                            "weight": report::weight(w),
                            "hwv_dimension": d,
                            "escaping": esc.iter().map(|v| report::vector(v)).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                checks.push(json!({ "tuple": t, "pass": rep.pass(), "weights": per_weight }));
            }
            (json!({ "k": k, "checks": checks }), ok)
        }
        ModuleAction::GelfandSum => {
            let k = require_k()?;
            let rep = module.check_gelfand_sum(&pbw, k)?;
            (
                json!({
                    "k": k,
                    "tuples": rep.tuples,
                    "pass": rep.pass(),
                    "total": report::matrix(&rep.total),
                    "difference": report::matrix(&rep.difference()),
                }),
                rep.pass(),
            )
        }
        ModuleAction::EvenHwv => {
            let kmax = k.unwrap_or(3);
            let spaces: Vec<Value> = module
                .find_even_hwv(&pbw, kmax)?
                .iter()
                .map(|s| {
                    let s_k: Vec<Value> = s
                        .s_k
                        .iter()
                        .map(|(k, m)| json!({ "k": k, "matrix": m.as_ref().map(report::matrix) }))
                        .collect();
                    json!({ "weight": report::weight(&s.weight), "basis": basis_vectors(&s.basis), "s_k": s_k })
                })
                .collect();
            (json!({ "even_hwv": spaces }), true)
        }
    };
    Ok(Outcome {
        results: json!({ "module": header, "result": body }),
        pass: ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_flag_is_not_echoed() {
        let args = ["verify", "--json", "out.json", "--op", "Omega", "--json=x"]
            .map(String::from)
            .to_vec();
        assert_eq!(strip_json_flag(args), ["verify", "--op", "Omega"]);
    }

    #[test]
    fn builtin_specs() {
        assert_eq!(builtin("gl:2,1").unwrap().name(), "gl(2,1)");
        assert_eq!(builtin("osp12").unwrap().dim(), 5);
        assert!(builtin("gl:2").is_err());
        assert!(builtin("sl3").is_err());
    }
}
