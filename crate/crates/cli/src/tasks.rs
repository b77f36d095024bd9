//! One function per task kind. Each fills a `TaskRecord`; errors are
//! caught per task so later tasks still run.

use std::path::Path;

use mpcode::golden::{verify_worked_examples, CaseKind};
use mpcode::mpc::{
    distance_lower_bound, mpc_dual, quasi_orthogonal_units, row_codes, sharpness_witness, Sharpness,
};
use mpcode::props::{bound_suite, division_suite, dual_suite, ore_suite, self_dual_suite};
use mpcode::skew::{
    companion_matrix, constacyclic_selfdual_criteria, dual_parity_matrix, principal_code_generator,
    SkewPoly,
};
use mpcode::{Budget, Error, Freeness, LinearCode, MatrixProductCode, RMatrix, Ring};

use crate::config::{ResolvedCode, TaskConfig, Workspace};
use crate::report::{matrix_csv, Status, TaskRecord};

/// Failure to carry out a task at all, as opposed to a failed check.
type TaskResult = std::result::Result<(), String>;

fn lib<T>(r: mpcode::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub const SUITES: &[&str] = &["bound", "dual", "self-dual", "division", "ore"];

pub fn freeness_text(f: Freeness) -> String {
    match f {
        Freeness::Free { rank } => format!("free of rank {rank}"),
        Freeness::NotFree => "not free".into(),
    }
}

/// Runs one task and checks its `expect` table.
pub fn run_task(ws: &Workspace, task: &TaskConfig, index: usize, seed: u64) -> TaskRecord {
    let label = task
        .name
        .clone()
        .or_else(|| task.code.clone())
        .or_else(|| task.matrix.clone())
        .or_else(|| task.op.clone())
        .or_else(|| task.suite.clone())
        .unwrap_or_default();
    let mut rec = TaskRecord::new(index, &task.kind, &label);
    let budget = Budget {
        codewords: task.budget.unwrap_or(ws.budget.codewords),
        ..ws.budget
    };
    let result = match task.kind.as_str() {
        "analyze" => need(&task.code, "code").and_then(|c| analyze(ws, &mut rec, c, budget)),
        "mpc" => need(&task.code, "code").and_then(|c| mpc_task(ws, &mut rec, c, budget)),
        "skew" => skew_task(ws, &mut rec, task),
        "matrix" => need(&task.matrix, "matrix").and_then(|m| matrix_task(ws, &mut rec, m)),
        "export" => export_task(ws, &mut rec, task),
        "verify-examples" => {
            verify_examples(&mut rec);
            Ok(())
        }
        "prop" => prop_task(
            &mut rec,
            task.suite.as_deref().unwrap_or("all"),
            task.seed.unwrap_or(seed),
            task.count.unwrap_or(100),
        ),
        other => Err(format!("unknown task kind {other:?}")),
    };
    if let Err(e) = result {
        rec.error(e);
    }
    if rec.status != Status::Error {
        check_expectations(&mut rec, task);
    }
    rec
}

fn need<'a>(v: &'a Option<String>, key: &str) -> std::result::Result<&'a str, String> {
    v.as_deref().ok_or_else(|| format!("missing `{key}`"))
}

fn expect_text(v: &toml::Value) -> String {
    match v {
        toml::Value::String(s) => s.clone(),
        toml::Value::Array(items) => {
            format!("[{}]", items.iter().map(expect_text).collect::<Vec<_>>().join(", "))
        }
        other => other.to_string(),
    }
}

fn check_expectations(rec: &mut TaskRecord, task: &TaskConfig) {
    for (key, want) in &task.expect {
        let want = expect_text(want);
        match rec.get(key).map(str::to_string) {
            Some(got) if got == want => {}
            Some(got) => rec.fail(format!("expected {key} = {want}, got {got}")),
            None => rec.fail(format!("expected {key} = {want}, but the task reports no {key}")),
        }
    }
}

fn lookup_code<'a>(ws: &'a Workspace, name: &str) -> std::result::Result<&'a ResolvedCode, String> {
    ws.codes.get(name).ok_or_else(|| format!("unknown code {name:?}"))
}

fn distance_field(rec: &mut TaskRecord, code: &LinearCode) -> Option<usize> {
    match code.min_distance() {
        Ok(d) => {
            rec.field("distance", d);
            Some(d)
        }
        Err(Error::UndefinedDistance) => {
            rec.field("distance", "undefined");
            None
        }
        Err(e @ Error::BudgetExceeded { .. }) => {
            rec.field("distance", "skipped");
            rec.note(e);
            None
        }
        Err(e) => {
            rec.error(e);
            None
        }
    }
}

fn analyze(ws: &Workspace, rec: &mut TaskRecord, name: &str, budget: Budget) -> TaskResult {
    let resolved = lookup_code(ws, name)?;
    let code = resolved.linear().clone().with_budget(budget);
    rec.field("ring", code.ring());
    rec.field("length", code.length());
    rec.field("cardinality", code.cardinality());
    rec.field("freeness", freeness_text(code.freeness()));
    distance_field(rec, &code);
    match code.duality() {
        Ok(p) => {
            rec.field("duality", p.class());
            rec.field("self-orthogonal", p.self_orthogonal);
            rec.field("self-dual", p.self_dual);
            rec.field("lcd", p.lcd);
        }
        Err(e) => {
            rec.field("duality", "skipped");
            rec.note(e);
        }
    }
    rec.matrix("generator matrix", &code.generator_matrix());
    if let ResolvedCode::Principal(p) = resolved {
        rec.field("f", &p.f);
        rec.field("g", &p.g);
        if let Some(h) = &p.parity {
            let orthogonal = lib(p.generator.mul(&h.transpose()))?.is_zero();
            rec.field("generator-parity orthogonal", orthogonal);
            rec.matrix("parity matrix", h);
            if !orthogonal {
                rec.fail("G H^T is not zero");
            }
        }
    }
    rec.matrix(
        "dual generators",
        &code.dual().with_basis_generators().generator_matrix(),
    );
    if let ResolvedCode::Mpc(m) = resolved {
        mpc_fields(rec, m, budget)?;
    }
    Ok(())
}

fn mpc_task(ws: &Workspace, rec: &mut TaskRecord, name: &str, budget: Budget) -> TaskResult {
    match lookup_code(ws, name)? {
        ResolvedCode::Mpc(m) => {
            rec.field("length", m.realized().length());
            rec.field("cardinality", m.realized().cardinality());
            rec.field("freeness", freeness_text(m.realized().freeness()));
            match m.realized().duality_class() {
                Ok(c) => rec.field("duality", c),
                Err(e) => {
                    rec.field("duality", "skipped");
                    rec.note(e);
                }
            }
            mpc_fields(rec, m, budget)?;
            rec.matrix("generator matrix", &m.generator_matrix());
            Ok(())
        }
        _ => Err(format!("code {name:?} is not a matrix-product code")),
    }
}

fn mpc_fields(rec: &mut TaskRecord, m: &MatrixProductCode, budget: Budget) -> TaskResult {
    let inputs: Vec<LinearCode> = m.inputs().iter().map(|c| c.clone().with_budget(budget)).collect();
    let a = m.matrix();
    let realized = m.realized().clone().with_budget(budget);
    let bound = lib(distance_lower_bound(&inputs, a))?;
    rec.field("bound", bound);
    if let Some(d) = distance_field(rec, &realized) {
        rec.field("bound attained", d == bound);
        if d < bound {
            rec.fail(format!("distance {d} is below the bound {bound}"));
        }
    }
    match sharpness_witness(&inputs, a) {
        Ok(Sharpness::Witness(w)) => rec.field("witness", format!("found at i = {}", w.index + 1)),
        Ok(Sharpness::Absent) => rec.field("witness", "absent"),
        Ok(Sharpness::Inapplicable) => rec.field("witness", "inapplicable"),
        Err(e) => {
            rec.field("witness", "skipped");
            rec.note(e);
        }
    }
    let full_rank = lib(a.is_full_rank())?;
    rec.field("full rank", full_rank);
    if full_rank {
        let product: u128 = inputs.iter().map(LinearCode::cardinality).product();
        let matches = realized.cardinality() == product;
        rec.field("cardinality is product", matches);
        if !matches {
            rec.fail(format!(
                "cardinality {} differs from the product {product}",
                realized.cardinality()
            ));
        }
    }
    match mpc_dual(&inputs, a) {
        Ok(dual) => {
            let holds = lib(dual.realized().equals(&realized.dual()))?;
            rec.field("dual formula", if holds { "holds" } else { "violated" });
            rec.matrix("dual generator matrix", &dual.generator_matrix());
            if !holds {
                rec.fail("the dual formula does not match the computed dual");
            }
        }
        Err(e) => rec.field("dual formula", format!("refused: {e}")),
    }
    Ok(())
}

fn poly<'a>(ws: &'a Workspace, key: &Option<String>, what: &str) -> std::result::Result<&'a SkewPoly, String> {
    let name = need(key, what)?;
    ws.polys.get(name).ok_or_else(|| format!("unknown polynomial {name:?}"))
}

fn skew_task(ws: &Workspace, rec: &mut TaskRecord, t: &TaskConfig) -> TaskResult {
    let op = need(&t.op, "op")?;
    match op {
        "mul" => {
            let p = lib(poly(ws, &t.left, "left")?.mul(poly(ws, &t.right, "right")?))?;
            rec.field("product", p);
        }
        "right-divmod" | "left-divmod" => {
            let (a, b) = (poly(ws, &t.left, "left")?, poly(ws, &t.right, "right")?);
            let (q, r) = lib(if op == "right-divmod" {
                a.right_divmod(b)
            } else {
                a.left_divmod(b)
            })?;
            rec.field("quotient", &q);
            rec.field("remainder", &r);
            rec.field("divides", r.is_zero());
        }
        "reciprocal" => rec.field("reciprocal", poly(ws, &t.poly, "poly")?.skew_reciprocal()),
        "companion" => rec.matrix("companion matrix", &lib(companion_matrix(poly(ws, &t.f, "f")?))?),
        "generator" => {
            let code = lib(principal_code_generator(poly(ws, &t.g, "g")?, poly(ws, &t.f, "f")?))?;
            rec.field("length", code.length());
            rec.field("dimension", code.dimension());
            rec.matrix("generator matrix", &code.generator);
        }
        "parity" => {
            let (g, h, f) = (poly(ws, &t.g, "g")?, poly(ws, &t.h, "h")?, poly(ws, &t.f, "f")?);
            let parity = lib(dual_parity_matrix(g, h, f))?;
            let code = lib(principal_code_generator(g, f))?;
            let orthogonal = lib(code.generator.mul(&parity.transpose()))?.is_zero();
            rec.field("generator-parity orthogonal", orthogonal);
            rec.matrix("parity matrix", &parity);
            if !orthogonal {
                rec.fail("G H^T is not zero");
            }
        }
        "criteria" => {
            let g = poly(ws, &t.g, "g")?;
            let a = lib(ws.element(g.context().ring(), need(&t.a, "a")?))?;
            let n = t.n.ok_or("missing `n`")?;
            let report = lib(constacyclic_selfdual_criteria(g, a, n))?;
            rec.field("h", &report.h);
            rec.field("cond1", report.cond1);
            let per_l: Vec<String> = report.cond2_per_l.iter().map(bool::to_string).collect();
            rec.field("cond2 per l", format!("[{}]", per_l.join(", ")));
            rec.field("direct", report.direct);
        }
        other => return Err(format!("unknown skew op {other:?}")),
    }
    Ok(())
}

fn matrix_task(ws: &Workspace, rec: &mut TaskRecord, name: &str) -> TaskResult {
    let m = ws.matrices.get(name).ok_or_else(|| format!("unknown matrix {name:?}"))?;
    rec.field("rows", m.rows());
    rec.field("cols", m.cols());
    rec.field("full rank", lib(m.is_full_rank())?);
    if m.is_square() {
        rec.field("determinant", m.ring().format(lib(m.determinant())?));
        let inverse = lib(m.inverse())?;
        rec.field("nonsingular", inverse.is_some());
        match lib(quasi_orthogonal_units(m))? {
            Some(units) => {
                let u: Vec<String> = units.iter().map(|&e| m.ring().format(e)).collect();
                rec.field("quasi-orthogonal", format!("[{}]", u.join(", ")));
            }
            None => rec.field("quasi-orthogonal", "no"),
        }
        if let Some(inv) = inverse {
            rec.matrix("inverse", &inv);
        }
    }
    let fam = lib(row_codes(m))?;
    let d: Vec<String> = fam
        .distances
        .iter()
        .map(|d| d.map_or("undefined".to_string(), |d| d.to_string()))
        .collect();
    rec.field("row code distances", format!("[{}]", d.join(", ")));
    Ok(())
}

fn export_task(ws: &Workspace, rec: &mut TaskRecord, t: &TaskConfig) -> TaskResult {
    let path = need(&t.path, "path")?;
    let m: RMatrix = match (&t.matrix, &t.code) {
        (Some(name), None) => ws
            .matrices
            .get(name)
            .cloned()
            .ok_or_else(|| format!("unknown matrix {name:?}"))?,
        (None, Some(name)) => lookup_code(ws, name)?.linear().generator_matrix(),
        _ => return Err("give exactly one of `matrix` or `code`".into()),
    };
    std::fs::write(Path::new(path), matrix_csv(&m)).map_err(|e| format!("cannot write {path}: {e}"))?;
    rec.field("written", path);
    rec.field("shape", format!("{}x{}", m.rows(), m.cols()));
    Ok(())
}

pub fn verify_examples(rec: &mut TaskRecord) {
    for case in verify_worked_examples() {
        let verdict = match (case.kind, case.passed) {
            (CaseKind::Golden, true) => "pass",
            (CaseKind::Golden, false) => "FAIL",
            (CaseKind::Investigation, true) => "investigation (computed)",
            (CaseKind::Investigation, false) => "investigation (inconsistent)",
        };
        rec.field(case.name, verdict);
        for line in &case.lines {
            rec.note(format!("{}: {line}", case.name));
        }
        if !case.passed {
            rec.fail(format!("{} did not pass", case.name));
        }
    }
}

pub fn prop_task(rec: &mut TaskRecord, suite: &str, seed: u64, count: usize) -> TaskResult {
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&suite) {
        vec![suite]
    } else {
        return Err(format!("unknown suite {suite:?}; expected one of {SUITES:?} or \"all\""));
    };
    rec.field("seed", seed);
    rec.field("count", count);
    let f3 = lib(Ring::galois(3, 1))?;
    for name in names {
        let summary = match name {
            "bound" => bound_suite(seed, count),
            "dual" => dual_suite(seed, count, &[lib(Ring::zmod(4))?, lib(Ring::galois(2, 2))?]),
            "self-dual" => self_dual_suite(
                seed,
                count,
                &[lib(Ring::zmod(4))?, lib(Ring::product(&[f3.clone(), f3.clone()]))?],
            ),
            "division" => division_suite(seed, count),
            _ => ore_suite(seed, count),
        };
        rec.field(
            &format!("{name} passed"),
            format!("{}/{}", summary.cases - summary.failures, summary.cases),
        );
        for (k, v) in &summary.counters {
            rec.field(&format!("{name}: {k}"), v);
        }
        for c in &summary.counterexamples {
            rec.fail(format!("{name} counterexample {c}"));
        }
        if !summary.ok() && summary.counterexamples.is_empty() {
            rec.fail(format!("{name}: {} failures", summary.failures));
        }
    }
    Ok(())
}
