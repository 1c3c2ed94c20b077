//! Subcommand handlers: parse the request document, call the library, build the reply.

use std::collections::BTreeMap;

use nillat_core::automorphisms::{
    char_poly_pair, charpoly, is_anosov, phi_automorphism, unit_torsion, QuadElem, QuadraticRing,
};
use nillat_core::forms::{cocycle_space, AlternatingForm};
use nillat_core::group::{
    check_relations, example5_exp, example5_log, filiform_generators, filiform_presentation, parse_coords,
    trid_generators, trid_presentation, GroupModel, Presentation,
};
use nillat_core::io::{
    bigints_json, form_json, parse_form, parse_int_matrix_str, parse_qmatrix, parse_subspace, parse_vector,
    qmatrix_json, subspace_json, vector_json, zmatrix_json,
};
use nillat_core::lattice::filiform::{conjugator_search, filiform_abstractly_isomorphic};
use nillat_core::lattice::{
    central_quotients, classify_six_dim, classify_six_dim_with, commensurable, filiform_isomorphic,
    filiform_normalize, theta_invariant, trid_invariants, unique_abelian_codim1, AbelianInvariants,
    FiliformLatticeSpec,
};
use nillat_core::lie::{LieAlgebra, ProductTable};
use nillat_core::matrix::is_zero_vec;
use nillat_core::par::Execution;
use nillat_core::rational::Rational;
use nillat_core::symplectic::{
    cybe_check, double_theta_check, example5_gamma_prime, h1_cocycle_construct, h1_symplectic_decision,
    hk_degeneracy_check, moment_identity_check, moment_map, orthogonal_subalgebra, theorem6_structure,
    theta_matrix, CommAlgebra,
};
use nillat_core::{Error, Result};
use num_traits::{One, Signed};
use serde_json::{json, Value};

use crate::{Cli, Command, Common, FiliformOp, Outcome, SymplecticOp};

pub fn run(cli: &Cli) -> Result<Outcome> {
    let c = &cli.common;
    match &cli.command {
        Command::ValidateLie => validate_lie(c),
        Command::CentralSeries => central_series(c),
        Command::Cocycles => cocycles(c),
        Command::Classify6 => classify6(c),
        Command::Commensurable { a, b } => commensurable_cmd(c, a, b),
        Command::TridInvariants { d } => trid_cmd(c, d),
        Command::Filiform { op } => filiform_cmd(c, op),
        Command::Multiply => multiply(c),
        Command::Relations => relations(c),
        Command::Symplectic { op } => symplectic_cmd(c, op),
        Command::MomentMap => moment_cmd(c),
        Command::Theorem6 => theorem6_cmd(c),
        Command::Orthogonal => orthogonal_cmd(c),
        Command::Example5 => example5_cmd(c),
        Command::Cybe => cybe_cmd(c),
        Command::DoubleTheta => double_theta_cmd(c),
        Command::Units { m } => units_cmd(c, *m),
        Command::Anosov { matrix } => anosov_cmd(c, matrix),
        Command::Charpoly { matrix } => charpoly_cmd(c, matrix),
        Command::PhiAut { m, alpha, beta } => phi_cmd(c, *m, alpha, beta),
    }
}

fn parse_json(s: &str) -> Result<Value> {
    serde_json::from_str(s).map_err(|e| Error::input(format!("invalid JSON: {e}")))
}

fn try_doc(c: &Common) -> Result<Option<Value>> {
    match (&c.json, &c.input) {
        (Some(_), Some(_)) => Err(Error::input("give either --json or --input, not both")),
        (Some(s), None) => parse_json(s).map(Some),
        (None, Some(p)) => {
            let s = std::fs::read_to_string(p).map_err(|e| Error::input(format!("cannot read {}: {e}", p.display())))?;
            parse_json(&s).map(Some)
        }
        (None, None) => Ok(None),
    }
}

fn doc(c: &Common) -> Result<Value> {
    try_doc(c)?.ok_or_else(|| Error::input("this subcommand needs a request document via --json or --input"))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::input(format!("request needs field {key:?}")))
}

/// The document itself, or its `key` field when present.
fn unwrap_key<'a>(v: &'a Value, key: &str) -> &'a Value {
    v.get(key).unwrap_or(v)
}

fn algebra(v: &Value) -> Result<LieAlgebra> {
    LieAlgebra::from_json_value(unwrap_key(v, "algebra"))
}

fn form_for(v: &Value, l: &LieAlgebra) -> Result<AlternatingForm> {
    let w = parse_form(field(v, "form")?)?;
    if w.dim() != l.dim() {
        return Err(Error::input(format!("form has dimension {}, algebra has {}", w.dim(), l.dim())));
    }
    Ok(w)
}

fn invariants_json(a: &AbelianInvariants) -> Value {
    json!({
        "divisors": bigints_json(&a.divisors),
        "order": a.order().map(|o| o.to_string()),
        "cyclic": a.is_cyclic(),
    })
}

fn table_json(p: &ProductTable) -> Value {
    let n = p.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = p.get(i, j);
            if !is_zero_vec(v) {
                out.push(json!([i + 1, j + 1, vector_json(v)]));
            }
        }
    }
    json!({"dim": n, "products": out})
}

fn validate_lie(c: &Common) -> Result<Outcome> {
    let l = algebra(&doc(c)?)?;
    let report = l.validate();
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| json!({"triple": [v.triple.0 + 1, v.triple.1 + 1, v.triple.2 + 1], "defect": vector_json(&v.defect)}))
        .collect();
    Ok(Outcome::ok(json!({"valid": report.ok, "dim": l.dim(), "violations": violations})))
}

fn central_series(c: &Common) -> Result<Outcome> {
    let l = algebra(&doc(c)?)?;
    let lower: Vec<Value> = l.lower_central_series().iter().map(subspace_json).collect();
    let upper: Vec<Value> = l.upper_central_series().iter().map(subspace_json).collect();
    Ok(Outcome::ok(json!({
        "lower": lower,
        "upper": upper,
        "nilpotent": l.is_nilpotent(),
        "class": l.nilpotency_class(),
    })))
}

fn cocycles(c: &Common) -> Result<Outcome> {
    let l = algebra(&doc(c)?)?;
    let cs = cocycle_space(&l);
    Ok(Outcome::ok(json!({
        "dim": cs.cocycles.len(),
        "cocycles": cs.cocycles.iter().map(form_json).collect::<Vec<_>>(),
        "coboundaries": cs.coboundaries.iter().map(form_json).collect::<Vec<_>>(),
    })))
}

fn vectors(v: &Value) -> Result<Vec<Vec<Rational>>> {
    v.as_array()
        .ok_or_else(|| Error::input("expected an array of vectors"))?
        .iter()
        .map(parse_vector)
        .collect()
}

fn classify6(c: &Common) -> Result<Outcome> {
    let d = doc(c)?;
    let l = algebra(&d)?;
    let cl = match (d.get("complement"), d.get("center")) {
        (Some(v), Some(z)) => classify_six_dim_with(&l, &vectors(v)?, &vectors(z)?)?,
        (None, None) => classify_six_dim(&l)?,
        _ => return Err(Error::input("give both \"complement\" and \"center\" or neither")),
    };
    Ok(Outcome::ok(json!({
        "family": cl.family.as_str(),
        "d": cl.d.as_ref().map(|d| d.to_string()),
        "pfaffian_form": vector_json(&cl.pfaffian_form),
        "witness": qmatrix_json(&cl.witness),
    })))
}

/// Reads a pair `a`, `b` from flags (inline JSON) or from the request document.
fn pair(c: &Common, a: &Option<String>, b: &Option<String>) -> Result<(Value, Value)> {
    match (a, b) {
        (Some(a), Some(b)) => Ok((parse_json(a)?, parse_json(b)?)),
        (None, None) => {
            let d = doc(c)?;
            Ok((field(&d, "a")?.clone(), field(&d, "b")?.clone()))
        }
        _ => Err(Error::input("give both --a and --b")),
    }
}

fn commensurable_cmd(c: &Common, a: &Option<String>, b: &Option<String>) -> Result<Outcome> {
    let (a, b) = pair(c, a, b)?;
    let (ca, cb) = (classify_six_dim(&algebra(&a)?)?, classify_six_dim(&algebra(&b)?)?);
    let yes = commensurable(&ca, &cb);
    let inv = |x: &nillat_core::lattice::SixDimClassification| {
        json!({"family": x.family.as_str(), "d": x.d.as_ref().map(|d| d.to_string())})
    };
    Ok(Outcome::answer(json!({"commensurable": yes, "a": inv(&ca), "b": inv(&cb)}), yes))
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::input(format!("bad integer {x:?}"))))
        .collect()
}

fn trid_cmd(c: &Common, d: &Option<String>) -> Result<Outcome> {
    let model = match d {
        Some(s) => {
            let v = parse_ints(s)?;
            if v.len() != 3 {
                return Err(Error::input("--d needs three integers"));
            }
            GroupModel::tri_d(v[0], v[1], v[2])?
        }
        None => GroupModel::from_json_value(unwrap_key(&doc(c)?, "model"))?,
    };
    let inv = trid_invariants(&model)?;
    Ok(Outcome::ok(json!({"model": model.to_json_value(), "invariants": invariants_json(&inv)})))
}

fn spec_of(v: &Value) -> Result<FiliformLatticeSpec> {
    FiliformLatticeSpec::from_json_value(unwrap_key(v, "spec"))
}

fn filiform_cmd(c: &Common, op: &FiliformOp) -> Result<Outcome> {
    match op {
        FiliformOp::Normalize => {
            let s = spec_of(&doc(c)?)?;
            let n = filiform_normalize(&s);
            Ok(Outcome::ok(json!({"normalized": n.spec.to_json_value(), "witness": zmatrix_json(&n.witness)})))
        }
        FiliformOp::Theta => {
            let s = spec_of(&doc(c)?)?;
            Ok(Outcome::ok(json!({"theta": bigints_json(&theta_invariant(&s))})))
        }
        FiliformOp::Quotients => {
            let s = spec_of(&doc(c)?)?;
            let q: Vec<Value> = central_quotients(&s)
                .iter()
                .enumerate()
                .map(|(i, a)| json!({"i": i + 1, "invariants": invariants_json(a)}))
                .collect();
            Ok(Outcome::ok(json!({"n": s.n(), "quotients": q})))
        }
        FiliformOp::Isom { a, b } => {
            let (a, b) = pair(c, a, b)?;
            let (sa, sb) = (spec_of(&a)?, spec_of(&b)?);
            let r = filiform_isomorphic(&sa, &sb)?;
            let mut out = json!({
                "isomorphic": r.isomorphic,
                "method": r.method,
                "witness": r.witness.as_ref().map(zmatrix_json),
                "abstractly_isomorphic": filiform_abstractly_isomorphic(&sa, &sb)?,
            });
            if let Some(bound) = c.bound {
                if !(0..=1000).contains(&bound) {
                    return Err(Error::input("--bound must lie in 0..=1000"));
                }
                let found = conjugator_search(sa.g(), sb.g(), bound, Execution::Parallel);
                out["search"] = json!({"bound": bound, "found": found.is_some()});
            }
            Ok(Outcome::answer(out, r.isomorphic))
        }
    }
}

fn model_of(v: &Value) -> Result<GroupModel> {
    GroupModel::from_json_value(field(v, "model")?)
}

fn multiply(c: &Common) -> Result<Outcome> {
    let d = doc(c)?;
    let model = model_of(&d)?;
    let x = parse_coords(field(&d, "x")?)?;
    let y = parse_coords(field(&d, "y")?)?;
    Ok(Outcome::ok(json!({"product": vector_json(&model.multiply(&x, &y)?)})))
}

fn relations(c: &Common) -> Result<Outcome> {
    let d = doc(c)?;
    let model = model_of(&d)?;
    let (pres, mut gens): (Presentation, BTreeMap<String, Vec<Rational>>) = match &model {
        GroupModel::TriD { d } => (trid_presentation(*d), trid_generators(&model)),
        GroupModel::Filiform(f) => (filiform_presentation(f.matrix())?, filiform_generators(&model)),
        _ => (Presentation { gens: vec![], relations: vec![] }, BTreeMap::new()),
    };
    let pres = match d.get("presentation") {
        Some(p) => serde_json::from_value(p.clone()).map_err(|e| Error::input(format!("bad presentation: {e}")))?,
        None if pres.gens.is_empty() => {
            return Err(Error::input(format!("{} has no standard presentation; supply \"presentation\"", model.name())))
        }
        None => pres,
    };
    if let Some(a) = d.get("assignment") {
        let a = a.as_object().ok_or_else(|| Error::input("assignment must map generators to coordinates"))?;
        for (g, v) in a {
            gens.insert(g.clone(), parse_coords(v)?);
        }
    }
    let r = check_relations(&model, &gens, &pres)?;
    Ok(Outcome::ok(json!({
        "ok": r.ok,
        "relations": pres.relations.len(),
        "failed_relation": r.first_failure.map(|i| i + 1),
    })))
}

fn comm_algebra(v: &Value) -> Result<CommAlgebra> {
    CommAlgebra::from_json_value(unwrap_key(v, "algebra"))
}

fn symplectic_cmd(c: &Common, op: &SymplecticOp) -> Result<Outcome> {
    let d = doc(c)?;
    let a = comm_algebra(&d)?;
    match op {
        SymplecticOp::Decide => {
            let dec = h1_symplectic_decision(&a)?;
            Ok(Outcome::ok(json!({
                "symplectic": dec.symplectic,
                "reason": dec.reason,
                "method": dec.method,
                "local": dec.socle.is_local,
                "radical_dim": dec.socle.radical.dim(),
                "socle_dim": dec.socle.socle.dim(),
                "generic": dec.generic.as_ref().map(|g| g.label()),
            })))
        }
        SymplecticOp::Construct => {
            let w = h1_cocycle_construct(&a)?;
            Ok(Outcome::ok(json!({"dim": w.dim(), "cocycle": form_json(&w)})))
        }
        SymplecticOp::HkCheck { k } => {
            let k = match k {
                Some(k) => *k,
                None => d.get("k").and_then(Value::as_u64).map_or(2, |k| k as usize),
            };
            let r = hk_degeneracy_check(&a, k)?;
            Ok(Outcome::ok(json!({
                "k": k,
                "degenerate": r.degenerate,
                "contains_ag": r.contains_ag,
                "cocycle_dim": r.cocycle_dim,
                "kernel": subspace_json(&r.kernel),
            })))
        }
    }
}

fn moment_cmd(c: &Common) -> Result<Outcome> {
    let d = doc(c)?;
    let l = algebra(&d)?;
    let w = form_for(&d, &l)?;
    let q = moment_map(&l, &w)?;
    let check = moment_identity_check(&l, &w, c.seed)?;
    let mut out = json!({
        "degree": q.degree(),
        "moment_map": q.to_json_value(),
        "identity": {"holds": check.holds, "method": check.method, "samples": check.samples},
    });
    if let Some(x) = d.get("at") {
        let x = parse_vector(x)?;
        if x.len() != l.dim() {
            return Err(Error::input("\"at\" has the wrong number of coordinates"));
        }
        out["value"] = vector_json(&q.eval(&x));
    }
    Ok(Outcome::ok(out))
}

fn theorem6_cmd(c: &Common) -> Result<Outcome> {
    let d = doc(c)?;
    let l = algebra(&d)?;
    let w = form_for(&d, &l)?;
    let ideal = match d.get("ideal") {
        Some(v) => parse_subspace(l.dim(), v)?,
        None => unique_abelian_codim1(&l)?,
    };
    let e = match d.get("e") {
        Some(v) => parse_vector(v)?,
        None => ideal
            .complement_basis()
            .into_iter()
            .next()
            .ok_or_else(|| Error::precondition("the ideal is the whole algebra"))?,
    };
    let s = theorem6_structure(&l, &ideal, &e, &w)?;
    let report = nillat_core::symplectic::connection_report(&l, &w, &s.product);
    Ok(Outcome::ok(json!({
        "ideal": subspace_json(&ideal),
        "e": vector_json(&e),
        "w": vector_json(&s.w),
        "product": table_json(&s.product),
        "connection": report,
    })))
}

fn orthogonal_cmd(c: &Common) -> Result<Outcome> {
    let d = doc(c)?;
    let l = algebra(&d)?;
    let w = form_for(&d, &l)?;
    let h = parse_subspace(l.dim(), field(&d, "subalgebra")?)?;
    let o = orthogonal_subalgebra(&l, &w, &h)?;
    Ok(Outcome::ok(json!({"orthogonal": subspace_json(&o), "is_subalgebra": l.is_subalgebra(&o)})))
}

fn example5_cmd(c: &Common) -> Result<Outcome> {
    let d = doc(c)?;
    let mut out = json!({});
    if let Some(v) = d.get("exp") {
        out["exp"] = vector_json(&example5_exp(&parse_vector(v)?)?);
    }
    if let Some(v) = d.get("log") {
        out["log"] = vector_json(&example5_log(&parse_vector(v)?)?);
    }
    if let Some(v) = d.get("coefficients") {
        let rows = vectors(v)?;
        let rows: [Vec<Rational>; 3] =
            rows.try_into().map_err(|_| Error::input("\"coefficients\" needs exactly three rows"))?;
        let r = example5_gamma_prime(&rows)?;
        out["gamma_prime"] = json!({
            "w_dim": r.w_dim,
            "rank": r.gamma_prime_rank,
            "is_lattice": r.is_lattice,
            "x_basis": r.x_basis.iter().map(|b| bigints_json(b)).collect::<Vec<_>>(),
            "linear_form": r.linear_form.as_ref().map(|f| bigints_json(f)),
        });
    }
    if out.as_object().is_some_and(|o| o.is_empty()) {
        return Err(Error::input("example5 needs at least one of \"exp\", \"log\", \"coefficients\""));
    }
    Ok(Outcome::ok(out))
}

fn r_matrix(d: &Value, l: &LieAlgebra) -> Result<nillat_core::matrix::QMatrix> {
    let r = parse_qmatrix(field(d, "r")?)?;
    if r.rows() != l.dim() || r.cols() != l.dim() {
        return Err(Error::input("r must be a square matrix of the algebra's dimension"));
    }
    Ok(r)
}

fn cybe_cmd(c: &Common) -> Result<Outcome> {
    let d = doc(c)?;
    let l = algebra(&d)?;
    let r = r_matrix(&d, &l)?;
    Ok(Outcome::ok(json!({"solution": cybe_check(&l, &r)?})))
}

fn double_theta_cmd(c: &Common) -> Result<Outcome> {
    let d = doc(c)?;
    let l = algebra(&d)?;
    let r = r_matrix(&d, &l)?;
    let rep = double_theta_check(&l, &r)?;
    Ok(Outcome::ok(json!({
        "isomorphism": rep.isomorphism,
        "theta": qmatrix_json(&theta_matrix(&r)),
        "double": rep.double.to_json_value(),
        "cotangent": rep.cotangent.to_json_value(),
    })))
}

fn int_field(d: &Value, key: &str) -> Result<i64> {
    let v = field(d, key)?;
    v.as_i64()
        .or_else(|| v.as_str().and_then(|s| s.parse().ok()))
        .ok_or_else(|| Error::input(format!("{key:?} must be an integer")))
}

fn units_cmd(c: &Common, m: Option<i64>) -> Result<Outcome> {
    let m = match m {
        Some(m) => m,
        None => int_field(&doc(c)?, "m")?,
    };
    let ring = QuadraticRing::new(m)?;
    let u = unit_torsion(m)?;
    Ok(Outcome::ok(json!({
        "m": m.to_string(),
        "basis": match ring.kind {
            nillat_core::group::QuadCase::Sqrt => "sqrt",
            nillat_core::group::QuadCase::Half => "half",
        },
        "fundamental": u.fundamental_unit.as_ref().map(|e| ring.format(e)),
        "fundamental_coords": u.fundamental_unit.as_ref().map(|e| bigints_json(&[e.a.clone(), e.b.clone()])),
        "torsion": u.torsion,
    })))
}

fn matrix_arg(c: &Common, m: &Option<String>) -> Result<nillat_core::matrix::ZMatrix> {
    match m {
        Some(s) => parse_int_matrix_str(s),
        None => nillat_core::group::parse_int_matrix(unwrap_key(&doc(c)?, "matrix")),
    }
}

fn anosov_cmd(c: &Common, m: &Option<String>) -> Result<Outcome> {
    let b = matrix_arg(c, m)?;
    let p = charpoly(&b)?;
    let yes = is_anosov(&b)?;
    Ok(Outcome::answer(json!({"charpoly": bigints_json(p.coeffs()), "det": b.det().to_string(), "anosov": yes}), yes))
}

fn charpoly_cmd(c: &Common, m: &Option<String>) -> Result<Outcome> {
    let b = matrix_arg(c, m)?;
    let p = charpoly(&b)?;
    let mut out = json!({"charpoly": bigints_json(p.coeffs()), "text": p.to_string()});
    if b.rows() == 3 && b.det().abs().is_one() {
        let (_, qa) = char_poly_pair(&b)?;
        out["q_a"] = bigints_json(qa.coeffs());
        out["q_a_text"] = json!(qa.to_string());
    }
    Ok(Outcome::ok(out))
}

fn unit_arg(s: &str) -> Result<QuadElem> {
    let v = parse_ints(s)?;
    match v[..] {
        [a, b] => Ok(QuadElem::new(a, b)),
        _ => Err(Error::input("a unit is given as \"a,b\" meaning a + b w")),
    }
}

fn unit_value(v: &Value) -> Result<QuadElem> {
    match v {
        Value::String(s) => unit_arg(s),
        _ => {
            let x = parse_vector(v)?;
            match &x[..] {
                [a, b] if a.is_integer() && b.is_integer() => Ok(QuadElem::new(a.to_integer(), b.to_integer())),
                _ => Err(Error::input("a unit is given as [a, b] meaning a + b w")),
            }
        }
    }
}

fn phi_cmd(c: &Common, m: Option<i64>, alpha: &Option<String>, beta: &Option<String>) -> Result<Outcome> {
    let (m, a, b) = match (m, alpha, beta) {
        (Some(m), Some(a), Some(b)) => (m, unit_arg(a)?, unit_arg(b)?),
        (None, None, None) => {
            let d = doc(c)?;
            (int_field(&d, "m")?, unit_value(field(&d, "alpha")?)?, unit_value(field(&d, "beta")?)?)
        }
        _ => return Err(Error::input("give -m, --alpha and --beta together")),
    };
    let ring = QuadraticRing::new(m)?;
    let phi = phi_automorphism(&ring, &a, &b)?;
    Ok(Outcome::ok(json!({
        "m": m.to_string(),
        "alpha": ring.format(&phi.alpha),
        "beta": ring.format(&phi.beta),
        "gamma": ring.format(&phi.gamma),
        "matrix": qmatrix_json(&phi.matrix),
        "eigenvalues": phi.eigen,
        "anosov": phi.anosov,
    })))
}
