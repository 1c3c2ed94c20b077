//! Coordinate models of nilpotent Lie groups with closed-form products.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::{QMatrix, ZMatrix};
use crate::par::{self, Execution};
use crate::rational::{format_rational, is_squarefree, parse_rational, q, qf, Rational};

/// Integer powers of the filiform action cached at construction.
const CACHED_POWERS: i64 = 16;

/// Unipotent action data for the semidirect model `Z^n ⋊ Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiliformAction {
    g: ZMatrix,
    log: QMatrix,
    powers: Vec<ZMatrix>,
}

impl FiliformAction {
    pub fn new(g: ZMatrix) -> Result<Self> {
        let n = g.rows();
        if n < 2 || !g.is_lower_unitriangular() {
            return Err(Error::input("filiform action must be a lower unitriangular integer matrix of size >= 2"));
        }
        let u = g.sub(&ZMatrix::identity(n));
        if u.pow(n as u32 - 1).is_zero() {
            return Err(Error::precondition("(g - I)^(n-1) vanishes; the action is not of maximal nilpotency index"));
        }
        let log = g.to_rational().unipotent_log()?;
        let inv = g.inverse_unimodular().expect("unitriangular is unimodular");
        let powers = (-CACHED_POWERS..=CACHED_POWERS)
            .map(|p| if p >= 0 { g.pow(p as u32) } else { inv.pow((-p) as u32) })
            .collect();
        Ok(FiliformAction { g, log, powers })
    }

    pub fn n(&self) -> usize {
        self.g.rows()
    }

    pub fn matrix(&self) -> &ZMatrix {
        &self.g
    }

    /// `g^p` for any integer `p`.
    pub fn int_power(&self, p: i64) -> ZMatrix {
        if p.abs() <= CACHED_POWERS {
            return self.powers[(p + CACHED_POWERS) as usize].clone();
        }
        filiform_action_power(&self.g, p)
    }

    /// `g^t = exp(t log g)` for rational `t`.
    pub fn power(&self, t: &Rational) -> QMatrix {
        if let Some(p) = t.is_integer().then(|| t.to_integer().to_i64()).flatten() {
            return self.int_power(p).to_rational();
        }
        self.log.nilpotent_exp(t).expect("log of unipotent is nilpotent")
    }
}

/// `g^p` for a unitriangular integer matrix, negative `p` via the inverse.
pub fn filiform_action_power(g: &ZMatrix, p: i64) -> ZMatrix {
    if p >= 0 {
        g.pow(p as u32)
    } else {
        g.inverse_unimodular().expect("unitriangular is unimodular").pow(p.unsigned_abs() as u32)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupModel {
    /// Heisenberg group over the dual numbers `Z[ε]/(ε²)`.
    HeisenbergDual,
    /// Heisenberg group over a rank-two ring, product per the congruence of `d` mod 4.
    HeisQuad { d: i64 },
    /// The cotangent group of the Heisenberg group.
    TStarH1,
    /// The lattice family with invariants `d1 | d2 | d3`.
    TriD { d: [i64; 3] },
    /// The semidirect product `Q^n ⋊ Q` with `t` acting by `g^t`.
    Filiform(FiliformAction),
    /// The six-dimensional group `y_j += x_k x'_l` over cyclic `(j, k, l)`.
    Example5G,
}

/// Which printed product a `HeisQuad` model uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QuadCase {
    /// `d ≡ 2, 3 (mod 4)`: ring generator squares to `d`.
    Sqrt,
    /// `d ≡ 1 (mod 4)`: ring generator satisfies `w² = w + (d - 1)/4`.
    Half,
}

impl GroupModel {
    pub fn heis_quad(d: i64) -> Result<Self> {
        if d == 0 || !is_squarefree(&BigInt::from(d)) {
            return Err(Error::input(format!("HeisQuad needs a nonzero squarefree d, got {d}")));
        }
        if d == 1 {
            return Err(Error::input("HeisQuad needs d != 1"));
        }
        Ok(GroupModel::HeisQuad { d })
    }

    pub fn tri_d(d1: i64, d2: i64, d3: i64) -> Result<Self> {
        if d1 < 1 || d2 % d1 != 0 || d3 % d2 != 0 || d2 < 1 || d3 < 1 {
            return Err(Error::input(format!("TriD needs 1 <= d1 | d2 | d3, got ({d1}, {d2}, {d3})")));
        }
        Ok(GroupModel::TriD { d: [d1, d2, d3] })
    }

    pub fn filiform(g: ZMatrix) -> Result<Self> {
        Ok(GroupModel::Filiform(FiliformAction::new(g)?))
    }

    pub fn name(&self) -> &'static str {
        match self {
            GroupModel::HeisenbergDual => "HeisenbergDual",
            GroupModel::HeisQuad { .. } => "HeisQuad",
            GroupModel::TStarH1 => "TStarH1",
            GroupModel::TriD { .. } => "TriD",
            GroupModel::Filiform(_) => "Filiform",
            GroupModel::Example5G => "Example5G",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            GroupModel::Filiform(f) => f.n() + 1,
            _ => 6,
        }
    }

    pub fn quad_case(d: i64) -> QuadCase {
        if d.rem_euclid(4) == 1 {
            QuadCase::Half
        } else {
            QuadCase::Sqrt
        }
    }

    /// `(p, q)` with ring generator `w² = p + q w` for the Heisenberg-type models.
    fn ring(&self) -> Option<(i64, i64)> {
        match self {
            GroupModel::HeisenbergDual => Some((0, 0)),
            GroupModel::HeisQuad { d } => Some(match GroupModel::quad_case(*d) {
                QuadCase::Sqrt => (*d, 0),
                QuadCase::Half => ((d - 1) / 4, 1),
            }),
            _ => None,
        }
    }

    pub fn identity(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.dim()]
    }

    fn check(&self, x: &[Rational]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::input(format!(
                "{} elements have {} coordinates, got {}",
                self.name(),
                self.dim(),
                x.len()
            )));
        }
        Ok(())
    }

    pub fn multiply(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        self.check(x)?;
        self.check(y)?;
        let mut out: Vec<Rational> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        if let Some((p, qq)) = self.ring() {
            let (p, qq) = (q(p), q(qq));
            out[4] += &x[0] * &y[2] + &p * &x[1] * &y[3];
            out[5] += &x[0] * &y[3] + &x[1] * &y[2] + &qq * &x[1] * &y[3];
            return Ok(out);
        }
        match self {
            GroupModel::TStarH1 => {
                for j in 0..3 {
                    out[j] += &x[3 + (j + 1) % 3] * &y[3 + (j + 2) % 3];
                }
            }
            GroupModel::TriD { d } => {
                for j in 0..3 {
                    out[j] += q(d[j]) * &x[3 + (j + 1) % 3] * &y[3 + (j + 2) % 3];
                }
            }
            GroupModel::Example5G => {
                for j in 0..3 {
                    out[3 + j] += &x[(j + 1) % 3] * &y[(j + 2) % 3];
                }
            }
            GroupModel::Filiform(f) => {
                let n = f.n();
                let gt = f.power(&x[n]);
                let moved = gt.mul_vec(&y[..n]);
                for i in 0..n {
                    out[i] = &x[i] + &moved[i];
                }
            }
            GroupModel::HeisenbergDual | GroupModel::HeisQuad { .. } => unreachable!(),
        }
        Ok(out)
    }

    pub fn inverse(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        self.check(x)?;
        let mut out: Vec<Rational> = x.iter().map(|a| -a).collect();
        if let Some((p, qq)) = self.ring() {
            let (p, qq) = (q(p), q(qq));
            out[4] += &x[0] * &x[2] + &p * &x[1] * &x[3];
            out[5] += &x[0] * &x[3] + &x[1] * &x[2] + &qq * &x[1] * &x[3];
            return Ok(out);
        }
        match self {
            GroupModel::TStarH1 => {
                for j in 0..3 {
                    out[j] += &x[3 + (j + 1) % 3] * &x[3 + (j + 2) % 3];
                }
            }
            GroupModel::TriD { d } => {
                for j in 0..3 {
                    out[j] += q(d[j]) * &x[3 + (j + 1) % 3] * &x[3 + (j + 2) % 3];
                }
            }
            GroupModel::Example5G => {
                for j in 0..3 {
                    out[3 + j] += &x[(j + 1) % 3] * &x[(j + 2) % 3];
                }
            }
            GroupModel::Filiform(f) => {
                let n = f.n();
                let back = f.power(&-x[n].clone()).mul_vec(&x[..n]);
                for i in 0..n {
                    out[i] = -back[i].clone();
                }
            }
            GroupModel::HeisenbergDual | GroupModel::HeisQuad { .. } => unreachable!(),
        }
        Ok(out)
    }

    /// `x^e` for an integer exponent.
    pub fn power(&self, x: &[Rational], e: i64) -> Result<Vec<Rational>> {
        let mut base = if e < 0 { self.inverse(x)? } else { x.to_vec() };
        let mut e = e.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(&acc, &base)?;
            }
            base = self.multiply(&base, &base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Group commutator `x^{-1} y^{-1} x y`.
    pub fn commutator(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        let xi = self.inverse(x)?;
        let yi = self.inverse(y)?;
        let a = self.multiply(&xi, &yi)?;
        let b = self.multiply(&a, x)?;
        self.multiply(&b, y)
    }

    /// Evaluates a word of `(generator, exponent)` pairs left to right.
    pub fn evaluate(&self, assignment: &BTreeMap<String, Vec<Rational>>, word: &[(String, i64)]) -> Result<Vec<Rational>> {
        let mut acc = self.identity();
        for (g, e) in word {
            let x = assignment
                .get(g)
                .ok_or_else(|| Error::input(format!("generator {g:?} has no assigned element")))?;
            acc = self.multiply(&acc, &self.power(x, *e)?)?;
        }
        Ok(acc)
    }

    /// Standard integral generators: the unit coordinate vectors.
    pub fn unit_element(&self, i: usize) -> Vec<Rational> {
        let mut v = self.identity();
        v[i] = Rational::one();
        v
    }

    pub fn to_json_value(&self) -> Value {
        match self {
            GroupModel::HeisenbergDual | GroupModel::TStarH1 | GroupModel::Example5G => {
                json!({"kind": self.name(), "params": {}})
            }
            GroupModel::HeisQuad { d } => json!({"kind": "HeisQuad", "params": {"d": d.to_string()}}),
            GroupModel::TriD { d } => {
                json!({"kind": "TriD", "params": {"d": d.iter().map(i64::to_string).collect::<Vec<_>>()}})
            }
            GroupModel::Filiform(f) => {
                json!({"kind": "Filiform", "params": {"n": f.n(), "g": crate::io::zmatrix_json(&f.g)}})
            }
        }
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let kind = v
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::input("group model needs a string \"kind\""))?;
        let params = v.get("params").cloned().unwrap_or(json!({}));
        let as_int = |x: &Value| x.as_i64().or_else(|| x.as_str().and_then(|s| s.trim().parse().ok()));
        let int = |key: &str| -> Result<i64> {
            params
                .get(key)
                .and_then(as_int)
                .ok_or_else(|| Error::input(format!("missing integer parameter {key:?}")))
        };
        match kind {
            "HeisenbergDual" => Ok(GroupModel::HeisenbergDual),
            "TStarH1" => Ok(GroupModel::TStarH1),
            "Example5G" => Ok(GroupModel::Example5G),
            "HeisQuad" => GroupModel::heis_quad(int("d")?),
            "TriD" => {
                let d: Vec<i64> = params
                    .get("d")
                    .and_then(Value::as_array)
                    .and_then(|a| a.iter().map(as_int).collect::<Option<Vec<_>>>())
                    .ok_or_else(|| Error::input("TriD needs \"d\": [d1,d2,d3]"))?;
                if d.len() != 3 {
                    return Err(Error::input("TriD needs exactly three parameters"));
                }
                GroupModel::tri_d(d[0], d[1], d[2])
            }
            "Filiform" => {
                let g = parse_int_matrix(params.get("g").unwrap_or(&Value::Null))?;
                if let Ok(n) = int("n") {
                    if n as usize != g.rows() {
                        return Err(Error::input("parameter n does not match the size of g"));
                    }
                }
                GroupModel::filiform(g)
            }
            other => Err(Error::input(format!("unknown group model kind {other:?}"))),
        }
    }
}

/// Parses a JSON array of integer rows (numbers or decimal strings).
pub fn parse_int_matrix(v: &Value) -> Result<ZMatrix> {
    let rows = v.as_array().ok_or_else(|| Error::input("matrix must be an array of rows"))?;
    let mut out = Vec::new();
    for r in rows {
        let r = r.as_array().ok_or_else(|| Error::input("matrix row must be an array"))?;
        let mut row = Vec::new();
        for x in r {
            let n: BigInt = match x {
                Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| Error::input("matrix entries must be integers"))?,
                Value::String(s) => {
                    let q = parse_rational(s)?;
                    if !q.is_integer() {
                        return Err(Error::input("matrix entries must be integers"));
                    }
                    q.to_integer()
                }
                _ => return Err(Error::input("matrix entries must be integers")),
            };
            row.push(n);
        }
        out.push(row);
    }
    let m = ZMatrix::from_rows(out)?;
    if m.rows() == 0 {
        return Err(Error::input("empty matrix"));
    }
    Ok(m)
}

/// Parses a coordinate vector given as an array of rational strings or integers.
pub fn parse_coords(v: &Value) -> Result<Vec<Rational>> {
    let arr = v
        .get("coords")
        .unwrap_or(v)
        .as_array()
        .ok_or_else(|| Error::input("element needs a \"coords\" array"))?;
    arr.iter()
        .map(|x| match x {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => n
                .as_i64()
                .map(q)
                .ok_or_else(|| Error::input("coordinates must be integers or \"p/q\" strings")),
            _ => Err(Error::input("coordinates must be integers or \"p/q\" strings")),
        })
        .collect()
}

pub fn coords_json(x: &[Rational]) -> Value {
    json!({"coords": x.iter().map(format_rational).collect::<Vec<_>>()})
}

/// A group presentation: named generators and relations `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub gens: Vec<String>,
    pub relations: Vec<Relation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub lhs: Vec<(String, i64)>,
    #[serde(default)]
    pub rhs: Vec<(String, i64)>,
}

impl Relation {
    pub fn new(lhs: &[(&str, i64)], rhs: &[(&str, i64)]) -> Self {
        let conv = |w: &[(&str, i64)]| w.iter().map(|(g, e)| (g.to_string(), *e)).collect();
        Relation { lhs: conv(lhs), rhs: conv(rhs) }
    }
}

impl Presentation {
    pub fn validate(&self) -> Result<()> {
        for (i, r) in self.relations.iter().enumerate() {
            for (g, _) in r.lhs.iter().chain(&r.rhs) {
                if !self.gens.contains(g) {
                    return Err(Error::input(format!("relation {} uses undeclared generator {g:?}", i + 1)));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub ok: bool,
    /// 0-based index of the first relation that fails.
    pub first_failure: Option<usize>,
}

pub fn check_relations(
    model: &GroupModel,
    assignment: &BTreeMap<String, Vec<Rational>>,
    pres: &Presentation,
) -> Result<RelationCheck> {
    pres.validate()?;
    for g in &pres.gens {
        if !assignment.contains_key(g) {
            return Err(Error::input(format!("generator {g:?} has no assigned element")));
        }
    }
    for (i, r) in pres.relations.iter().enumerate() {
        if model.evaluate(assignment, &r.lhs)? != model.evaluate(assignment, &r.rhs)? {
            return Ok(RelationCheck { ok: false, first_failure: Some(i) });
        }
    }
    Ok(RelationCheck { ok: true, first_failure: None })
}

/// Generators `z1, z2, z3, y1, y2, y3` of the `TriD` lattice and their relations:
/// central `z_i`, commuting `z`s, and `y2 y3 = y3 y2 z1^{d1}` with its cyclic shifts.
pub fn trid_presentation(d: [i64; 3]) -> Presentation {
    let gens: Vec<String> = ["z1", "z2", "z3", "y1", "y2", "y3"].iter().map(|s| s.to_string()).collect();
    let mut relations = Vec::new();
    for i in 1..=3 {
        for j in 1..=3 {
            let (z, y) = (format!("z{i}"), format!("y{j}"));
            relations.push(Relation::new(&[(&z, 1), (&y, 1)], &[(&y, 1), (&z, 1)]));
        }
        for j in i + 1..=3 {
            let (a, b) = (format!("z{i}"), format!("z{j}"));
            relations.push(Relation::new(&[(&a, 1), (&b, 1)], &[(&b, 1), (&a, 1)]));
        }
    }
    relations.push(Relation::new(&[("y2", 1), ("y3", 1)], &[("y3", 1), ("y2", 1), ("z1", d[0])]));
    relations.push(Relation::new(&[("y3", 1), ("y1", 1)], &[("y1", 1), ("y3", 1), ("z2", d[1])]));
    relations.push(Relation::new(&[("y1", 1), ("y2", 1)], &[("y2", 1), ("y1", 1), ("z3", d[2])]));
    Presentation { gens, relations }
}

/// Unit-vector assignment for the generators of [`trid_presentation`].
pub fn trid_generators(model: &GroupModel) -> BTreeMap<String, Vec<Rational>> {
    let names = ["z1", "z2", "z3", "y1", "y2", "y3"];
    names.iter().enumerate().map(|(i, s)| (s.to_string(), model.unit_element(i))).collect()
}

/// Generators `y1..yn, z` of the filiform lattice: the `y`s commute, `z y_n = y_n z`,
/// and `z y_i = y_i z_i z` with `z_i = y_{i+1}^{a_{i+1,i}} ... y_n^{a_{n,i}}`.
pub fn filiform_presentation(g: &ZMatrix) -> Result<Presentation> {
    let n = g.rows();
    let y = |i: usize| format!("y{}", i + 1);
    let mut gens: Vec<String> = (0..n).map(y).collect();
    gens.push("z".into());
    let mut relations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            relations.push(Relation { lhs: vec![(y(i), 1), (y(j), 1)], rhs: vec![(y(j), 1), (y(i), 1)] });
        }
    }
    for i in 0..n {
        let mut rhs = vec![(y(i), 1)];
        for r in i + 1..n {
            let e = g[(r, i)]
                .to_i64()
                .ok_or_else(|| Error::input("matrix entry too large for a relation exponent"))?;
            if e != 0 {
                rhs.push((y(r), e));
            }
        }
        rhs.push(("z".into(), 1));
        relations.push(Relation { lhs: vec![("z".into(), 1), (y(i), 1)], rhs });
    }
    Ok(Presentation { gens, relations })
}

pub fn filiform_generators(model: &GroupModel) -> BTreeMap<String, Vec<Rational>> {
    let n = model.dim() - 1;
    let mut m: BTreeMap<String, Vec<Rational>> =
        (0..n).map(|i| (format!("y{}", i + 1), model.unit_element(i))).collect();
    m.insert("z".into(), model.unit_element(n));
    m
}

/// `exp` for the six-dimensional group with `y_j += x_k x'_l`: the one-parameter
/// subgroup through `(a, b)` reaches `(a, b_j + a_k a_l / 2)`.
pub fn example5_exp(v: &[Rational]) -> Result<Vec<Rational>> {
    if v.len() != 6 {
        return Err(Error::input("expected 6 coordinates"));
    }
    let half = qf(1, 2);
    let mut out = v.to_vec();
    for j in 0..3 {
        out[3 + j] += &half * &v[(j + 1) % 3] * &v[(j + 2) % 3];
    }
    Ok(out)
}

pub fn example5_log(x: &[Rational]) -> Result<Vec<Rational>> {
    if x.len() != 6 {
        return Err(Error::input("expected 6 coordinates"));
    }
    let half = qf(1, 2);
    let mut out = x.to_vec();
    for j in 0..3 {
        out[3 + j] -= &half * &x[(j + 1) % 3] * &x[(j + 2) % 3];
    }
    Ok(out)
}

#[inline(always)]
fn translate(x: &[i64], y: &[i64], out: &mut [i64]) {
    for i in 0..out.len() {
        out[i] = x[i] + y[i];
    }
}

#[inline(always)]
fn ring_product(p: i64, q: i64, x: &[i64], y: &[i64], out: &mut [i64]) {
    translate(x, y, out);
    out[4] += x[0] * y[2] + p * x[1] * y[3];
    out[5] += x[0] * y[3] + x[1] * y[2] + q * x[1] * y[3];
}

#[inline(always)]
fn tstar_product(x: &[i64], y: &[i64], out: &mut [i64]) {
    translate(x, y, out);
    out[0] += x[4] * y[5];
    out[1] += x[5] * y[3];
    out[2] += x[3] * y[4];
}

#[inline(always)]
fn trid_product(d: &[i64; 3], x: &[i64], y: &[i64], out: &mut [i64]) {
    translate(x, y, out);
    out[0] += d[0] * x[4] * y[5];
    out[1] += d[1] * x[5] * y[3];
    out[2] += d[2] * x[3] * y[4];
}

#[inline(always)]
fn example5_product(x: &[i64], y: &[i64], out: &mut [i64]) {
    translate(x, y, out);
    out[3] += x[1] * y[2];
    out[4] += x[2] * y[0];
    out[5] += x[0] * y[1];
}

/// `out[target] += coef * x[left] * y[right]` in a product `x + y + ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BilinearTerm {
    pub target: usize,
    pub left: usize,
    pub right: usize,
    pub coef: i64,
}

/// Fast `i64` evaluation of a model product, for exhaustive sweeps over small
/// integer coordinates. Filiform exponents outside the cached range use a slow path.
#[derive(Clone, Debug)]
pub enum IntKernel {
    Ring { p: i64, q: i64 },
    TStar,
    TriD([i64; 3]),
    Example5,
    Filiform { n: usize, powers: Vec<Vec<i64>>, action: FiliformAction },
}

impl IntKernel {
    pub fn new(model: &GroupModel) -> Self {
        if let Some((p, q)) = model.ring() {
            return IntKernel::Ring { p, q };
        }
        match model {
            GroupModel::TStarH1 => IntKernel::TStar,
            GroupModel::TriD { d } => IntKernel::TriD(*d),
            GroupModel::Example5G => IntKernel::Example5,
            GroupModel::Filiform(f) => {
                let n = f.n();
                let powers = (-CACHED_POWERS..=CACHED_POWERS)
                    .map(|p| {
                        f.int_power(p)
                            .entries()
                            .iter()
                            .map(|x| x.to_i64().expect("small power"))
                            .collect()
                    })
                    .collect();
                IntKernel::Filiform { n, powers, action: f.clone() }
            }
            _ => unreachable!(),
        }
    }

    /// The correction terms of a two-step product, `None` for the filiform model.
    pub fn bilinear_terms(&self) -> Option<Vec<BilinearTerm>> {
        let t = |target, left, right, coef| BilinearTerm { target, left, right, coef };
        Some(match self {
            IntKernel::Ring { p, q } => vec![t(4, 0, 2, 1), t(4, 1, 3, *p), t(5, 0, 3, 1), t(5, 1, 2, 1), t(5, 1, 3, *q)],
            IntKernel::TStar => vec![t(0, 4, 5, 1), t(1, 5, 3, 1), t(2, 3, 4, 1)],
            IntKernel::TriD(d) => vec![t(0, 4, 5, d[0]), t(1, 5, 3, d[1]), t(2, 3, 4, d[2])],
            IntKernel::Example5 => vec![t(3, 1, 2, 1), t(4, 2, 0, 1), t(5, 0, 1, 1)],
            IntKernel::Filiform { .. } => return None,
        })
    }

    pub fn multiply(&self, x: &[i64], y: &[i64], out: &mut [i64]) {
        match self {
            IntKernel::Ring { p, q } => ring_product(*p, *q, x, y, out),
            IntKernel::TStar => tstar_product(x, y, out),
            IntKernel::TriD(d) => trid_product(d, x, y, out),
            IntKernel::Example5 => example5_product(x, y, out),
            IntKernel::Filiform { n, powers, action } => {
                let n = *n;
                out[n] = x[n] + y[n];
                let t = x[n];
                let slow;
                let m: &[i64] = if t.abs() <= CACHED_POWERS {
                    &powers[(t + CACHED_POWERS) as usize]
                } else {
                    slow = action
                        .int_power(t)
                        .entries()
                        .iter()
                        .map(|v| v.to_i64().expect("small power"))
                        .collect::<Vec<i64>>();
                    &slow
                };
                for i in 0..n {
                    let mut acc = x[i];
                    for j in 0..=i {
                        acc += m[i * n + j] * y[j];
                    }
                    out[i] = acc;
                }
            }
        }
    }
}

/// Outcome of [`soundness_sweep`] over all points with coordinates in `{-1, 0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub points: usize,
    pub triples: u64,
    /// Exact products of all pairs are integral and match the machine-integer kernel.
    pub closed: bool,
    /// Exact inverses of all points are integral.
    pub inverses_closed: bool,
    pub associative: bool,
}

/// Exhaustive lattice-closure and associativity check on `{-1, 0, 1}^dim`.
///
/// Pair products are computed exactly, checked for integrality and compared
/// with [`IntKernel`]; the triple sweep then runs on the kernel.
pub fn soundness_sweep(model: &GroupModel, exec: Execution) -> Result<SweepReport> {
    let dim = model.dim();
    let n = 3usize.pow(dim as u32);
    let pts: Vec<i64> = (0..n)
        .flat_map(|mut c| {
            (0..dim).map(move |_| {
                let d = (c % 3) as i64 - 1;
                c /= 3;
                d
            })
        })
        .collect();
    let pt = |i: usize| &pts[i * dim..(i + 1) * dim];
    let rat = |x: &[i64]| x.iter().map(|&v| q(v)).collect::<Vec<_>>();
    let kernel = IntKernel::new(model);
    let rows: Vec<usize> = (0..n).collect();
    let table_rows = par::map(exec, &rows, |&i| -> Result<(Vec<i64>, bool)> {
        let x = rat(pt(i));
        let mut row = vec![0i64; n * dim];
        let mut ok = true;
        for j in 0..n {
            let out = &mut row[j * dim..(j + 1) * dim];
            kernel.multiply(pt(i), pt(j), out);
            let exact = model.multiply(&x, &rat(pt(j)))?;
            ok &= exact.iter().zip(out.iter()).all(|(e, &k)| e.is_integer() && e.numer() == &BigInt::from(k));
        }
        Ok((row, ok))
    });
    let mut table = Vec::with_capacity(n * n * dim);
    let mut closed = true;
    for r in table_rows {
        let (row, ok) = r?;
        closed &= ok;
        table.extend(row);
    }
    let mut inverses_closed = true;
    for i in 0..n {
        inverses_closed &= model.inverse(&rat(pt(i)))?.iter().all(|v| v.is_integer());
    }
    let associative = match kernel.bilinear_terms() {
        Some(terms) if bilinear_matches(dim, &pts, &table, &terms) => associativity_bilinear(exec, dim, &pts, &table, &terms),
        _ => associativity_dyn(exec, dim, &pts, &table, &kernel),
    };
    Ok(SweepReport { points: n, triples: (n as u64).pow(3), closed, inverses_closed, associative })
}

/// Bound `B` on coordinates and coefficients for the `i32` bilinear sweep. A
/// defect is a sum of four linear parts of size at most `2B` and `2 * terms`
/// cubic parts of size at most `B^3 = 2^21`, so it stays below `2^31` and a
/// defect that wraps to zero is zero.
const BILINEAR_BOUND: i64 = 1 << 7;
const BILINEAR_MAX_TERMS: usize = 16;

/// The terms reproduce every pair product in `table` and stay within [`BILINEAR_BOUND`].
fn bilinear_matches(dim: usize, pts: &[i64], table: &[i64], terms: &[BilinearTerm]) -> bool {
    if terms.len() > BILINEAR_MAX_TERMS
        || terms.iter().any(|t| t.coef.abs() > BILINEAR_BOUND)
        || table.iter().any(|v| v.abs() > BILINEAR_BOUND)
    {
        return false;
    }
    let n = pts.len() / dim;
    let mut out = vec![0i64; dim];
    (0..n).all(|i| {
        let x = &pts[i * dim..(i + 1) * dim];
        (0..n).all(|j| {
            let y = &pts[j * dim..(j + 1) * dim];
            for c in 0..dim {
                out[c] = x[c] + y[c];
            }
            for t in terms {
                out[t.target] += t.coef * x[t.left] * y[t.right];
            }
            out[..] == table[(i * n + j) * dim..(i * n + j + 1) * dim]
        })
    })
}

/// Triple sweep for products `x + y + Σ c x_a y_b`: for fixed `x, y` the defect
/// `(xy)z - x(yz)` is evaluated for every `z` at once on coordinate columns.
/// Wrapping arithmetic is exact under [`bilinear_matches`].
fn associativity_bilinear(exec: Execution, dim: usize, pts: &[i64], table: &[i64], terms: &[BilinearTerm]) -> bool {
    let n = pts.len() / dim;
    let small = |v: i64| v as i32;
    let z_cols: Vec<Vec<i32>> = (0..dim).map(|c| (0..n).map(|k| small(pts[k * dim + c])).collect()).collect();
    // prod_cols[j][c][k] = coordinate c of (point j)(point k)
    let prod_cols: Vec<Vec<Vec<i32>>> = (0..n)
        .map(|j| (0..dim).map(|c| (0..n).map(|k| small(table[(j * n + k) * dim + c])).collect()).collect())
        .collect();
    par::all(exec, n, |i| {
        let x = &pts[i * dim..(i + 1) * dim];
        let mut defect = vec![0i32; n];
        for j in 0..n {
            let xy = &table[(i * n + j) * dim..(i * n + j + 1) * dim];
            let yz = &prod_cols[j];
            for c in 0..dim {
                let shift = small(xy[c] - x[c]);
                for ((d, &z), &w) in defect.iter_mut().zip(&z_cols[c]).zip(&yz[c]) {
                    *d = shift.wrapping_add(z).wrapping_sub(w);
                }
                for t in terms.iter().filter(|t| t.target == c) {
                    let (l, r) = (small(t.coef * xy[t.left]), small(t.coef * x[t.left]));
                    for ((d, &z), &w) in defect.iter_mut().zip(&z_cols[t.right]).zip(&yz[t.right]) {
                        *d = d.wrapping_add(l.wrapping_mul(z)).wrapping_sub(r.wrapping_mul(w));
                    }
                }
                if defect.iter().fold(0, |acc, &d| acc | d) != 0 {
                    return false;
                }
            }
        }
        true
    })
}

fn associativity_dyn(exec: Execution, dim: usize, pts: &[i64], table: &[i64], kernel: &IntKernel) -> bool {
    let n = pts.len() / dim;
    let pt = |i: usize| &pts[i * dim..(i + 1) * dim];
    let prod = |i: usize, j: usize| &table[(i * n + j) * dim..(i * n + j + 1) * dim];
    par::all(exec, n, |i| {
        let mut lhs = vec![0i64; dim];
        let mut rhs = vec![0i64; dim];
        for j in 0..n {
            for k in 0..n {
                kernel.multiply(prod(i, j), pt(k), &mut lhs);
                kernel.multiply(pt(i), prod(j, k), &mut rhs);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::rational_vec;

    #[test]
    fn heis_quad_sample_product() {
        let m = GroupModel::heis_quad(2).unwrap();
        let x = rational_vec(&[1, 0, 0, 0, 0, 0]);
        let y = rational_vec(&[0, 0, 1, 0, 0, 0]);
        assert_eq!(m.multiply(&x, &y).unwrap(), rational_vec(&[1, 0, 1, 0, 1, 0]));
    }

    #[test]
    fn heis_quad_half_case_matches_printed_formula() {
        let m = GroupModel::heis_quad(5).unwrap();
        let x = rational_vec(&[0, 1, 0, 0, 0, 0]);
        let y = rational_vec(&[0, 0, 0, 1, 0, 0]);
        // x5 += (d-1)/4 x2 y4 = 1, x6 += x2 y4 = 1
        assert_eq!(m.multiply(&x, &y).unwrap(), rational_vec(&[0, 1, 0, 1, 1, 1]));
    }

    #[test]
    fn tstar_sample_product() {
        let m = GroupModel::TStarH1;
        let x = rational_vec(&[0, 0, 0, 0, 1, 0]);
        let y = rational_vec(&[0, 0, 0, 0, 0, 1]);
        assert_eq!(m.multiply(&x, &y).unwrap(), rational_vec(&[1, 0, 0, 0, 1, 1]));
    }

    #[test]
    fn inverses() {
        let models = vec![
            GroupModel::HeisenbergDual,
            GroupModel::heis_quad(-3).unwrap(),
            GroupModel::TStarH1,
            GroupModel::tri_d(1, 1, 1).unwrap(),
            GroupModel::Example5G,
            GroupModel::filiform(ZMatrix::from_i64(&[&[1, 0, 0], &[6, 1, 0], &[1, 9, 1]])).unwrap(),
        ];
        for m in models {
            let e = m.identity();
            assert_eq!(m.inverse(&e).unwrap(), e);
            let x: Vec<Rational> = (0..m.dim()).map(|i| qf(i as i64 * 3 - 4, 2)).collect();
            let xi = m.inverse(&x).unwrap();
            assert_eq!(m.multiply(&x, &xi).unwrap(), e);
            assert_eq!(m.multiply(&xi, &x).unwrap(), e);
            assert_eq!(m.multiply(&x, &e).unwrap(), x);
        }
        let t = GroupModel::tri_d(1, 1, 1).unwrap();
        assert_eq!(t.inverse(&rational_vec(&[0, 0, 0, 1, 0, 0])).unwrap(), rational_vec(&[0, 0, 0, -1, 0, 0]));
    }

    #[test]
    fn model_mismatch_is_input_error() {
        let m = GroupModel::TStarH1;
        assert!(matches!(m.multiply(&rational_vec(&[1, 2]), &m.identity()), Err(Error::Input(_))));
    }

    #[test]
    fn trid_relations() {
        let m = GroupModel::tri_d(2, 2, 6).unwrap();
        let pres = trid_presentation([2, 2, 6]);
        let r = check_relations(&m, &trid_generators(&m), &pres).unwrap();
        assert!(r.ok);
        let wrong = trid_presentation([1, 2, 6]);
        let r = check_relations(&m, &trid_generators(&m), &wrong).unwrap();
        assert!(!r.ok);
    }

    #[test]
    fn filiform_relations() {
        let g = ZMatrix::from_i64(&[&[1, 0, 0, 0], &[2, 1, 0, 0], &[-1, 3, 1, 0], &[4, 0, 5, 1]]);
        let m = GroupModel::filiform(g.clone()).unwrap();
        let pres = filiform_presentation(&g).unwrap();
        assert!(check_relations(&m, &filiform_generators(&m), &pres).unwrap().ok);
    }

    #[test]
    fn degenerate_filiform_rejected() {
        let g = ZMatrix::from_i64(&[&[1, 0, 0], &[1, 1, 0], &[0, 0, 1]]);
        assert!(matches!(GroupModel::filiform(g), Err(Error::Precondition(_))));
    }

    #[test]
    fn binomial_action() {
        let g0 = ZMatrix::from_i64(&[&[1, 0, 0], &[1, 1, 0], &[0, 1, 1]]);
        for k in -10..=10i64 {
            let p = filiform_action_power(&g0, k);
            assert_eq!(p[(1, 0)], BigInt::from(k));
            assert_eq!(p[(2, 0)], BigInt::from(k * (k - 1) / 2));
        }
        assert!(filiform_action_power(&g0, 0).is_identity());
    }

    #[test]
    fn example5_round_trip() {
        let v = rational_vec(&[1, 1, 1, 0, 0, 0]);
        let e = example5_exp(&v).unwrap();
        assert_eq!(e, vec![q(1), q(1), q(1), qf(1, 2), qf(1, 2), qf(1, 2)]);
        assert_eq!(example5_log(&e).unwrap(), v);
    }

    #[test]
    fn json_round_trip() {
        let models = vec![
            GroupModel::tri_d(2, 2, 6).unwrap(),
            GroupModel::heis_quad(5).unwrap(),
            GroupModel::filiform(ZMatrix::from_i64(&[&[1, 0, 0], &[6, 1, 0], &[1, 9, 1]])).unwrap(),
            GroupModel::Example5G,
        ];
        for m in models {
            assert_eq!(GroupModel::from_json_value(&m.to_json_value()).unwrap(), m);
        }
    }

    #[test]
    fn sweep_detects_nonassociative_product() {
        // out0 = x0 + y0 + x0 y1 feeds its own input, so (xy)z - x(yz) = x0 y1 z1
        let terms = [BilinearTerm { target: 0, left: 0, right: 1, coef: 1 }];
        let pts: Vec<i64> = (0..9).flat_map(|c| [(c % 3) as i64 - 1, (c / 3) as i64 - 1]).collect();
        let mut table = Vec::new();
        for i in 0..9 {
            for j in 0..9 {
                let (x, y) = (&pts[2 * i..2 * i + 2], &pts[2 * j..2 * j + 2]);
                table.extend([x[0] + y[0] + x[0] * y[1], x[1] + y[1]]);
            }
        }
        assert!(bilinear_matches(2, &pts, &table, &terms));
        assert!(!associativity_bilinear(Execution::Sequential, 2, &pts, &table, &terms));
    }

    #[test]
    fn sweep_small_models() {
        let f = GroupModel::filiform(ZMatrix::from_i64(&[&[1, 0, 0], &[6, 1, 0], &[1, 9, 1]])).unwrap();
        let r = soundness_sweep(&f, Execution::Sequential).unwrap();
        assert!(r.closed && r.inverses_closed && r.associative);
        assert_eq!(r.points, 81);
    }

    #[test]
    fn int_kernel_matches_exact_product() {
        let m = GroupModel::filiform(ZMatrix::from_i64(&[&[1, 0, 0], &[6, 1, 0], &[1, 9, 1]])).unwrap();
        let k = IntKernel::new(&m);
        let x = [1i64, -2, 3, 20];
        let y = [4i64, 0, -1, 2];
        let mut out = [0i64; 4];
        k.multiply(&x, &y, &mut out);
        let exact = m
            .multiply(&x.iter().map(|&a| q(a)).collect::<Vec<_>>(), &y.iter().map(|&a| q(a)).collect::<Vec<_>>())
            .unwrap();
        assert_eq!(exact, out.iter().map(|&a| q(a)).collect::<Vec<_>>());
    }
}
