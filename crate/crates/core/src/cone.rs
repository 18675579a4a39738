//! Cell algebras with products truncated to the cell, their positive cones,
//! and polynomial identities witnessing goodness of a cell.
//!
//! A witness consists of a strictly positive element `x` and exponents
//! `n > k ≥ l ≥ 1` with non-negative coefficients `a_j` such that
//!
//! ```text
//! x^n + a_{n-1} x^{n-1} + ... + a_{k+1} x^{k+1} = a_k x^k + ... + a_l x^l,   a_l ≠ 0.
//! ```

use std::collections::BTreeMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::cells::{CellError, Cells};
use crate::linalg::{self, Matrix, SparseEchelon};
use crate::multitable::MultiTable;
use crate::scalar::{Field, Scalar, ScalarError, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("coefficient of {0} is not strictly positive")]
    NotInCone(String),
    #[error("malformed witness: {0}")]
    Malformed(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Cell(#[from] CellError),
    #[error("unknown generator `{0}` for this cell")]
    UnknownGen(String),
}

/// Span of a two-sided cell with products of cell members, keeping only
/// summands inside the cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellAlgebra {
    gens: Vec<usize>,
    names: Vec<String>,
    mult: Vec<Vec<Vec<(usize, u64)>>>,
}

impl CellAlgebra {
    /// The algebra of two-sided cell number `j`.
    pub fn new(t: &MultiTable, cells: &Cells, j: usize) -> Self {
        let gens = cells.two_sided.cells[j].clone();
        let local: BTreeMap<usize, usize> = gens.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        let mult = gens
            .iter()
            .map(|&f| {
                gens.iter()
                    .map(|&g| {
                        if !t.composable(f, g) {
                            return Vec::new();
                        }
                        t.product(f, g)
                            .iter()
                            .filter_map(|(h, m)| local.get(h).map(|i| (*i, *m)))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        CellAlgebra {
            names: gens.iter().map(|g| t.name(*g).to_string()).collect(),
            gens,
            mult,
        }
    }

    /// The algebra of the two-sided cell with exactly these members.
    pub fn for_cell(t: &MultiTable, cells: &Cells, members: &[usize]) -> Result<Self, CellError> {
        let j = cells.two_sided.find_cell(members).ok_or(CellError::NotACell)?;
        Ok(Self::new(t, cells, j))
    }

    /// The algebra of the two-sided cell containing the named generator.
    pub fn containing(t: &MultiTable, cells: &Cells, gen: &str) -> Result<Self, ConeError> {
        let g = t
            .gen_index(gen)
            .map_err(|_| ConeError::UnknownGen(gen.to_string()))?;
        Ok(Self::new(t, cells, cells.j_cell(g)))
    }

    pub fn dim(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn local_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Structure constant: multiplicity of basis element `h` in `f · g`.
    pub fn coefficient(&self, f: usize, g: usize, h: usize) -> u64 {
        self.mult[f][g]
            .iter()
            .find(|(k, _)| *k == h)
            .map_or(0, |(_, m)| *m)
    }

    pub fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let field = u[0].field().clone();
        let mut out = vec![field.zero(); self.dim()];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (h, m) in &self.mult[i][j] {
                    out[*h] = &out[*h] + &ab.scale_int(*m as i64);
                }
            }
        }
        out
    }

    /// `x, x², ..., x^n`.
    pub fn powers(&self, x: &[Scalar], n: u32) -> Vec<Vec<Scalar>> {
        let mut out: Vec<Vec<Scalar>> = Vec::with_capacity(n as usize);
        let mut cur = x.to_vec();
        for _ in 0..n {
            out.push(cur.clone());
            cur = self.mul(&cur, x);
        }
        out
    }

    pub fn format(&self, v: &[Scalar]) -> String {
        let terms: Vec<String> = v
            .iter()
            .zip(&self.names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| if c.is_one() { format!("[{n}]") } else { format!("({c})[{n}]") })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    fn float_mult(&self, u: &[f64], v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        for (i, a) in u.iter().enumerate() {
            for (j, b) in v.iter().enumerate() {
                for (h, m) in &self.mult[i][j] {
                    out[*h] += a * b * (*m as f64);
                }
            }
        }
        out
    }
}

/// A strictly positive element of a cell algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeElement {
    pub coeffs: Vec<Scalar>,
}

impl ConeElement {
    pub fn new(alg: &CellAlgebra, coeffs: Vec<Scalar>) -> Result<Self, ConeError> {
        if coeffs.len() != alg.dim() {
            return Err(ConeError::Malformed(format!(
                "expected {} coefficients, got {}",
                alg.dim(),
                coeffs.len()
            )));
        }
        for (c, name) in coeffs.iter().zip(alg.names()) {
            if c.sign()? != Sign::Positive {
                return Err(ConeError::NotInCone(name.clone()));
            }
        }
        Ok(ConeElement { coeffs })
    }

    /// Builds an element from `(generator, scalar text)` pairs; every member of the
    /// cell must be listed.
    pub fn from_named(alg: &CellAlgebra, field: &Field, pairs: &[(&str, &str)]) -> Result<Self, ConeError> {
        let mut coeffs = vec![field.zero(); alg.dim()];
        for (name, text) in pairs {
            let i = alg
                .local_index(name)
                .ok_or_else(|| ConeError::UnknownGen(name.to_string()))?;
            coeffs[i] = field.parse(text)?;
        }
        Self::new(alg, coeffs)
    }

    pub fn all_ones(alg: &CellAlgebra, field: &Field) -> Self {
        ConeElement {
            coeffs: vec![field.one(); alg.dim()],
        }
    }

    pub fn field(&self) -> &Field {
        self.coeffs[0].field()
    }

    pub fn scaled(&self, lambda: &Scalar) -> ConeElement {
        ConeElement {
            coeffs: self.coeffs.iter().map(|c| c * lambda).collect(),
        }
    }
}

pub fn cone_mul(alg: &CellAlgebra, u: &ConeElement, v: &ConeElement) -> Vec<Scalar> {
    alg.mul(&u.coeffs, &v.coeffs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodnessWitness {
    pub x: ConeElement,
    pub n: u32,
    pub k: u32,
    pub l: u32,
    /// Coefficients `a_j` for `l ≤ j < n`; missing entries are zero.
    pub a: BTreeMap<u32, Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodnessCheck {
    pub holds: bool,
    pub residual: Vec<Scalar>,
}

impl GoodnessWitness {
    pub fn field(&self) -> &Field {
        self.x.field()
    }

    pub fn coefficient(&self, j: u32) -> Scalar {
        self.a.get(&j).cloned().unwrap_or_else(|| self.field().zero())
    }

    pub fn check_well_formed(&self) -> Result<(), ConeError> {
        if !(self.n > self.k && self.k >= self.l && self.l >= 1) {
            return Err(ConeError::Malformed(format!(
                "need n > k >= l >= 1, got n = {}, k = {}, l = {}",
                self.n, self.k, self.l
            )));
        }
        for (j, c) in &self.a {
            if *j < self.l || *j >= self.n {
                return Err(ConeError::Malformed(format!(
                    "coefficient a_{j} outside the range {}..{}",
                    self.l,
                    self.n - 1
                )));
            }
            if c.field() != self.field() {
                return Err(ConeError::Malformed(format!("a_{j} lives in another field")));
            }
            if c.sign()? == Sign::Negative {
                return Err(ConeError::Malformed(format!("a_{j} = {c} is negative")));
            }
        }
        if self.coefficient(self.l).is_zero() {
            return Err(ConeError::Malformed(format!("a_{} must be nonzero", self.l)));
        }
        Ok(())
    }

    /// The same identity for `λx`, with `a_j` replaced by `λ^{n-j} a_j`.
    pub fn rescaled(&self, lambda: &Scalar) -> GoodnessWitness {
        GoodnessWitness {
            x: self.x.scaled(lambda),
            a: self
                .a
                .iter()
                .map(|(j, c)| (*j, c * &lambda.pow(self.n - j)))
                .collect(),
            ..self.clone()
        }
    }

    pub fn to_json(&self, alg: &CellAlgebra) -> Value {
        let coeffs: serde_json::Map<String, Value> = alg
            .names()
            .iter()
            .zip(&self.x.coeffs)
            .map(|(n, c)| (n.clone(), Value::String(c.to_string())))
            .collect();
        let a: serde_json::Map<String, Value> = self
            .a
            .iter()
            .map(|(j, c)| (j.to_string(), Value::String(c.to_string())))
            .collect();
        json!({
            "field": self.field().to_string(),
            "coeffs": coeffs,
            "n": self.n,
            "k": self.k,
            "l": self.l,
            "a": a,
        })
    }

    pub fn from_json(alg: &CellAlgebra, v: &Value) -> Result<Self, ConeError> {
        let bad = |m: &str| ConeError::Malformed(m.to_string());
        let field_text = v.get("field").and_then(Value::as_str).unwrap_or("Q");
        let field = Field::parse_decl(field_text)?;
        let coeffs = v
            .get("coeffs")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing `coeffs` object"))?;
        let mut x = vec![field.zero(); alg.dim()];
        for (name, c) in coeffs {
            let i = alg
                .local_index(name)
                .ok_or_else(|| ConeError::UnknownGen(name.clone()))?;
            x[i] = field.parse(&json_scalar_text(c).ok_or_else(|| bad("coefficient must be a string or number"))?)?;
        }
        let int = |key: &str| -> Result<u32, ConeError> {
            v.get(key)
                .and_then(Value::as_u64)
                .map(|n| n as u32)
                .ok_or_else(|| ConeError::Malformed(format!("missing integer `{key}`")))
        };
        let mut a = BTreeMap::new();
        if let Some(obj) = v.get("a").and_then(Value::as_object) {
            for (j, c) in obj {
                let j: u32 = j.parse().map_err(|_| bad("exponent keys must be integers"))?;
                let text = json_scalar_text(c).ok_or_else(|| bad("coefficient must be a string or number"))?;
                a.insert(j, field.parse(&text)?);
            }
        }
        Ok(GoodnessWitness {
            x: ConeElement::new(alg, x)?,
            n: int("n")?,
            k: int("k")?,
            l: int("l")?,
            a,
        })
    }
}

fn json_scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

/// Evaluates both sides of the identity exactly.
pub fn verify_goodness(alg: &CellAlgebra, w: &GoodnessWitness) -> Result<GoodnessCheck, ConeError> {
    w.check_well_formed()?;
    ConeElement::new(alg, w.x.coeffs.clone())?;
    let field = w.field();
    let powers = alg.powers(&w.x.coeffs, w.n);
    let mut residual = powers[w.n as usize - 1].clone();
    for j in w.l..w.n {
        let c = w.coefficient(j);
        if c.is_zero() {
            continue;
        }
        let c = if j > w.k { c } else { -c };
        for (r, p) in residual.iter_mut().zip(&powers[j as usize - 1]) {
            *r = &*r + &(&c * p);
        }
    }
    let holds = residual.iter().all(Scalar::is_zero);
    debug_assert!(residual.iter().all(|r| r.field() == field));
    Ok(GoodnessCheck { holds, residual })
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Largest extra power of `T` multiplied onto the minimal relation.
    pub max_shift: u32,
    pub perron: bool,
    pub perron_iterations: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_shift: 2,
            perron: true,
            perron_iterations: 20_000,
        }
    }
}

/// Monic relation `x^m = Σ_{i<m} c_i x^i` of smallest degree, returned as `c_1..c_{m-1}`.
pub fn minimal_relation(alg: &CellAlgebra, x: &[Scalar]) -> Vec<Scalar> {
    let field = x[0].field().clone();
    let mut ech = SparseEchelon::new(&field, alg.dim());
    let mut powers: Vec<Vec<Scalar>> = Vec::new();
    let mut cur = x.to_vec();
    loop {
        if !ech.insert_dense(&cur) {
            break;
        }
        powers.push(cur.clone());
        cur = alg.mul(&cur, x);
    }
    if powers.is_empty() {
        return Vec::new();
    }
    let cols: Vec<Vec<Scalar>> = powers;
    let m = Matrix::from_rows(&field, &cols).transpose();
    linalg::solve(&m, &cur).expect("dependent power lies in the span")
}

/// Splits the relation `T^n = Σ c_i T^i` into the witness sign pattern, if possible.
fn witness_from_relation(x: &ConeElement, c: &[Scalar], shift: u32) -> Option<GoodnessWitness> {
    let m = c.len() as u32 + 1;
    // p_j is the coefficient of T^j in T^m - Σ c_i T^i
    let signs: Vec<Sign> = c.iter().map(|ci| (-ci).sign().ok()).collect::<Option<_>>()?;
    let l0 = signs.iter().position(|s| *s != Sign::Zero)? as u32 + 1;
    if signs[l0 as usize - 1] != Sign::Negative {
        return None;
    }
    let k0 = signs.iter().rposition(|s| *s == Sign::Negative)? as u32 + 1;
    for j in l0..m {
        let s = signs[j as usize - 1];
        let ok = if j <= k0 { s != Sign::Positive } else { s != Sign::Negative };
        if !ok {
            return None;
        }
    }
    let mut a = BTreeMap::new();
    for j in l0..m {
        let cj = &c[j as usize - 1];
        if cj.is_zero() {
            continue;
        }
        let aj = if j <= k0 { cj.clone() } else { -cj };
        a.insert(j + shift, aj);
    }
    Some(GoodnessWitness {
        x: x.clone(),
        n: m + shift,
        k: k0 + shift,
        l: l0 + shift,
        a,
    })
}

/// Dominant eigenvector of `v ↦ v · u` (u the all-ones element), by power iteration.
pub fn perron_vector(alg: &CellAlgebra, iterations: usize) -> Option<Vec<f64>> {
    let d = alg.dim();
    let ones = vec![1.0; d];
    let mut v = vec![1.0 / d as f64; d];
    for _ in 0..iterations {
        let mut next = alg.float_mult(&v, &ones);
        for (n, old) in next.iter_mut().zip(&v) {
            *n += old;
        }
        let norm = next.iter().cloned().fold(0.0, f64::max);
        if norm <= 0.0 || !norm.is_finite() {
            return None;
        }
        for n in next.iter_mut() {
            *n /= norm;
        }
        let diff = next.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = next;
        if diff < 1e-15 {
            break;
        }
    }
    v.iter().all(|x| *x > 0.0).then_some(v)
}

fn reconstruct_rational(r: f64) -> Option<(i64, i64)> {
    (1..=64i64).find_map(|q| {
        let p = (r * q as f64).round();
        ((r - p / q as f64).abs() < 1e-9).then_some((p as i64, q))
    })
}

fn reconstruct_surd(r: f64, d: i64) -> Option<(i64, i64)> {
    let root = (d as f64).sqrt();
    for b2 in -32i64..=32 {
        let a = r - (b2 as f64 / 2.0) * root;
        let a2 = (a * 2.0).round();
        if a2.abs() <= 32.0 && (a - a2 / 2.0).abs() < 1e-9 {
            return Some((a2 as i64, b2));
        }
    }
    None
}

/// Exact guesses for a float vector, normalised so that its smallest entry is 1.
pub fn reconstruct(v: &[f64]) -> Option<Vec<Scalar>> {
    let min = v.iter().cloned().fold(f64::INFINITY, f64::min);
    let ratios: Vec<f64> = v.iter().map(|x| x / min).collect();
    if let Some(fracs) = ratios.iter().map(|r| reconstruct_rational(*r)).collect::<Option<Vec<_>>>() {
        let f = Field::rationals();
        return Some(fracs.into_iter().map(|(p, q)| f.frac(p, q)).collect());
    }
    for d in [2, 3, 5] {
        let Some(pairs) = ratios.iter().map(|r| reconstruct_surd(*r, d)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let f = Field::sqrt(d).expect("d is not a square");
        let theta = f.theta().expect("quadratic field");
        return Some(
            pairs
                .into_iter()
                .map(|(a2, b2)| &f.frac(a2, 2) + &(&f.frac(b2, 2) * &theta))
                .collect(),
        );
    }
    None
}

/// Best-effort search. Any returned witness has been verified exactly.
pub fn search_goodness(alg: &CellAlgebra, opts: &SearchOptions) -> Option<GoodnessWitness> {
    if alg.dim() == 0 {
        return None;
    }
    let mut candidates = vec![ConeElement::all_ones(alg, &Field::rationals())];
    if opts.perron {
        if let Some(coeffs) = perron_vector(alg, opts.perron_iterations).and_then(|v| reconstruct(&v)) {
            if let Ok(x) = ConeElement::new(alg, coeffs) {
                candidates.push(x);
            }
        }
    }
    for x in candidates {
        let c = minimal_relation(alg, &x.coeffs);
        if c.is_empty() {
            continue;
        }
        for shift in 0..=opts.max_shift {
            let Some(w) = witness_from_relation(&x, &c, shift) else { continue };
            if verify_goodness(alg, &w).is_ok_and(|r| r.holds) {
                return Some(w);
            }
        }
    }
    None
}
