//! Tables and representations for the families built from Cartan data of a
//! basic algebra `A` with primitive idempotents `e_1, …, e_n`.
//!
//! Notation: `dims[t][u] = dim e_t A e_u`, `P_s = A e_s`.
//!
//! # `C_A`
//!
//! Generators `id` and `F_st = A e_s ⊗ e_t A`. Then
//! `F_st ∘ F_uv = A e_s ⊗ (e_t A e_u) ⊗ e_v A = dims[t][u] · F_sv` and
//! `F_st · P_u = A e_s ⊗ e_t A e_u = dims[t][u] · P_s`.
//!
//! # `D_A`
//!
//! `E = A ⊗ A^op`; `E`-modules are `A`-`A` bimodules and the projective
//! `E`-modules are `P_(s,t) = A e_s ⊗ e_t A`. Generators:
//!
//! * `G_ab = (A e_a ⊗ e_b A) ⊠ A^op`, acting by `X ↦ A e_a ⊗ e_b X`;
//! * `H_ab = A ⊠ (A^op e_a ⊗ e_b A^op)`, acting by `X ↦ X e_b ⊗ e_a A`;
//! * `F_(s,t),(u,v) = E e_(s,t) ⊗ e_(u,v) E`, acting by `X ↦ P_(s,t) ⊗ e_u X e_v`.
//!
//! Since `e_b A^op e_c = e_c A e_b`, the two factors compose as
//!
//! * `G_ab ∘ G_cd = dims[b][c] · G_ad`
//! * `H_ab ∘ H_cd = dims[c][b] · H_ad`
//! * `G_ab ∘ H_cd = H_cd ∘ G_ab = F_(a,c),(b,d)`
//!
//! and `F_(s,t),(u,v) = G_su ⊠ H_tv`, so every product is computed factorwise:
//!
//! * `G_ab ∘ F_(s,t),(u,v) = dims[b][s] · F_(a,t),(u,v)`
//! * `F_(s,t),(u,v) ∘ G_ab = dims[u][a] · F_(s,t),(b,v)`
//! * `H_ab ∘ F_(s,t),(u,v) = dims[t][b] · F_(s,a),(u,v)`
//! * `F_(s,t),(u,v) ∘ H_ab = dims[a][v] · F_(s,t),(u,b)`
//! * `F_(s,t),(u,v) ∘ F_(x,y),(z,w) = dims[u][x] · dims[y][v] · F_(s,t),(z,w)`
//!
//! On projectives: `G_ab · P_(s,t) = dims[b][s] · P_(a,t)`,
//! `H_ab · P_(s,t) = dims[t][b] · P_(s,a)` and
//! `F_(s,t),(u,v) · P_(x,y) = dims[u][x] · dims[y][v] · P_(s,t)`.
//!
//! For a bimodule `M` with `D[u][v] = dim e_u M e_v`, projective on both sides,
//! `F_(s,t),(u,v) · M = D[u][v] · P_(s,t)`. Writing `e_b M = ⊕_t (e_t A)^{k[b][t]}`
//! and `M e_b = ⊕_s (A e_s)^{m[s][b]}` gives `D = k · dims` and `D = dims · m`, so
//! `G_ab · M = ⊕_t k[b][t] · P_(a,t)` and `H_ab · M = ⊕_s m[s][b] · P_(s,a)`.

use std::sync::Arc;

use thiserror::Error;

use crate::linalg::{solve, Matrix};
use crate::multitable::{MultiTable, Multiset};
use crate::scalar::Field;
use crate::tworep::{ses_split, BasisLabel, IMatrix, RepError, RepMatrices, SesDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("invalid Cartan data: {0}")]
    Cartan(String),
    #[error("invalid dimension vector: {0}")]
    DimVector(String),
    #[error("invalid bipartite graph: {0}")]
    Graph(String),
    #[error("module data is not realisable: {0}")]
    Module(String),
    #[error(transparent)]
    Rep(#[from] RepError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    pub dims: Vec<Vec<u64>>,
    /// Caller-asserted.
    pub selfinjective: bool,
}

impl CartanData {
    pub fn new(dims: Vec<Vec<u64>>, selfinjective: bool) -> Result<Self, BuildError> {
        let n = dims.len();
        if n == 0 {
            return Err(BuildError::Cartan("no idempotents".into()));
        }
        if dims.iter().any(|r| r.len() != n) {
            return Err(BuildError::Cartan(format!("matrix must be {n}x{n}")));
        }
        if let Some(t) = (0..n).find(|&t| dims[t][t] == 0) {
            return Err(BuildError::Cartan(format!("diagonal entry {} is zero", t + 1)));
        }
        Ok(CartanData { dims, selfinjective })
    }

    pub fn n(&self) -> usize {
        self.dims.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| self.dims[i][j] == self.dims[j][i]))
    }

    fn matrix(&self, field: &Field) -> Matrix {
        let rows: Vec<Vec<i64>> = self.dims.iter().map(|r| r.iter().map(|x| *x as i64).collect()).collect();
        Matrix::from_ints(field, &rows)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureInput {
    pub cartan: CartanData,
    /// `dimvec[t] = dim e_t M`.
    pub dimvec: Vec<u64>,
    pub label: String,
}

impl SignatureInput {
    pub fn new(cartan: CartanData, dimvec: Vec<u64>, label: &str) -> Result<Self, BuildError> {
        if dimvec.len() != cartan.n() {
            return Err(BuildError::DimVector(format!(
                "length {} does not match n = {}",
                dimvec.len(),
                cartan.n()
            )));
        }
        if dimvec.iter().all(|x| *x == 0) {
            return Err(BuildError::DimVector("vector is zero".into()));
        }
        Ok(SignatureInput {
            cartan,
            dimvec,
            label: label.to_string(),
        })
    }

    /// Indices `t` (0-based) with `dim e_t M > 0`.
    pub fn signature(&self) -> Vec<usize> {
        (0..self.dimvec.len()).filter(|&t| self.dimvec[t] > 0).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteEdge {
    pub source: usize,
    pub sink: usize,
    /// 1-based idempotent index.
    pub eta: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteSpec {
    pub sources: Vec<String>,
    pub sinks: Vec<String>,
    pub edges: Vec<BipartiteEdge>,
}

impl BipartiteSpec {
    pub fn validate(&self, n: usize) -> Result<(), BuildError> {
        for e in &self.edges {
            if e.eta == 0 || e.eta > n {
                return Err(BuildError::Graph(format!("eta = {} is outside 1..{n}", e.eta)));
            }
            if e.source >= self.sources.len() || e.sink >= self.sinks.len() {
                return Err(BuildError::Graph("edge endpoint out of range".into()));
            }
        }
        for a in &self.edges {
            for b in &self.edges {
                if a.sink == b.sink && a.eta != b.eta {
                    return Err(BuildError::Graph(format!(
                        "edges at {} carry different eta values",
                        self.sinks[a.sink]
                    )));
                }
            }
        }
        Ok(())
    }

    /// The eta value at each sink, if it has an edge.
    pub fn sink_eta(&self, w: usize) -> Option<usize> {
        self.edges.iter().find(|e| e.sink == w).map(|e| e.eta)
    }
}

fn pair_name(prefix: &str, n: usize, a: usize, b: usize) -> String {
    if n <= 9 {
        format!("{prefix}{}{}", a + 1, b + 1)
    } else {
        format!("{prefix}{}_{}", a + 1, b + 1)
    }
}

/// Name of `F_st` (0-based indices) in the table built by [`build_ca_table`].
pub fn ca_gen_name(n: usize, s: usize, t: usize) -> String {
    pair_name("F", n, s, t)
}

/// `C_A`: one object, `id` and `F_st`. A star `F_st ↔ F_ts` is installed when `dims`
/// is symmetric.
pub fn build_ca_table(c: &CartanData) -> MultiTable {
    let n = c.n();
    let mut t = MultiTable::new(vec!["i".into()]);
    t.add_gen("id", "i", "i").expect("fresh name");
    t.set_identity("i", "id").expect("known names");
    let idx = |s: usize, u: usize| 1 + s * n + u;
    for s in 0..n {
        for u in 0..n {
            t.add_gen(&ca_gen_name(n, s, u), "i", "i").expect("fresh name");
        }
    }
    for s in 0..n {
        for tt in 0..n {
            for u in 0..n {
                for v in 0..n {
                    let m = c.dims[tt][u];
                    let value = if m > 0 { Multiset::from([(idx(s, v), m)]) } else { Multiset::new() };
                    t.set_product(idx(s, tt), idx(u, v), value).expect("fresh pair");
                }
            }
        }
    }
    t.fill_unit_rows();
    if c.is_symmetric() {
        let mut map = vec![0; 1 + n * n];
        for s in 0..n {
            for u in 0..n {
                map[idx(s, u)] = idx(u, s);
            }
        }
        t.set_star_map(map);
    }
    t
}

/// Action on the indecomposable projectives `P_1, …, P_n`: row `s` of `[F_st]`
/// is row `t` of `dims`.
pub fn build_cell_rep(c: &CartanData) -> RepMatrices {
    let n = c.n();
    let table = Arc::new(build_ca_table(c));
    let basis = (0..n)
        .map(|s| BasisLabel {
            name: format!("P{}", s + 1),
            object: 0,
        })
        .collect();
    let mut r = RepMatrices::new(table, basis);
    for s in 0..n {
        for t in 0..n {
            let g = 1 + s * n + t;
            let m = r.mat_mut(g);
            for u in 0..n {
                m.set(s, u, c.dims[t][u]);
            }
        }
    }
    r
}

/// Projectives extended by a module `M` with `F_st · M = dimvec[t] · P_s`, split
/// with the projectives as the sub-basis.
pub fn build_signature_extension(s: &SignatureInput) -> Result<(RepMatrices, SesDecomposition), BuildError> {
    let c = &s.cartan;
    let n = c.n();
    let cell = build_cell_rep(c);
    let mut basis = cell.basis().to_vec();
    basis.push(BasisLabel {
        name: s.label.clone(),
        object: 0,
    });
    let mut r = RepMatrices::new(cell.table().clone(), basis);
    for g in 1..=n * n {
        let (ps, pt) = ((g - 1) / n, (g - 1) % n);
        let src = cell.mat(g);
        let m = r.mat_mut(g);
        for y in 0..n {
            for x in 0..n {
                m.set(y, x, src.get(y, x));
            }
        }
        m.set(ps, n, s.dimvec[pt]);
    }
    let ses = ses_split(&r, &(0..n).collect::<Vec<_>>())?;
    Ok((r, ses))
}

/// `∪_{t ∈ S(M)} L_t` where `L_t = {F_st : s}`, read off the dimension vector alone.
pub fn signature_theta(s: &SignatureInput) -> Vec<usize> {
    let n = s.cartan.n();
    let mut out: Vec<usize> = s
        .signature()
        .into_iter()
        .flat_map(|t| (0..n).map(move |row| 1 + row * n + t))
        .collect();
    out.sort_unstable();
    out
}

/// Objects `M_v` for sources and `X_{j,w}` for sinks, with
/// `F_st · X_{u,w} = dims[t][u] · X_{s,w}` and `F_jt · M_v = Σ X_{j,w}` over the
/// edges `(v, w)` with `eta = t`.
pub fn build_bipartite_rep(c: &CartanData, g: &BipartiteSpec) -> Result<RepMatrices, BuildError> {
    g.validate(c.n())?;
    let n = c.n();
    let table = Arc::new(build_ca_table(c));
    let nv = g.sources.len();
    let mut basis: Vec<BasisLabel> = g
        .sources
        .iter()
        .map(|v| BasisLabel {
            name: format!("M_{v}"),
            object: 0,
        })
        .collect();
    for w in &g.sinks {
        for j in 0..n {
            basis.push(BasisLabel {
                name: format!("X{}_{w}", j + 1),
                object: 0,
            });
        }
    }
    let x = |j: usize, w: usize| nv + w * n + j;
    let mut r = RepMatrices::new(table, basis);
    for s in 0..n {
        for t in 0..n {
            let m = r.mat_mut(1 + s * n + t);
            for w in 0..g.sinks.len() {
                for u in 0..n {
                    m.set(x(s, w), x(u, w), c.dims[t][u]);
                }
            }
            for e in &g.edges {
                if e.eta - 1 == t {
                    let y = x(s, e.sink);
                    m.set(y, e.source, m.get(y, e.source) + 1);
                }
            }
        }
    }
    Ok(r)
}

/// Index layout of the `D_A` table.
#[derive(Debug, Clone, Copy)]
pub struct DaLayout {
    pub n: usize,
}

impl DaLayout {
    pub fn id(&self) -> usize {
        0
    }

    pub fn g(&self, a: usize, b: usize) -> usize {
        1 + a * self.n + b
    }

    pub fn h(&self, a: usize, b: usize) -> usize {
        1 + self.n * self.n + a * self.n + b
    }

    pub fn f(&self, s: usize, t: usize, u: usize, v: usize) -> usize {
        let n = self.n;
        1 + 2 * n * n + ((s * n + t) * n + u) * n + v
    }

    pub fn len(&self) -> usize {
        let n = self.n;
        1 + 2 * n * n + n * n * n * n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Factorwise description: `(left, right)` with `None` for an identity factor.
    fn factors(&self, g: usize) -> (Option<(usize, usize)>, Option<(usize, usize)>) {
        let n = self.n;
        let nn = n * n;
        if g == 0 {
            (None, None)
        } else if g <= nn {
            let k = g - 1;
            (Some((k / n, k % n)), None)
        } else if g <= 2 * nn {
            let k = g - 1 - nn;
            (None, Some((k / n, k % n)))
        } else {
            let k = g - 1 - 2 * nn;
            let (st, uv) = (k / nn, k % nn);
            let (s, t, u, v) = (st / n, st % n, uv / n, uv % n);
            // F_(s,t),(u,v) = G_su ⊠ H_tv
            (Some((s, u)), Some((t, v)))
        }
    }

    fn from_factors(&self, l: Option<(usize, usize)>, r: Option<(usize, usize)>) -> usize {
        match (l, r) {
            (None, None) => 0,
            (Some((a, b)), None) => self.g(a, b),
            (None, Some((a, b))) => self.h(a, b),
            (Some((s, u)), Some((t, v))) => self.f(s, t, u, v),
        }
    }
}

pub fn build_da_table(c: &CartanData) -> MultiTable {
    let n = c.n();
    let lay = DaLayout { n };
    let mut t = MultiTable::new(vec!["i".into()]);
    let mut names = vec![String::new(); lay.len()];
    names[0] = "id".into();
    for a in 0..n {
        for b in 0..n {
            names[lay.g(a, b)] = pair_name("G", n, a, b);
            names[lay.h(a, b)] = pair_name("H", n, a, b);
            for u in 0..n {
                for v in 0..n {
                    names[lay.f(a, b, u, v)] = format!("{}_{}", pair_name("F", n, a, b), pair_name("", n, u, v));
                }
            }
        }
    }
    for name in &names {
        t.add_gen(name, "i", "i").expect("fresh name");
    }
    t.set_identity("i", "id").expect("known names");
    for x in 0..lay.len() {
        for y in 0..lay.len() {
            let (lx, rx) = lay.factors(x);
            let (ly, ry) = lay.factors(y);
            let mut coef = 1u64;
            let l = match (lx, ly) {
                (None, o) | (o, None) => o,
                (Some((a, b)), Some((cc, d))) => {
                    coef *= c.dims[b][cc];
                    Some((a, d))
                }
            };
            let r = match (rx, ry) {
                (None, o) | (o, None) => o,
                (Some((a, b)), Some((cc, d))) => {
                    coef *= c.dims[cc][b];
                    Some((a, d))
                }
            };
            let value = if coef > 0 {
                Multiset::from([(lay.from_factors(l, r), coef)])
            } else {
                Multiset::new()
            };
            t.set_product(x, y, value).expect("fresh pair");
        }
    }
    if c.is_symmetric() {
        let map = (0..lay.len())
            .map(|g| {
                let (l, r) = lay.factors(g);
                lay.from_factors(l.map(|(a, b)| (b, a)), r.map(|(a, b)| (b, a)))
            })
            .collect();
        t.set_star_map(map);
    }
    t
}

/// Integer solution of `lhs · X = rhs` (`left = true`) or `X · lhs = rhs`.
fn integral_quotient(c: &CartanData, d: &[Vec<u64>], left: bool) -> Result<Vec<Vec<u64>>, BuildError> {
    let f = Field::rationals();
    let n = c.n();
    let dims = c.matrix(&f);
    let a = if left { dims } else { dims.transpose() };
    let mut out = vec![vec![0u64; n]; n];
    for col in 0..n {
        // left:  dims · m[.][col] = D[.][col]
        // right: k[col][.] · dims = D[col][.]  ⇔  dimsᵀ · k[col]ᵀ = D[col]ᵀ
        let rhs: Vec<_> = (0..n)
            .map(|i| f.int(if left { d[i][col] } else { d[col][i] } as i64))
            .collect();
        let x = solve(&a, &rhs).ok_or_else(|| BuildError::Module("dimension data is inconsistent with dims".into()))?;
        if a.rank() < n {
            return Err(BuildError::Module("dims is singular".into()));
        }
        for (i, v) in x.iter().enumerate() {
            let r = v.to_rational().expect("rational field");
            if !r.is_integer() || r < num_rational::BigRational::from_integer(0.into()) {
                return Err(BuildError::Module(format!(
                    "one side of M is not a sum of indecomposable projectives (multiplicity {r})"
                )));
            }
            let val: u64 = r.to_integer().try_into().map_err(|_| BuildError::Module("multiplicity overflow".into()))?;
            if left {
                out[i][col] = val;
            } else {
                out[col][i] = val;
            }
        }
    }
    Ok(out)
}

/// Projective `E`-modules `P_(s,t)` extended by a bimodule `M` with
/// `D[u][v] = dim e_u M e_v`, split with the projectives as the sub-basis.
pub fn build_da_extension_rep(
    c: &CartanData,
    d: &[Vec<u64>],
) -> Result<(RepMatrices, SesDecomposition), BuildError> {
    let n = c.n();
    if d.len() != n || d.iter().any(|r| r.len() != n) {
        return Err(BuildError::Module(format!("D must be {n}x{n}")));
    }
    if d.iter().flatten().all(|x| *x == 0) {
        return Err(BuildError::Module("D is zero".into()));
    }
    let k = integral_quotient(c, d, false)?;
    let m = integral_quotient(c, d, true)?;
    let lay = DaLayout { n };
    let table = Arc::new(build_da_table(c));
    let p = |s: usize, t: usize| s * n + t;
    let mdx = n * n;
    let mut basis: Vec<BasisLabel> = (0..n * n)
        .map(|i| BasisLabel {
            name: format!("P{}_{}", i / n + 1, i % n + 1),
            object: 0,
        })
        .collect();
    basis.push(BasisLabel {
        name: "M".into(),
        object: 0,
    });
    let mut r = RepMatrices::new(table, basis);
    let add = |mat: &mut IMatrix, y: usize, x: usize, v: u64| {
        let cur = mat.get(y, x);
        mat.set(y, x, cur + v);
    };
    for a in 0..n {
        for b in 0..n {
            let gm = r.mat_mut(lay.g(a, b));
            for s in 0..n {
                for t in 0..n {
                    add(gm, p(a, t), p(s, t), c.dims[b][s]);
                }
                add(gm, p(a, s), mdx, k[b][s]);
            }
            let hm = r.mat_mut(lay.h(a, b));
            for s in 0..n {
                for t in 0..n {
                    add(hm, p(s, a), p(s, t), c.dims[t][b]);
                }
                add(hm, p(s, a), mdx, m[s][b]);
            }
        }
    }
    for s in 0..n {
        for t in 0..n {
            for u in 0..n {
                for v in 0..n {
                    let fm = r.mat_mut(lay.f(s, t, u, v));
                    for x in 0..n {
                        for y in 0..n {
                            add(fm, p(s, t), p(x, y), c.dims[u][x] * c.dims[y][v]);
                        }
                    }
                    add(fm, p(s, t), mdx, d[u][v]);
                }
            }
        }
    }
    let ses = ses_split(&r, &(0..n * n).collect::<Vec<_>>())?;
    Ok((r, ses))
}
