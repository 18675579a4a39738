//! Multiplication tables of indecomposable 1-morphisms.
//!
//! A [`MultiTable`] stores, for every composable pair `(F, G)`, the multiset of
//! indecomposable summands of `F ∘ G` (apply `G` first). Entries are stored
//! verbatim and never recomputed.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Multiset of generators, keyed by generator index.
pub type Multiset = BTreeMap<usize, u64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("unknown generator `{0}`")]
    UnknownGen(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("`{f} * {g}` is not composable: target of {g} is not the source of {f}")]
    NotComposable { f: String, g: String },
    #[error("duplicate generator `{0}`")]
    DuplicateGen(String),
    #[error("duplicate product line for `{f} * {g}`")]
    DuplicateProduct { f: String, g: String },
    #[error("table has no star involution")]
    NoStar,
    #[error("invalid star map: {0}")]
    BadStar(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gen {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiTable {
    objects: Vec<String>,
    gens: Vec<Gen>,
    index: HashMap<String, usize>,
    identities: Vec<Option<usize>>,
    products: HashMap<(usize, usize), Multiset>,
    star: Option<Vec<usize>>,
}

/// One violated table invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    MissingIdentity { object: String },
    MissingProduct { f: String, g: String },
    Typing { f: String, g: String, summand: String },
    UnitLaw { identity: String, gen: String, found: String },
    Associativity { f: String, g: String, h: String, left: String, right: String },
    StarNotInvolution { gen: String },
    StarTyping { gen: String },
    StarIdentity { identity: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingIdentity { object } => write!(f, "object {object} has no identity"),
            Violation::MissingProduct { f: a, g } => write!(f, "no product line for {a} * {g}"),
            Violation::Typing { f: a, g, summand } => {
                write!(f, "summand {summand} of {a} * {g} has the wrong source or target")
            }
            Violation::UnitLaw { identity, gen, found } => {
                write!(f, "unit law fails for {identity} and {gen}: got {found}")
            }
            Violation::Associativity { f: a, g, h, left, right } => write!(
                f,
                "associativity fails for ({a}, {g}, {h}): ({a}*{g})*{h} = {left} but {a}*({g}*{h}) = {right}"
            ),
            Violation::StarNotInvolution { gen } => write!(f, "star is not an involution at {gen}"),
            Violation::StarTyping { gen } => write!(f, "star({gen}) does not reverse source and target"),
            Violation::StarIdentity { identity } => {
                write!(f, "star({identity}) is not an identity")
            }
        }
    }
}

impl MultiTable {
    pub fn new(objects: Vec<String>) -> Self {
        let n = objects.len();
        MultiTable {
            objects,
            gens: Vec::new(),
            index: HashMap::new(),
            identities: vec![None; n],
            products: HashMap::new(),
            star: None,
        }
    }

    pub fn add_gen(&mut self, name: &str, source: &str, target: &str) -> Result<usize, TableError> {
        if self.index.contains_key(name) {
            return Err(TableError::DuplicateGen(name.to_string()));
        }
        let source = self.object_index(source)?;
        let target = self.object_index(target)?;
        let id = self.gens.len();
        self.gens.push(Gen {
            name: name.to_string(),
            source,
            target,
        });
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn set_identity(&mut self, object: &str, gen: &str) -> Result<(), TableError> {
        let o = self.object_index(object)?;
        let g = self.gen_index(gen)?;
        self.identities[o] = Some(g);
        Ok(())
    }

    /// Records `F ∘ G`. Rejects duplicates and ill-typed pairs.
    pub fn set_product(&mut self, f: usize, g: usize, value: Multiset) -> Result<(), TableError> {
        if self.gens[g].target != self.gens[f].source {
            return Err(TableError::NotComposable {
                f: self.name(f).to_string(),
                g: self.name(g).to_string(),
            });
        }
        if self.products.contains_key(&(f, g)) {
            return Err(TableError::DuplicateProduct {
                f: self.name(f).to_string(),
                g: self.name(g).to_string(),
            });
        }
        let value: Multiset = value.into_iter().filter(|(_, m)| *m > 0).collect();
        self.products.insert((f, g), value);
        Ok(())
    }

    /// Overwrites `F ∘ G` without any checks.
    pub fn replace_product(&mut self, f: usize, g: usize, value: Multiset) {
        self.products.insert((f, g), value);
    }

    pub fn remove_product(&mut self, f: usize, g: usize) -> Option<Multiset> {
        self.products.remove(&(f, g))
    }

    pub fn has_product(&self, f: usize, g: usize) -> bool {
        self.products.contains_key(&(f, g))
    }

    /// Fills in omitted unit rows `id ∘ F = F` and `F ∘ id = F`.
    pub fn fill_unit_rows(&mut self) {
        for o in 0..self.objects.len() {
            let Some(id) = self.identities[o] else { continue };
            for g in 0..self.gens.len() {
                if self.gens[g].target == o && !self.products.contains_key(&(id, g)) {
                    self.products.insert((id, g), Multiset::from([(g, 1)]));
                }
                if self.gens[g].source == o && !self.products.contains_key(&(g, id)) {
                    self.products.insert((g, id), Multiset::from([(g, 1)]));
                }
            }
        }
    }

    pub fn set_star(&mut self, pairs: &[(usize, usize)]) -> Result<(), TableError> {
        let mut map = vec![usize::MAX; self.gens.len()];
        for &(a, b) in pairs {
            for (x, y) in [(a, b), (b, a)] {
                if map[x] != usize::MAX && map[x] != y {
                    return Err(TableError::BadStar(format!(
                        "{} is paired twice",
                        self.name(x)
                    )));
                }
                map[x] = y;
            }
        }
        if let Some(g) = map.iter().position(|&x| x == usize::MAX) {
            return Err(TableError::BadStar(format!("{} has no image", self.name(g))));
        }
        self.star = Some(map);
        Ok(())
    }

    /// Installs an arbitrary star map given as `star[g]`.
    pub fn set_star_map(&mut self, map: Vec<usize>) {
        assert_eq!(map.len(), self.gens.len());
        self.star = Some(map);
    }

    pub fn clear_star(&mut self) {
        self.star = None;
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    fn object_index(&self, name: &str) -> Result<usize, TableError> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| TableError::UnknownObject(name.to_string()))
    }

    pub fn gens(&self) -> &[Gen] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn name(&self, g: usize) -> &str {
        &self.gens[g].name
    }

    pub fn gen_index(&self, name: &str) -> Result<usize, TableError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| TableError::UnknownGen(name.to_string()))
    }

    pub fn identity_of(&self, object: usize) -> Option<usize> {
        self.identities[object]
    }

    pub fn is_identity(&self, g: usize) -> bool {
        self.identities.contains(&Some(g))
    }

    pub fn star(&self) -> Option<&[usize]> {
        self.star.as_deref()
    }

    pub fn composable(&self, f: usize, g: usize) -> bool {
        self.gens[g].target == self.gens[f].source
    }

    /// The stored multiset of `F ∘ G`, or an empty multiset if the pair is composable
    /// but has no line.
    pub fn product(&self, f: usize, g: usize) -> &Multiset {
        static EMPTY: Multiset = Multiset::new();
        self.products.get(&(f, g)).unwrap_or(&EMPTY)
    }

    pub fn compose(&self, f: usize, g: usize) -> Result<&Multiset, TableError> {
        if !self.composable(f, g) {
            return Err(TableError::NotComposable {
                f: self.name(f).to_string(),
                g: self.name(g).to_string(),
            });
        }
        Ok(self.product(f, g))
    }

    pub fn compose_names(&self, f: &str, g: &str) -> Result<BTreeMap<String, u64>, TableError> {
        let fi = self.gen_index(f)?;
        let gi = self.gen_index(g)?;
        Ok(self
            .compose(fi, gi)?
            .iter()
            .map(|(h, m)| (self.name(*h).to_string(), *m))
            .collect())
    }

    pub fn format_multiset(&self, m: &Multiset) -> String {
        if m.is_empty() {
            return "0".into();
        }
        m.iter()
            .map(|(g, c)| {
                if *c == 1 {
                    self.name(*g).to_string()
                } else {
                    format!("{c} {}", self.name(*g))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn compose_multiset_left(&self, m: &Multiset, h: usize) -> Multiset {
        let mut out = Multiset::new();
        for (k, c) in m {
            for (r, d) in self.product(*k, h) {
                *out.entry(*r).or_default() += c * d;
            }
        }
        out
    }

    fn compose_multiset_right(&self, f: usize, m: &Multiset) -> Multiset {
        let mut out = Multiset::new();
        for (k, c) in m {
            for (r, d) in self.product(f, *k) {
                *out.entry(*r).or_default() += c * d;
            }
        }
        out
    }

    /// Checks every table invariant; an empty list means the table is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.gens.len();
        for (o, id) in self.identities.iter().enumerate() {
            if id.is_none() {
                out.push(Violation::MissingIdentity {
                    object: self.objects[o].clone(),
                });
            }
        }
        for f in 0..n {
            for g in 0..n {
                if !self.composable(f, g) {
                    continue;
                }
                let Some(m) = self.products.get(&(f, g)) else {
                    let unit = self.is_identity(f) || self.is_identity(g);
                    if unit {
                        let (identity, gen) = if self.is_identity(f) { (f, g) } else { (g, f) };
                        out.push(Violation::UnitLaw {
                            identity: self.name(identity).to_string(),
                            gen: self.name(gen).to_string(),
                            found: "no product line".into(),
                        });
                    } else {
                        out.push(Violation::MissingProduct {
                            f: self.name(f).to_string(),
                            g: self.name(g).to_string(),
                        });
                    }
                    continue;
                };
                for h in m.keys() {
                    if self.gens[*h].source != self.gens[g].source
                        || self.gens[*h].target != self.gens[f].target
                    {
                        out.push(Violation::Typing {
                            f: self.name(f).to_string(),
                            g: self.name(g).to_string(),
                            summand: self.name(*h).to_string(),
                        });
                    }
                }
                for (identity, gen) in [(f, g), (g, f)] {
                    if self.is_identity(identity) && *m != Multiset::from([(gen, 1)]) {
                        out.push(Violation::UnitLaw {
                            identity: self.name(identity).to_string(),
                            gen: self.name(gen).to_string(),
                            found: self.format_multiset(m),
                        });
                    }
                }
            }
        }
        for f in 0..n {
            for g in 0..n {
                if !self.composable(f, g) {
                    continue;
                }
                let fg = self.product(f, g);
                for h in 0..n {
                    if !self.composable(g, h) {
                        continue;
                    }
                    let left = self.compose_multiset_left(fg, h);
                    let right = self.compose_multiset_right(f, self.product(g, h));
                    if left != right {
                        out.push(Violation::Associativity {
                            f: self.name(f).to_string(),
                            g: self.name(g).to_string(),
                            h: self.name(h).to_string(),
                            left: self.format_multiset(&left),
                            right: self.format_multiset(&right),
                        });
                    }
                }
            }
        }
        if let Some(star) = &self.star {
            for g in 0..n {
                if star[star[g]] != g {
                    out.push(Violation::StarNotInvolution {
                        gen: self.name(g).to_string(),
                    });
                }
                let (a, b) = (&self.gens[g], &self.gens[star[g]]);
                if a.source != b.target || a.target != b.source {
                    out.push(Violation::StarTyping {
                        gen: self.name(g).to_string(),
                    });
                }
                if self.is_identity(g) && !self.is_identity(star[g]) {
                    out.push(Violation::StarIdentity {
                        identity: self.name(g).to_string(),
                    });
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The group algebra of Z/2 viewed as a table: e, g with g∘g = e.
    fn z2() -> MultiTable {
        let mut t = MultiTable::new(vec!["i".into()]);
        let e = t.add_gen("e", "i", "i").unwrap();
        let g = t.add_gen("g", "i", "i").unwrap();
        t.set_identity("i", "e").unwrap();
        t.set_product(g, g, Multiset::from([(e, 1)])).unwrap();
        t.fill_unit_rows();
        t
    }

    #[test]
    fn z2_is_valid() {
        assert!(z2().validate().is_empty());
    }

    #[test]
    fn missing_unit_row_is_a_unit_violation() {
        let mut t = z2();
        t.remove_product(0, 1);
        let v = t.validate();
        assert!(v.iter().any(|x| matches!(x, Violation::UnitLaw { .. })));
    }

    #[test]
    fn duplicate_product_rejected() {
        let mut t = z2();
        assert!(matches!(
            t.set_product(1, 1, Multiset::from([(0, 1)])),
            Err(TableError::DuplicateProduct { .. })
        ));
    }

    #[test]
    fn not_composable() {
        let mut t = MultiTable::new(vec!["i".into(), "j".into()]);
        let a = t.add_gen("a", "i", "j").unwrap();
        assert!(matches!(t.compose(a, a), Err(TableError::NotComposable { .. })));
        assert!(matches!(t.gen_index("b"), Err(TableError::UnknownGen(_))));
    }

    #[test]
    fn compose_by_name() {
        let t = z2();
        assert_eq!(t.compose_names("e", "g").unwrap(), BTreeMap::from([("g".into(), 1)]));
    }
}
