//! Finite sets and total functions, with explicit limits and colimits.
//!
//! Limits are computed as the filtered subset of the product over all
//! diagram objects; colimits as the quotient of the disjoint union by the
//! equivalence generated by one-step images, closed via union-find. Both
//! results are re-verified against their universal property by brute force
//! over cones whose tips are the diagram's own sets.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::category::{CategoryError, ComposeEntry, FinCategory, Morphism, RawCategory};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FinSetError {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("element `{0}` has no image")]
    NotTotal(String),
    #[error("image `{1}` of `{0}` lies outside the codomain")]
    ImageOutsideCodomain(String, String),
    #[error("functions do not compose: {0}")]
    Composition(String),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("enumeration budget exceeded (estimated {0})")]
    BudgetExceeded(u64),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

/// A finite set of named elements, kept in canonical sorted order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FinSet {
    elements: Vec<String>,
}

impl FinSet {
    pub fn new(mut elements: Vec<String>) -> Result<FinSet, FinSetError> {
        elements.sort();
        for w in elements.windows(2) {
            if w[0] == w[1] {
                return Err(FinSetError::DuplicateElement(w[0].clone()));
            }
        }
        Ok(FinSet { elements })
    }

    pub fn empty() -> FinSet {
        FinSet { elements: vec![] }
    }

    /// The canonical one-element set.
    pub fn singleton() -> FinSet {
        FinSet { elements: vec!["*".into()] }
    }

    /// `{x1, .., xn}`.
    pub fn range(prefix: &str, n: usize) -> FinSet {
        FinSet::new((0..n).map(|i| format!("{prefix}{i}")).collect()).unwrap()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: &str) -> bool {
        self.elements.binary_search_by(|x| x.as_str().cmp(e)).is_ok()
    }

    pub fn position(&self, e: &str) -> Option<usize> {
        self.elements.binary_search_by(|x| x.as_str().cmp(e)).ok()
    }

    /// Canonical display name, also used as the object name in fragment
    /// categories: `{a,b,c}`.
    pub fn name(&self) -> String {
        format!("{{{}}}", self.elements.join(","))
    }
}

/// A total function between finite sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawFunction", into = "RawFunction")]
pub struct FinFunction {
    domain: FinSet,
    codomain: FinSet,
    map: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawFunction {
    domain: Vec<String>,
    codomain: Vec<String>,
    map: BTreeMap<String, String>,
}

impl TryFrom<RawFunction> for FinFunction {
    type Error = FinSetError;
    fn try_from(raw: RawFunction) -> Result<Self, Self::Error> {
        FinFunction::new(FinSet::new(raw.domain)?, FinSet::new(raw.codomain)?, &raw.map)
    }
}

impl From<FinFunction> for RawFunction {
    fn from(f: FinFunction) -> RawFunction {
        RawFunction {
            domain: f.domain.elements.clone(),
            codomain: f.codomain.elements.clone(),
            map: f.mapping(),
        }
    }
}

impl FinFunction {
    pub fn new(
        domain: FinSet,
        codomain: FinSet,
        mapping: &BTreeMap<String, String>,
    ) -> Result<FinFunction, FinSetError> {
        let mut map = Vec::with_capacity(domain.len());
        for x in domain.elements() {
            let y = mapping
                .get(x)
                .ok_or_else(|| FinSetError::NotTotal(x.clone()))?;
            let i = codomain
                .position(y)
                .ok_or_else(|| FinSetError::ImageOutsideCodomain(x.clone(), y.clone()))?;
            map.push(i as u32);
        }
        Ok(FinFunction { domain, codomain, map })
    }

    pub(crate) fn from_indices(domain: FinSet, codomain: FinSet, map: Vec<u32>) -> FinFunction {
        debug_assert_eq!(map.len(), domain.len());
        debug_assert!(map.iter().all(|&i| (i as usize) < codomain.len().max(1)));
        FinFunction { domain, codomain, map }
    }

    pub fn identity(set: &FinSet) -> FinFunction {
        FinFunction {
            domain: set.clone(),
            codomain: set.clone(),
            map: (0..set.len() as u32).collect(),
        }
    }

    /// The function defined by `x -> f(x)` names.
    pub fn from_fn(
        domain: &FinSet,
        codomain: &FinSet,
        f: impl Fn(&str) -> String,
    ) -> Result<FinFunction, FinSetError> {
        let mapping: BTreeMap<String, String> = domain
            .elements()
            .iter()
            .map(|x| (x.clone(), f(x)))
            .collect();
        FinFunction::new(domain.clone(), codomain.clone(), &mapping)
    }

    pub fn domain(&self) -> &FinSet {
        &self.domain
    }

    pub fn codomain(&self) -> &FinSet {
        &self.codomain
    }

    pub fn apply(&self, x: &str) -> Option<&str> {
        let i = self.domain.position(x)?;
        Some(&self.codomain.elements()[self.map[i] as usize])
    }

    pub fn mapping(&self) -> BTreeMap<String, String> {
        self.domain
            .elements()
            .iter()
            .zip(&self.map)
            .map(|(x, &i)| (x.clone(), self.codomain.elements()[i as usize].clone()))
            .collect()
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &FinFunction) -> Result<FinFunction, FinSetError> {
        if self.codomain != then.domain {
            return Err(FinSetError::Composition(format!(
                "codomain {} differs from domain {}",
                self.codomain.name(),
                then.domain.name()
            )));
        }
        Ok(FinFunction {
            domain: self.domain.clone(),
            codomain: then.codomain.clone(),
            map: self.map.iter().map(|&i| then.map[i as usize]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.len()];
        self.map.iter().all(|&i| {
            let hit = seen[i as usize];
            seen[i as usize] = true;
            !hit
        })
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.codomain.len()];
        for &i in &self.map {
            seen[i as usize] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.len() == self.codomain.len() && self.is_injective()
    }

    /// Canonical name used as a morphism name in fragment categories:
    /// `{a,b}=>{x}[x;x]` lists images in domain order.
    pub fn name(&self) -> String {
        let images: Vec<&str> = self
            .map
            .iter()
            .map(|&i| self.codomain.elements()[i as usize].as_str())
            .collect();
        format!(
            "{}=>{}[{}]",
            self.domain.name(),
            self.codomain.name(),
            images.join(";")
        )
    }
}

/// Enumerates all total functions `domain -> codomain` in canonical order.
pub fn all_functions(domain: &FinSet, codomain: &FinSet) -> Vec<FinFunction> {
    let n = domain.len();
    let m = codomain.len();
    if n == 0 {
        return vec![FinFunction::from_indices(domain.clone(), codomain.clone(), vec![])];
    }
    if m == 0 {
        return vec![];
    }
    let total = (m as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    let mut out = Vec::with_capacity(total.min(1 << 20) as usize);
    let mut odo = vec![0u32; n];
    loop {
        out.push(FinFunction::from_indices(
            domain.clone(),
            codomain.clone(),
            odo.clone(),
        ));
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            odo[k] += 1;
            if (odo[k] as usize) < m {
                break;
            }
            odo[k] = 0;
        }
    }
}

/// A materialized full subcategory of finite sets: the given objects and all
/// functions between them.
#[derive(Debug, Clone)]
pub struct FragmentCategory {
    pub category: FinCategory,
    pub sets: BTreeMap<String, FinSet>,
    pub functions: BTreeMap<String, FinFunction>,
}

impl FragmentCategory {
    pub fn function(&self, morphism: &str) -> Option<&FinFunction> {
        self.functions.get(morphism)
    }

    pub fn morphism_name_of(&self, f: &FinFunction) -> String {
        f.name()
    }
}

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Builds the fragment category on the given sets (deduplicated). Gated by
/// the total number of functions.
pub fn fragment_category(sets: &[FinSet]) -> Result<FragmentCategory, FinSetError> {
    fragment_category_with_budget(sets, DEFAULT_BUDGET)
}

pub fn fragment_category_with_budget(
    sets: &[FinSet],
    budget: u64,
) -> Result<FragmentCategory, FinSetError> {
    let mut dedup: BTreeMap<String, FinSet> = BTreeMap::new();
    for s in sets {
        dedup.insert(s.name(), s.clone());
    }
    let mut estimate: u64 = 0;
    for a in dedup.values() {
        for b in dedup.values() {
            let count = (b.len() as u64).checked_pow(a.len() as u32).unwrap_or(u64::MAX);
            estimate = estimate.saturating_add(count);
        }
    }
    if estimate > budget {
        return Err(FinSetError::BudgetExceeded(estimate));
    }
    let mut functions: BTreeMap<String, FinFunction> = BTreeMap::new();
    let mut morphisms = Vec::new();
    for a in dedup.values() {
        for b in dedup.values() {
            for f in all_functions(a, b) {
                let name = f.name();
                morphisms.push(Morphism {
                    name: name.clone(),
                    src: a.name(),
                    tgt: b.name(),
                });
                functions.insert(name, f);
            }
        }
    }
    let identities: BTreeMap<String, String> = dedup
        .values()
        .map(|s| (s.name(), FinFunction::identity(s).name()))
        .collect();
    let mut compose = Vec::new();
    for f in functions.values() {
        for g in functions.values() {
            if f.codomain() == g.domain() {
                compose.push(ComposeEntry {
                    first: f.name(),
                    then: g.name(),
                    equals: f.then(g)?.name(),
                });
            }
        }
    }
    let raw = RawCategory {
        objects: dedup.keys().cloned().collect(),
        morphisms,
        identities,
        compose,
    };
    let category = FinCategory::validate(&raw)?;
    Ok(FragmentCategory {
        category,
        sets: dedup,
        functions,
    })
}

/// A diagram of finite sets: a functor from a finite shape category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetDiagram {
    shape: FinCategory,
    sets: BTreeMap<String, FinSet>,
    maps: BTreeMap<String, FinFunction>,
}

impl SetDiagram {
    pub fn new(
        shape: FinCategory,
        sets: BTreeMap<String, FinSet>,
        maps: BTreeMap<String, FinFunction>,
    ) -> Result<SetDiagram, FinSetError> {
        for x in shape.objects() {
            if !sets.contains_key(x) {
                return Err(FinSetError::InvalidDiagram(format!("object `{x}` has no set")));
            }
        }
        for m in shape.morphisms() {
            let f = maps
                .get(&m.name)
                .ok_or_else(|| FinSetError::InvalidDiagram(format!("morphism `{}` has no map", m.name)))?;
            if f.domain() != &sets[&m.src] || f.codomain() != &sets[&m.tgt] {
                return Err(FinSetError::InvalidDiagram(format!(
                    "map for `{}` has wrong endpoints",
                    m.name
                )));
            }
        }
        // Functoriality: identities and composition.
        for x in shape.objects() {
            let id = shape.identity_of(x).expect("validated shape");
            if maps[id] != FinFunction::identity(&sets[x]) {
                return Err(FinSetError::InvalidDiagram(format!(
                    "identity of `{x}` is not the identity function"
                )));
            }
        }
        for ((f, g), h) in shape.compose_table() {
            let lhs = maps[f].then(&maps[g])?;
            if lhs != maps[h] {
                return Err(FinSetError::InvalidDiagram(format!(
                    "composition not respected on ({f}, {g})"
                )));
            }
        }
        Ok(SetDiagram { shape, sets, maps })
    }

    pub fn shape(&self) -> &FinCategory {
        &self.shape
    }

    pub fn set(&self, shape_object: &str) -> &FinSet {
        &self.sets[shape_object]
    }

    pub fn map(&self, shape_morphism: &str) -> &FinFunction {
        &self.maps[shape_morphism]
    }

    pub fn sets(&self) -> &BTreeMap<String, FinSet> {
        &self.sets
    }

    pub fn maps(&self) -> &BTreeMap<String, FinFunction> {
        &self.maps
    }

    /// Discrete diagram on the given sets; shape objects are `d0, d1, ...`.
    pub fn discrete(sets: &[FinSet]) -> SetDiagram {
        let names: Vec<String> = (0..sets.len()).map(|i| format!("d{i}")).collect();
        let shape = FinCategory::discrete(&names);
        let set_map = names.iter().cloned().zip(sets.iter().cloned()).collect();
        let maps = names
            .iter()
            .zip(sets)
            .map(|(n, s)| (format!("id_{n}"), FinFunction::identity(s)))
            .collect();
        SetDiagram::new(shape, set_map, maps).expect("discrete diagram is valid")
    }

    /// The empty diagram.
    pub fn empty() -> SetDiagram {
        SetDiagram::new(FinCategory::empty(), BTreeMap::new(), BTreeMap::new())
            .expect("empty diagram is valid")
    }

    /// Parallel pair f, g : A -> B over the shape `X ⇉ Y`.
    pub fn parallel_pair(f: &FinFunction, g: &FinFunction) -> Result<SetDiagram, FinSetError> {
        if f.domain() != g.domain() || f.codomain() != g.codomain() {
            return Err(FinSetError::ArityMismatch(
                "parallel pair needs a common domain and codomain".into(),
            ));
        }
        let shape = FinCategory::parallel_pair();
        let sets = BTreeMap::from([
            ("X".to_string(), f.domain().clone()),
            ("Y".to_string(), f.codomain().clone()),
        ]);
        let maps = BTreeMap::from([
            ("id_X".to_string(), FinFunction::identity(f.domain())),
            ("id_Y".to_string(), FinFunction::identity(f.codomain())),
            ("a".to_string(), f.clone()),
            ("b".to_string(), g.clone()),
        ]);
        SetDiagram::new(shape, sets, maps)
    }

    /// Cospan f : A -> C <- B : g over the shape `L -> M <- R`.
    pub fn cospan(f: &FinFunction, g: &FinFunction) -> Result<SetDiagram, FinSetError> {
        if f.codomain() != g.codomain() {
            return Err(FinSetError::ArityMismatch("cospan needs a common codomain".into()));
        }
        let shape = FinCategory::cospan();
        let sets = BTreeMap::from([
            ("L".to_string(), f.domain().clone()),
            ("M".to_string(), f.codomain().clone()),
            ("R".to_string(), g.domain().clone()),
        ]);
        let maps = BTreeMap::from([
            ("id_L".to_string(), FinFunction::identity(f.domain())),
            ("id_M".to_string(), FinFunction::identity(f.codomain())),
            ("id_R".to_string(), FinFunction::identity(g.domain())),
            ("l".to_string(), f.clone()),
            ("r".to_string(), g.clone()),
        ]);
        SetDiagram::new(shape, sets, maps)
    }

    /// Span B <- A -> C over the shape `L <- M -> R` (f: A -> B, g: A -> C).
    pub fn span(f: &FinFunction, g: &FinFunction) -> Result<SetDiagram, FinSetError> {
        if f.domain() != g.domain() {
            return Err(FinSetError::ArityMismatch("span needs a common domain".into()));
        }
        let shape = FinCategory::span();
        let sets = BTreeMap::from([
            ("L".to_string(), f.codomain().clone()),
            ("M".to_string(), f.domain().clone()),
            ("R".to_string(), g.codomain().clone()),
        ]);
        let maps = BTreeMap::from([
            ("id_L".to_string(), FinFunction::identity(f.codomain())),
            ("id_M".to_string(), FinFunction::identity(f.domain())),
            ("id_R".to_string(), FinFunction::identity(g.codomain())),
            ("l".to_string(), f.clone()),
            ("r".to_string(), g.clone()),
        ]);
        SetDiagram::new(shape, sets, maps)
    }
}

/// A limit cone over a set diagram: tip plus one leg per shape object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCone {
    pub tip: FinSet,
    pub legs: BTreeMap<String, FinFunction>,
}

/// A colimit cocone: bottom plus one leg per shape object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCocone {
    pub bottom: FinSet,
    pub legs: BTreeMap<String, FinFunction>,
}

fn tuple_name(parts: &[&str]) -> String {
    format!("({})", parts.join(","))
}

/// Explicit limit: the subset of the product over all diagram objects cut
/// out by the compatibility equations, with restricted projections.
pub fn finset_limit(d: &SetDiagram) -> Result<SetCone, FinSetError> {
    let objects: Vec<&String> = d.shape().objects().iter().collect();
    // Enumerate tuples of the product in canonical order and filter.
    let sizes: Vec<usize> = objects.iter().map(|o| d.set(o).len()).collect();
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    if sizes.iter().all(|&s| s > 0) || objects.is_empty() {
        let mut odo = vec![0usize; objects.len()];
        'outer: loop {
            let ok = d.shape().morphisms().iter().all(|m| {
                let i = objects.iter().position(|o| **o == m.src).unwrap();
                let j = objects.iter().position(|o| **o == m.tgt).unwrap();
                let x = &d.set(&m.src).elements()[odo[i]];
                d.map(&m.name).apply(x) == Some(&d.set(&m.tgt).elements()[odo[j]])
            });
            if ok {
                tuples.push(odo.clone());
            }
            let mut k = objects.len();
            loop {
                if k == 0 {
                    break 'outer;
                }
                k -= 1;
                odo[k] += 1;
                if odo[k] < sizes[k] {
                    break;
                }
                odo[k] = 0;
            }
        }
    }
    let names: Vec<String> = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t
                .iter()
                .enumerate()
                .map(|(i, &e)| d.set(objects[i]).elements()[e].as_str())
                .collect();
            tuple_name(&parts)
        })
        .collect();
    let tip = FinSet::new(names.clone())?;
    let mut legs = BTreeMap::new();
    for (i, o) in objects.iter().enumerate() {
        let mapping: BTreeMap<String, String> = names
            .iter()
            .zip(&tuples)
            .map(|(n, t)| (n.clone(), d.set(o).elements()[t[i]].clone()))
            .collect();
        legs.insert((*o).clone(), FinFunction::new(tip.clone(), d.set(o).clone(), &mapping)?);
    }
    let cone = SetCone { tip, legs };
    verify_limit_cone(d, &cone)?;
    Ok(cone)
}

/// Checks that the candidate is a cone and satisfies the universal property
/// against every cone whose tip is one of the diagram's sets.
fn verify_limit_cone(d: &SetDiagram, cone: &SetCone) -> Result<(), FinSetError> {
    for m in d.shape().morphisms() {
        let via = cone.legs[&m.src].then(d.map(&m.name))?;
        if via != cone.legs[&m.tgt] {
            return Err(FinSetError::InvalidDiagram(format!(
                "candidate legs do not commute with `{}`",
                m.name
            )));
        }
    }
    for x in d.sets().values() {
        for alpha in enumerate_cones(d, x, DEFAULT_BUDGET)? {
            let mediating: Vec<FinFunction> = all_functions(x, &cone.tip)
                .into_iter()
                .filter(|u| {
                    d.shape()
                        .objects()
                        .iter()
                        .all(|o| u.then(&cone.legs[o]).map(|c| c == alpha[o]).unwrap_or(false))
                })
                .collect();
            if mediating.len() != 1 {
                return Err(FinSetError::InvalidDiagram(format!(
                    "universal property fails for a cone with tip {} ({} mediating maps)",
                    x.name(),
                    mediating.len()
                )));
            }
        }
    }
    Ok(())
}

/// All cones over `d` with the given tip, as leg families.
pub fn enumerate_cones(
    d: &SetDiagram,
    tip: &FinSet,
    budget: u64,
) -> Result<Vec<BTreeMap<String, FinFunction>>, FinSetError> {
    let objects = d.shape().objects();
    let mut estimate: u64 = 1;
    for o in objects {
        let c = (d.set(o).len() as u64)
            .checked_pow(tip.len() as u32)
            .unwrap_or(u64::MAX);
        estimate = estimate.saturating_mul(c.max(1));
    }
    if estimate > budget {
        return Err(FinSetError::BudgetExceeded(estimate));
    }
    let per_object: Vec<Vec<FinFunction>> = objects.iter().map(|o| all_functions(tip, d.set(o))).collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; objects.len()];
    if per_object.iter().any(|v| v.is_empty()) && !objects.is_empty() {
        return Ok(out);
    }
    loop {
        let family: BTreeMap<String, FinFunction> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.clone(), per_object[i][pick[i]].clone()))
            .collect();
        let natural = d.shape().morphisms().iter().all(|m| {
            family[&m.src]
                .then(d.map(&m.name))
                .map(|c| c == family[&m.tgt])
                .unwrap_or(false)
        });
        if natural {
            out.push(family);
        }
        let mut k = objects.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            pick[k] += 1;
            if pick[k] < per_object[k].len() {
                break;
            }
            pick[k] = 0;
        }
    }
}

fn tag(element: &str, object: &str) -> String {
    format!("{element}@{object}")
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }

    fn unite(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

/// Explicit colimit: disjoint union of the diagram sets, quotiented by the
/// equivalence generated by `x ~ D(m)(x)`, classes named by their least
/// representative.
pub fn finset_colimit(d: &SetDiagram) -> Result<SetCocone, FinSetError> {
    let mut tagged: Vec<String> = Vec::new();
    let mut offsets: BTreeMap<&str, usize> = BTreeMap::new();
    for o in d.shape().objects() {
        offsets.insert(o, tagged.len());
        for e in d.set(o).elements() {
            tagged.push(tag(e, o));
        }
    }
    let mut uf = UnionFind::new(tagged.len());
    for m in d.shape().morphisms() {
        let f = d.map(&m.name);
        for (i, x) in d.set(&m.src).elements().iter().enumerate() {
            let y = f.apply(x).expect("total");
            let j = d.set(&m.tgt).position(y).expect("image in codomain");
            uf.unite(offsets[m.src.as_str()] + i, offsets[m.tgt.as_str()] + j);
        }
    }
    // Name each class by its least tagged representative.
    let mut class_name: BTreeMap<usize, String> = BTreeMap::new();
    for (i, t) in tagged.iter().enumerate() {
        let root = uf.find(i);
        class_name
            .entry(root)
            .and_modify(|cur| {
                if t < cur {
                    *cur = t.clone();
                }
            })
            .or_insert_with(|| t.clone());
    }
    let bottom = FinSet::new(class_name.values().map(|r| format!("[{r}]")).collect())?;
    let mut legs = BTreeMap::new();
    for o in d.shape().objects() {
        let mapping: BTreeMap<String, String> = d
            .set(o)
            .elements()
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let root = uf.find(offsets[o.as_str()] + i);
                (e.clone(), format!("[{}]", class_name[&root]))
            })
            .collect();
        legs.insert(o.clone(), FinFunction::new(d.set(o).clone(), bottom.clone(), &mapping)?);
    }
    let cocone = SetCocone { bottom, legs };
    verify_colimit_cocone(d, &cocone)?;
    Ok(cocone)
}

fn verify_colimit_cocone(d: &SetDiagram, cocone: &SetCocone) -> Result<(), FinSetError> {
    for m in d.shape().morphisms() {
        let via = d.map(&m.name).then(&cocone.legs[&m.tgt])?;
        if via != cocone.legs[&m.src] {
            return Err(FinSetError::InvalidDiagram(format!(
                "candidate legs do not commute with `{}`",
                m.name
            )));
        }
    }
    // Initiality against cocones with bottoms among the diagram's sets.
    for x in d.sets().values() {
        for beta in enumerate_cocones(d, x, DEFAULT_BUDGET)? {
            let mediating: Vec<FinFunction> = all_functions(&cocone.bottom, x)
                .into_iter()
                .filter(|u| {
                    d.shape()
                        .objects()
                        .iter()
                        .all(|o| cocone.legs[o].then(u).map(|c| c == beta[o]).unwrap_or(false))
                })
                .collect();
            if mediating.len() != 1 {
                return Err(FinSetError::InvalidDiagram(format!(
                    "couniversal property fails for a cocone with bottom {} ({} mediating maps)",
                    x.name(),
                    mediating.len()
                )));
            }
        }
    }
    Ok(())
}

/// All cocones under `d` with the given bottom.
pub fn enumerate_cocones(
    d: &SetDiagram,
    bottom: &FinSet,
    budget: u64,
) -> Result<Vec<BTreeMap<String, FinFunction>>, FinSetError> {
    let objects = d.shape().objects();
    let mut estimate: u64 = 1;
    for o in objects {
        let c = (bottom.len() as u64)
            .checked_pow(d.set(o).len() as u32)
            .unwrap_or(u64::MAX);
        estimate = estimate.saturating_mul(c.max(1));
    }
    if estimate > budget {
        return Err(FinSetError::BudgetExceeded(estimate));
    }
    let per_object: Vec<Vec<FinFunction>> = objects
        .iter()
        .map(|o| all_functions(d.set(o), bottom))
        .collect();
    let mut out = Vec::new();
    if per_object.iter().any(|v| v.is_empty()) && !objects.is_empty() {
        return Ok(out);
    }
    let mut pick = vec![0usize; objects.len()];
    loop {
        let family: BTreeMap<String, FinFunction> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.clone(), per_object[i][pick[i]].clone()))
            .collect();
        let natural = d.shape().morphisms().iter().all(|m| {
            d.map(&m.name)
                .then(&family[&m.tgt])
                .map(|c| c == family[&m.src])
                .unwrap_or(false)
        });
        if natural {
            out.push(family);
        }
        let mut k = objects.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            pick[k] += 1;
            if pick[k] < per_object[k].len() {
                break;
            }
            pick[k] = 0;
        }
    }
}

/// A named universal construction request.
#[derive(Debug, Clone)]
pub enum ShapeRequest {
    Product(FinSet, FinSet),
    Coproduct(FinSet, FinSet),
    Equalizer(FinFunction, FinFunction),
    Coequalizer(FinFunction, FinFunction),
    Pullback(FinFunction, FinFunction),
    Pushout(FinFunction, FinFunction),
    Terminal,
    Initial,
}

#[derive(Debug, Clone)]
pub enum ShapeResult {
    Cone(SetCone),
    Cocone(SetCocone),
}

/// Builds the diagram for the requested shape and delegates to the explicit
/// limit/colimit construction.
pub fn construct_shape(req: &ShapeRequest) -> Result<ShapeResult, FinSetError> {
    match req {
        ShapeRequest::Product(a, b) => Ok(ShapeResult::Cone(finset_limit(&SetDiagram::discrete(
            &[a.clone(), b.clone()],
        ))?)),
        ShapeRequest::Coproduct(a, b) => Ok(ShapeResult::Cocone(finset_colimit(
            &SetDiagram::discrete(&[a.clone(), b.clone()]),
        )?)),
        ShapeRequest::Equalizer(f, g) => Ok(ShapeResult::Cone(finset_limit(
            &SetDiagram::parallel_pair(f, g)?,
        )?)),
        ShapeRequest::Coequalizer(f, g) => Ok(ShapeResult::Cocone(finset_colimit(
            &SetDiagram::parallel_pair(f, g)?,
        )?)),
        ShapeRequest::Pullback(f, g) => Ok(ShapeResult::Cone(finset_limit(&SetDiagram::cospan(
            f, g,
        )?)?)),
        ShapeRequest::Pushout(f, g) => Ok(ShapeResult::Cocone(finset_colimit(
            &SetDiagram::span(f, g)?,
        )?)),
        ShapeRequest::Terminal => Ok(ShapeResult::Cone(finset_limit(&SetDiagram::empty())?)),
        ShapeRequest::Initial => Ok(ShapeResult::Cocone(finset_colimit(&SetDiagram::empty())?)),
    }
}

/// The kernel pair of `f`: the two legs of the pullback of `f` with itself.
pub fn kernel_pair(f: &FinFunction) -> Result<(FinFunction, FinFunction), FinSetError> {
    let cone = finset_limit(&SetDiagram::cospan(f, f)?)?;
    Ok((cone.legs["L"].clone(), cone.legs["R"].clone()))
}
