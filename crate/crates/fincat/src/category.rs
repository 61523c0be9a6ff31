//! Finite categories as validated composition tables.
//!
//! A [`FinCategory`] stores objects, named morphisms with endpoints, the
//! identity assignment, and the full composition table over composable pairs.
//! Every axiom of the definition is re-derived by brute force at validation
//! time; the first violation in canonical (lexicographic) order is reported
//! with its witness. Identities are ordinary entries in the morphism list so
//! that functors and diagrams treat them uniformly.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::monoid::{MonoidError, MonoidTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("name `{0}` does not resolve")]
    UnknownName(String),
    #[error("object `{0}` has no identity morphism")]
    MissingIdentity(String),
    #[error("composable pair ({0}, {1}) is missing from the composition table")]
    MissingComposite(String, String),
    #[error("pair ({0}, {1}) is not composable but has a table entry")]
    SpuriousComposite(String, String),
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("unitality fails at `{0}`")]
    UnitalityViolation(String),
    #[error("associativity fails on ({0}, {1}, {2})")]
    AssociativityViolation(String, String, String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("not a monoid: {0}")]
    NotAMonoid(#[from] MonoidError),
}

/// A named morphism with its endpoints.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Morphism {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

/// One entry of the composition table: `then ∘ first = equals`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ComposeEntry {
    pub first: String,
    pub then: String,
    pub equals: String,
}

/// Unchecked category data, the parse target of the category file schema.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub identities: BTreeMap<String, String>,
    pub compose: Vec<ComposeEntry>,
}

/// A validated finite category. Immutable after validation; all operations
/// are pure functions, so values can be shared freely across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: BTreeMap<String, String>,
    compose: BTreeMap<(String, String), String>,
}

/// Dense index over a category used by the exhaustive sweeps. Morphism and
/// object ids are positions in the canonical order.
pub(crate) struct CatIndex<'a> {
    pub cat: &'a FinCategory,
    pub obj_id: BTreeMap<&'a str, u32>,
    pub mor_id: BTreeMap<&'a str, u32>,
    pub src: Vec<u32>,
    pub tgt: Vec<u32>,
    pub identity: Vec<u32>,
    /// comp[f * n + g] = id of g∘f (tgt f = src g), u32::MAX when undefined.
    comp: Vec<u32>,
    /// homs[x][y] = canonical list of morphism ids x -> y.
    pub homs: Vec<Vec<Vec<u32>>>,
}

impl<'a> CatIndex<'a> {
    pub fn compose(&self, first: u32, then: u32) -> Option<u32> {
        let n = self.mor_id.len();
        let v = self.comp[first as usize * n + then as usize];
        (v != u32::MAX).then_some(v)
    }

    pub fn mor_name(&self, id: u32) -> &'a str {
        &self.cat.morphisms[id as usize].name
    }
}

impl FinCategory {
    /// Validates raw category data against every axiom, reporting the first
    /// violation in canonical order.
    pub fn validate(raw: &RawCategory) -> Result<FinCategory, CategoryError> {
        let mut objects = raw.objects.clone();
        objects.sort();
        for w in objects.windows(2) {
            if w[0] == w[1] {
                return Err(CategoryError::DuplicateName(w[0].clone()));
            }
        }
        let mut morphisms = raw.morphisms.clone();
        morphisms.sort_by(|a, b| a.name.cmp(&b.name));
        for w in morphisms.windows(2) {
            if w[0].name == w[1].name {
                return Err(CategoryError::DuplicateName(w[0].name.clone()));
            }
        }
        for m in &morphisms {
            if !objects.contains(&m.src) {
                return Err(CategoryError::UnknownName(m.src.clone()));
            }
            if !objects.contains(&m.tgt) {
                return Err(CategoryError::UnknownName(m.tgt.clone()));
            }
        }
        let mut compose = BTreeMap::new();
        for e in &raw.compose {
            if compose
                .insert((e.first.clone(), e.then.clone()), e.equals.clone())
                .is_some()
            {
                return Err(CategoryError::DuplicateName(format!(
                    "compose entry ({}, {})",
                    e.first, e.then
                )));
            }
        }
        let cat = FinCategory {
            objects,
            morphisms,
            identity: raw.identities.clone(),
            compose,
        };
        cat.check_axioms()?;
        Ok(cat)
    }

    fn check_axioms(&self) -> Result<(), CategoryError> {
        let mor_id: BTreeMap<&str, usize> = self
            .morphisms
            .iter()
            .enumerate()
            .map(|(i, m)| (m.name.as_str(), i))
            .collect();
        // Identities exist, resolve, and have matching endpoints.
        for x in &self.objects {
            let id_name = self
                .identity
                .get(x)
                .ok_or_else(|| CategoryError::MissingIdentity(x.clone()))?;
            let &i = mor_id
                .get(id_name.as_str())
                .ok_or_else(|| CategoryError::UnknownName(id_name.clone()))?;
            let m = &self.morphisms[i];
            if &m.src != x || &m.tgt != x {
                return Err(CategoryError::EndpointMismatch(format!(
                    "identity `{}` of `{}` has endpoints {} -> {}",
                    id_name, x, m.src, m.tgt
                )));
            }
        }
        for x in self.identity.keys() {
            if !self.objects.contains(x) {
                return Err(CategoryError::UnknownName(x.clone()));
            }
        }
        // Totality on composable pairs, and nothing else.
        for f in &self.morphisms {
            for g in &self.morphisms {
                let key = (f.name.clone(), g.name.clone());
                match (f.tgt == g.src, self.compose.get(&key)) {
                    (true, None) => {
                        return Err(CategoryError::MissingComposite(
                            f.name.clone(),
                            g.name.clone(),
                        ))
                    }
                    (false, Some(_)) => {
                        return Err(CategoryError::SpuriousComposite(
                            f.name.clone(),
                            g.name.clone(),
                        ))
                    }
                    _ => {}
                }
            }
        }
        // Composite endpoints.
        for ((f, g), h) in &self.compose {
            let fm = &self.morphisms[*mor_id
                .get(f.as_str())
                .ok_or_else(|| CategoryError::UnknownName(f.clone()))?];
            let gm = &self.morphisms[*mor_id
                .get(g.as_str())
                .ok_or_else(|| CategoryError::UnknownName(g.clone()))?];
            let hm = &self.morphisms[*mor_id
                .get(h.as_str())
                .ok_or_else(|| CategoryError::UnknownName(h.clone()))?];
            if hm.src != fm.src || hm.tgt != gm.tgt {
                return Err(CategoryError::EndpointMismatch(format!(
                    "composite `{}` of ({}, {}) has endpoints {} -> {}, expected {} -> {}",
                    h, f, g, hm.src, hm.tgt, fm.src, gm.tgt
                )));
            }
        }
        let idx = self.index();
        // Unitality.
        for (fi, f) in self.morphisms.iter().enumerate() {
            let id_src = idx.identity[idx.obj_id[f.src.as_str()] as usize];
            let id_tgt = idx.identity[idx.obj_id[f.tgt.as_str()] as usize];
            let left = idx.compose(id_src, fi as u32);
            let right = idx.compose(fi as u32, id_tgt);
            if left != Some(fi as u32) || right != Some(fi as u32) {
                return Err(CategoryError::UnitalityViolation(f.name.clone()));
            }
        }
        // Associativity over all composable triples.
        let n = self.morphisms.len() as u32;
        let mut out_of: Vec<Vec<u32>> = vec![Vec::new(); self.objects.len()];
        for h in 0..n {
            out_of[idx.src[h as usize] as usize].push(h);
        }
        for f in 0..n {
            for g in 0..n {
                let Some(gf) = idx.compose(f, g) else { continue };
                for &h in &out_of[idx.tgt[g as usize] as usize] {
                    let lhs = idx.compose(gf, h);
                    let rhs = idx.compose(g, h).and_then(|hg| idx.compose(f, hg));
                    if lhs != rhs || lhs.is_none() {
                        return Err(CategoryError::AssociativityViolation(
                            self.morphisms[f as usize].name.clone(),
                            self.morphisms[g as usize].name.clone(),
                            self.morphisms[h as usize].name.clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub(crate) fn index(&self) -> CatIndex<'_> {
        let obj_id: BTreeMap<&str, u32> = self
            .objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.as_str(), i as u32))
            .collect();
        let mor_id: BTreeMap<&str, u32> = self
            .morphisms
            .iter()
            .enumerate()
            .map(|(i, m)| (m.name.as_str(), i as u32))
            .collect();
        let src: Vec<u32> = self.morphisms.iter().map(|m| obj_id[m.src.as_str()]).collect();
        let tgt: Vec<u32> = self.morphisms.iter().map(|m| obj_id[m.tgt.as_str()]).collect();
        let identity: Vec<u32> = self
            .objects
            .iter()
            .map(|x| {
                self.identity
                    .get(x)
                    .and_then(|n| mor_id.get(n.as_str()).copied())
                    .unwrap_or(u32::MAX)
            })
            .collect();
        let n = self.morphisms.len();
        let mut comp = vec![u32::MAX; n * n];
        for ((f, g), h) in &self.compose {
            if let (Some(&fi), Some(&gi), Some(&hi)) = (
                mor_id.get(f.as_str()),
                mor_id.get(g.as_str()),
                mor_id.get(h.as_str()),
            ) {
                comp[fi as usize * n + gi as usize] = hi;
            }
        }
        let mut homs = vec![vec![Vec::new(); self.objects.len()]; self.objects.len()];
        for i in 0..n {
            homs[src[i] as usize][tgt[i] as usize].push(i as u32);
        }
        CatIndex {
            cat: self,
            obj_id,
            mor_id,
            src,
            tgt,
            identity,
            comp,
            homs,
        }
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, name: &str) -> Option<&Morphism> {
        self.morphisms
            .binary_search_by(|m| m.name.as_str().cmp(name))
            .ok()
            .map(|i| &self.morphisms[i])
    }

    pub fn has_object(&self, name: &str) -> bool {
        self.objects.binary_search_by(|o| o.as_str().cmp(name)).is_ok()
    }

    pub fn identity_of(&self, object: &str) -> Option<&str> {
        self.identity.get(object).map(|s| s.as_str())
    }

    pub fn is_identity(&self, morphism: &str) -> bool {
        self.identity.values().any(|v| v == morphism)
    }

    /// The composite `then ∘ first`, when `tgt(first) = src(then)`.
    pub fn compose(&self, first: &str, then: &str) -> Option<&str> {
        self.compose
            .get(&(first.to_string(), then.to_string()))
            .map(|s| s.as_str())
    }

    /// Composes a head-to-tail sequence of morphism names; the empty
    /// sequence at `object` gives its identity.
    pub fn compose_seq(&self, object: &str, seq: &[String]) -> Option<String> {
        let mut acc = self.identity_of(object)?.to_string();
        for f in seq {
            acc = self.compose(&acc, f)?.to_string();
        }
        Some(acc)
    }

    /// Morphisms from `x` to `y` in canonical order.
    pub fn hom(&self, x: &str, y: &str) -> Vec<&str> {
        self.morphisms
            .iter()
            .filter(|m| m.src == x && m.tgt == y)
            .map(|m| m.name.as_str())
            .collect()
    }

    pub fn compose_table(&self) -> &BTreeMap<(String, String), String> {
        &self.compose
    }

    pub fn to_raw(&self) -> RawCategory {
        RawCategory {
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            identities: self.identity.clone(),
            compose: self
                .compose
                .iter()
                .map(|((f, g), h)| ComposeEntry {
                    first: f.clone(),
                    then: g.clone(),
                    equals: h.clone(),
                })
                .collect(),
        }
    }

    /// The opposite category: same names, endpoints swapped, composition
    /// transposed. Applying it twice returns a structurally equal category.
    pub fn opposite(&self) -> FinCategory {
        FinCategory {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| Morphism {
                    name: m.name.clone(),
                    src: m.tgt.clone(),
                    tgt: m.src.clone(),
                })
                .collect(),
            identity: self.identity.clone(),
            compose: self
                .compose
                .iter()
                .map(|((f, g), h)| ((g.clone(), f.clone()), h.clone()))
                .collect(),
        }
    }

    /// The empty category.
    pub fn empty() -> FinCategory {
        FinCategory {
            objects: vec![],
            morphisms: vec![],
            identity: BTreeMap::new(),
            compose: BTreeMap::new(),
        }
    }

    /// The terminal category: one object, one (identity) morphism.
    pub fn terminal() -> FinCategory {
        FinCategory::discrete(&["*".to_string()])
    }

    /// The discrete category on the given objects: identities only.
    pub fn discrete(objects: &[String]) -> FinCategory {
        let raw = RawCategory {
            objects: objects.to_vec(),
            morphisms: objects
                .iter()
                .map(|x| Morphism {
                    name: format!("id_{x}"),
                    src: x.clone(),
                    tgt: x.clone(),
                })
                .collect(),
            identities: objects.iter().map(|x| (x.clone(), format!("id_{x}"))).collect(),
            compose: objects
                .iter()
                .map(|x| ComposeEntry {
                    first: format!("id_{x}"),
                    then: format!("id_{x}"),
                    equals: format!("id_{x}"),
                })
                .collect(),
        };
        FinCategory::validate(&raw).expect("discrete category is valid")
    }

    /// The walking arrow: two objects and one morphism `f: A -> B`.
    pub fn walking_arrow() -> FinCategory {
        let raw = RawCategory {
            objects: vec!["A".into(), "B".into()],
            morphisms: vec![
                Morphism { name: "id_A".into(), src: "A".into(), tgt: "A".into() },
                Morphism { name: "id_B".into(), src: "B".into(), tgt: "B".into() },
                Morphism { name: "f".into(), src: "A".into(), tgt: "B".into() },
            ],
            identities: BTreeMap::from([
                ("A".to_string(), "id_A".to_string()),
                ("B".to_string(), "id_B".to_string()),
            ]),
            compose: vec![
                ComposeEntry { first: "id_A".into(), then: "id_A".into(), equals: "id_A".into() },
                ComposeEntry { first: "id_B".into(), then: "id_B".into(), equals: "id_B".into() },
                ComposeEntry { first: "id_A".into(), then: "f".into(), equals: "f".into() },
                ComposeEntry { first: "f".into(), then: "id_B".into(), equals: "f".into() },
            ],
        };
        FinCategory::validate(&raw).expect("walking arrow is valid")
    }

    /// Two objects with a pair of parallel arrows `a, b: X -> Y`.
    pub fn parallel_pair() -> FinCategory {
        let raw = RawCategory {
            objects: vec!["X".into(), "Y".into()],
            morphisms: vec![
                Morphism { name: "id_X".into(), src: "X".into(), tgt: "X".into() },
                Morphism { name: "id_Y".into(), src: "Y".into(), tgt: "Y".into() },
                Morphism { name: "a".into(), src: "X".into(), tgt: "Y".into() },
                Morphism { name: "b".into(), src: "X".into(), tgt: "Y".into() },
            ],
            identities: BTreeMap::from([
                ("X".to_string(), "id_X".to_string()),
                ("Y".to_string(), "id_Y".to_string()),
            ]),
            compose: vec![
                ComposeEntry { first: "id_X".into(), then: "id_X".into(), equals: "id_X".into() },
                ComposeEntry { first: "id_Y".into(), then: "id_Y".into(), equals: "id_Y".into() },
                ComposeEntry { first: "id_X".into(), then: "a".into(), equals: "a".into() },
                ComposeEntry { first: "a".into(), then: "id_Y".into(), equals: "a".into() },
                ComposeEntry { first: "id_X".into(), then: "b".into(), equals: "b".into() },
                ComposeEntry { first: "b".into(), then: "id_Y".into(), equals: "b".into() },
            ],
        };
        FinCategory::validate(&raw).expect("parallel pair is valid")
    }

    /// Cospan shape `L -> M <- R` with arrows `l` and `r`.
    pub fn cospan() -> FinCategory {
        let raw = RawCategory {
            objects: vec!["L".into(), "M".into(), "R".into()],
            morphisms: vec![
                Morphism { name: "id_L".into(), src: "L".into(), tgt: "L".into() },
                Morphism { name: "id_M".into(), src: "M".into(), tgt: "M".into() },
                Morphism { name: "id_R".into(), src: "R".into(), tgt: "R".into() },
                Morphism { name: "l".into(), src: "L".into(), tgt: "M".into() },
                Morphism { name: "r".into(), src: "R".into(), tgt: "M".into() },
            ],
            identities: BTreeMap::from([
                ("L".to_string(), "id_L".to_string()),
                ("M".to_string(), "id_M".to_string()),
                ("R".to_string(), "id_R".to_string()),
            ]),
            compose: vec![
                ComposeEntry { first: "id_L".into(), then: "id_L".into(), equals: "id_L".into() },
                ComposeEntry { first: "id_M".into(), then: "id_M".into(), equals: "id_M".into() },
                ComposeEntry { first: "id_R".into(), then: "id_R".into(), equals: "id_R".into() },
                ComposeEntry { first: "id_L".into(), then: "l".into(), equals: "l".into() },
                ComposeEntry { first: "l".into(), then: "id_M".into(), equals: "l".into() },
                ComposeEntry { first: "id_R".into(), then: "r".into(), equals: "r".into() },
                ComposeEntry { first: "r".into(), then: "id_M".into(), equals: "r".into() },
            ],
        };
        FinCategory::validate(&raw).expect("cospan is valid")
    }

    /// Span shape `L <- M -> R`, the opposite of the cospan.
    pub fn span() -> FinCategory {
        FinCategory::cospan().opposite()
    }

    /// Chain x -> y -> z freely generated: three objects, arrows `e1`, `e2`
    /// and their composite `e2.e1`.
    pub fn chain3() -> FinCategory {
        let raw = RawCategory {
            objects: vec!["x".into(), "y".into(), "z".into()],
            morphisms: vec![
                Morphism { name: "id_x".into(), src: "x".into(), tgt: "x".into() },
                Morphism { name: "id_y".into(), src: "y".into(), tgt: "y".into() },
                Morphism { name: "id_z".into(), src: "z".into(), tgt: "z".into() },
                Morphism { name: "e1".into(), src: "x".into(), tgt: "y".into() },
                Morphism { name: "e2".into(), src: "y".into(), tgt: "z".into() },
                Morphism { name: "e2.e1".into(), src: "x".into(), tgt: "z".into() },
            ],
            identities: BTreeMap::from([
                ("x".to_string(), "id_x".to_string()),
                ("y".to_string(), "id_y".to_string()),
                ("z".to_string(), "id_z".to_string()),
            ]),
            compose: vec![
                ComposeEntry { first: "id_x".into(), then: "id_x".into(), equals: "id_x".into() },
                ComposeEntry { first: "id_y".into(), then: "id_y".into(), equals: "id_y".into() },
                ComposeEntry { first: "id_z".into(), then: "id_z".into(), equals: "id_z".into() },
                ComposeEntry { first: "id_x".into(), then: "e1".into(), equals: "e1".into() },
                ComposeEntry { first: "e1".into(), then: "id_y".into(), equals: "e1".into() },
                ComposeEntry { first: "id_y".into(), then: "e2".into(), equals: "e2".into() },
                ComposeEntry { first: "e2".into(), then: "id_z".into(), equals: "e2".into() },
                ComposeEntry { first: "id_x".into(), then: "e2.e1".into(), equals: "e2.e1".into() },
                ComposeEntry { first: "e2.e1".into(), then: "id_z".into(), equals: "e2.e1".into() },
                ComposeEntry { first: "e1".into(), then: "e2".into(), equals: "e2.e1".into() },
            ],
        };
        FinCategory::validate(&raw).expect("chain is valid")
    }

    /// The commutative square: four corners, two paths forced equal to one
    /// diagonal morphism.
    pub fn commutative_square() -> FinCategory {
        let mor = |name: &str, src: &str, tgt: &str| Morphism {
            name: name.into(),
            src: src.into(),
            tgt: tgt.into(),
        };
        let ce = |first: &str, then: &str, equals: &str| ComposeEntry {
            first: first.into(),
            then: then.into(),
            equals: equals.into(),
        };
        let raw = RawCategory {
            objects: vec!["NE".into(), "NW".into(), "SE".into(), "SW".into()],
            morphisms: vec![
                mor("id_NW", "NW", "NW"),
                mor("id_NE", "NE", "NE"),
                mor("id_SW", "SW", "SW"),
                mor("id_SE", "SE", "SE"),
                mor("top", "NW", "NE"),
                mor("left", "NW", "SW"),
                mor("right", "NE", "SE"),
                mor("bottom", "SW", "SE"),
                mor("diag", "NW", "SE"),
            ],
            identities: BTreeMap::from([
                ("NW".to_string(), "id_NW".to_string()),
                ("NE".to_string(), "id_NE".to_string()),
                ("SW".to_string(), "id_SW".to_string()),
                ("SE".to_string(), "id_SE".to_string()),
            ]),
            compose: vec![
                ce("id_NW", "id_NW", "id_NW"),
                ce("id_NE", "id_NE", "id_NE"),
                ce("id_SW", "id_SW", "id_SW"),
                ce("id_SE", "id_SE", "id_SE"),
                ce("id_NW", "top", "top"),
                ce("top", "id_NE", "top"),
                ce("id_NW", "left", "left"),
                ce("left", "id_SW", "left"),
                ce("id_NE", "right", "right"),
                ce("right", "id_SE", "right"),
                ce("id_SW", "bottom", "bottom"),
                ce("bottom", "id_SE", "bottom"),
                ce("id_NW", "diag", "diag"),
                ce("diag", "id_SE", "diag"),
                ce("top", "right", "diag"),
                ce("left", "bottom", "diag"),
            ],
        };
        FinCategory::validate(&raw).expect("commutative square is valid")
    }
}

/// The delooping of a monoid: one object, one endomorphism per element,
/// composition given by the multiplication table.
pub fn delooping(monoid: &MonoidTable) -> Result<FinCategory, CategoryError> {
    // Re-derive the monoid axioms before building the table.
    let checked = MonoidTable::new(
        monoid.elements().to_vec(),
        monoid.unit().to_string(),
        monoid
            .elements()
            .iter()
            .map(|a| {
                (
                    a.clone(),
                    monoid
                        .elements()
                        .iter()
                        .map(|b| (b.clone(), monoid.mul(a, b).to_string()))
                        .collect(),
                )
            })
            .collect(),
    )?;
    let mut compose = Vec::new();
    for f in checked.elements() {
        for g in checked.elements() {
            // g ∘ f is "g after f": the monoid product g·f.
            compose.push(ComposeEntry {
                first: f.clone(),
                then: g.clone(),
                equals: checked.mul(g, f).to_string(),
            });
        }
    }
    let raw = RawCategory {
        objects: vec!["*".into()],
        morphisms: checked
            .elements()
            .iter()
            .map(|e| Morphism {
                name: e.clone(),
                src: "*".into(),
                tgt: "*".into(),
            })
            .collect(),
        identities: BTreeMap::from([("*".to_string(), checked.unit().to_string())]),
        compose,
    };
    FinCategory::validate(&raw)
}

/// Property flags of a morphism, each established by exhaustive search, with
/// witnesses for the split/iso flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismClass {
    pub mono: bool,
    pub epi: bool,
    pub split_mono: bool,
    /// A retraction r with r ∘ f = id, when split mono.
    pub retraction: Option<String>,
    pub split_epi: bool,
    /// A section s with f ∘ s = id, when split epi.
    pub section: Option<String>,
    pub iso: bool,
    /// The two-sided inverse, when iso.
    pub inverse: Option<String>,
}

/// Classifies a morphism by brute force over all parallel pairs and all
/// witness candidates, in canonical order.
pub fn classify_morphism(cat: &FinCategory, f: &str) -> Result<MorphismClass, CategoryError> {
    let idx = cat.index();
    let &fi = idx
        .mor_id
        .get(f)
        .ok_or_else(|| CategoryError::UnknownMorphism(f.to_string()))?;
    let src = idx.src[fi as usize];
    let tgt = idx.tgt[fi as usize];

    let mut mono = true;
    'mono: for a in 0..cat.objects.len() {
        let into_src = &idx.homs[a][src as usize];
        for &u in into_src {
            for &v in into_src {
                if u != v && idx.compose(u, fi) == idx.compose(v, fi) {
                    mono = false;
                    break 'mono;
                }
            }
        }
    }
    let mut epi = true;
    'epi: for a in 0..cat.objects.len() {
        let out_tgt = &idx.homs[tgt as usize][a];
        for &u in out_tgt {
            for &v in out_tgt {
                if u != v && idx.compose(fi, u) == idx.compose(fi, v) {
                    epi = false;
                    break 'epi;
                }
            }
        }
    }
    let id_src = idx.identity[src as usize];
    let id_tgt = idx.identity[tgt as usize];
    let back = &idx.homs[tgt as usize][src as usize];
    let retraction = back
        .iter()
        .find(|&&r| idx.compose(fi, r) == Some(id_src))
        .map(|&r| idx.mor_name(r).to_string());
    let section = back
        .iter()
        .find(|&&s| idx.compose(s, fi) == Some(id_tgt))
        .map(|&s| idx.mor_name(s).to_string());
    let inverse = back
        .iter()
        .find(|&&g| idx.compose(fi, g) == Some(id_src) && idx.compose(g, fi) == Some(id_tgt))
        .map(|&g| idx.mor_name(g).to_string());
    Ok(MorphismClass {
        mono,
        epi,
        split_mono: retraction.is_some(),
        retraction,
        split_epi: section.is_some(),
        section,
        iso: inverse.is_some(),
        inverse,
    })
}

/// The wide subcategory on exactly the isomorphisms. The result is validated
/// and every morphism in it is invertible.
pub fn core_groupoid(cat: &FinCategory) -> Result<FinCategory, CategoryError> {
    let mut iso_names = Vec::new();
    for m in cat.morphisms() {
        if classify_morphism(cat, &m.name)?.iso {
            iso_names.push(m.name.clone());
        }
    }
    let keep: std::collections::BTreeSet<&str> = iso_names.iter().map(|s| s.as_str()).collect();
    let raw = RawCategory {
        objects: cat.objects().to_vec(),
        morphisms: cat
            .morphisms()
            .iter()
            .filter(|m| keep.contains(m.name.as_str()))
            .cloned()
            .collect(),
        identities: cat.identity.clone(),
        compose: cat
            .compose
            .iter()
            .filter(|((f, g), h)| {
                keep.contains(f.as_str()) && keep.contains(g.as_str()) && keep.contains(h.as_str())
            })
            .map(|((f, g), h)| ComposeEntry {
                first: f.clone(),
                then: g.clone(),
                equals: h.clone(),
            })
            .collect(),
    };
    let core = FinCategory::validate(&raw)?;
    for m in core.morphisms() {
        debug_assert!(classify_morphism(&core, &m.name)?.iso);
    }
    Ok(core)
}

/// Searches for an isomorphism of categories (bijective on objects and
/// morphisms, strictly preserving identities and composition). Brute force;
/// intended for desk-scale categories only.
pub fn find_isomorphism(
    a: &FinCategory,
    b: &FinCategory,
) -> Option<(BTreeMap<String, String>, BTreeMap<String, String>)> {
    if a.objects().len() != b.objects().len() || a.morphisms().len() != b.morphisms().len() {
        return None;
    }
    let ia = a.index();
    let ib = b.index();
    let nobj = a.objects().len();

    fn try_objects(
        a: &CatIndex,
        b: &CatIndex,
        obj_map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        pos: usize,
    ) -> Option<Vec<usize>> {
        let nobj = a.cat.objects().len();
        if pos == nobj {
            return try_morphisms(a, b, obj_map);
        }
        for cand in 0..nobj {
            if used[cand] {
                continue;
            }
            // Hom-set cardinalities must match pairwise with already-placed objects.
            let compatible = (0..=pos).all(|q| {
                let q_obj = if q == pos { cand } else { obj_map[q] };
                let p = if q == pos { pos } else { q };
                a.homs[pos][p].len() == b.homs[cand][q_obj].len()
                    && a.homs[p][pos].len() == b.homs[q_obj][cand].len()
            });
            if !compatible {
                continue;
            }
            obj_map[pos] = cand;
            used[cand] = true;
            if let Some(res) = try_objects(a, b, obj_map, used, pos + 1) {
                return Some(res);
            }
            used[cand] = false;
        }
        None
    }

    fn try_morphisms(a: &CatIndex, b: &CatIndex, obj_map: &[usize]) -> Option<Vec<usize>> {
        let n = a.cat.morphisms().len();
        let mut mor_map = vec![usize::MAX; n];
        let mut used = vec![false; b.cat.morphisms().len()];
        // Identities are forced.
        for (x, &bx) in obj_map.iter().enumerate() {
            let ia = a.identity[x] as usize;
            let ib_ = b.identity[bx] as usize;
            mor_map[ia] = ib_;
            used[ib_] = true;
        }
        fn assign(
            a: &CatIndex,
            b: &CatIndex,
            obj_map: &[usize],
            mor_map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            pos: usize,
        ) -> bool {
            let n = a.cat.morphisms().len();
            if pos == n {
                // Full composition check.
                for f in 0..n as u32 {
                    for g in 0..n as u32 {
                        if let Some(h) = a.compose(f, g) {
                            let bf = mor_map[f as usize] as u32;
                            let bg = mor_map[g as usize] as u32;
                            if b.compose(bf, bg) != Some(mor_map[h as usize] as u32) {
                                return false;
                            }
                        }
                    }
                }
                return true;
            }
            if mor_map[pos] != usize::MAX {
                return assign(a, b, obj_map, mor_map, used, pos + 1);
            }
            let want_src = obj_map[a.src[pos] as usize];
            let want_tgt = obj_map[a.tgt[pos] as usize];
            for &cand in &b.homs[want_src][want_tgt] {
                if used[cand as usize] {
                    continue;
                }
                mor_map[pos] = cand as usize;
                used[cand as usize] = true;
                // Partial composition consistency with already-placed morphisms.
                let consistent = (0..n).all(|q| {
                    if mor_map[q] == usize::MAX {
                        return true;
                    }
                    let pairs = [(pos as u32, q as u32), (q as u32, pos as u32)];
                    pairs.iter().all(|&(f, g)| match a.compose(f, g) {
                        Some(h) if mor_map[h as usize] != usize::MAX => {
                            b.compose(mor_map[f as usize] as u32, mor_map[g as usize] as u32)
                                == Some(mor_map[h as usize] as u32)
                        }
                        _ => true,
                    })
                });
                if consistent && assign(a, b, obj_map, mor_map, used, pos + 1) {
                    return true;
                }
                mor_map[pos] = usize::MAX;
                used[cand as usize] = false;
            }
            false
        }
        if assign(a, b, obj_map, &mut mor_map, &mut used, 0) {
            Some(mor_map)
        } else {
            None
        }
    }

    let mut obj_map = vec![usize::MAX; nobj];
    let mut used = vec![false; nobj];
    let mor_map = if nobj == 0 {
        Some(Vec::new())
    } else {
        try_objects(&ia, &ib, &mut obj_map, &mut used, 0)
    };
    mor_map.map(|mm| {
        let objs = a
            .objects()
            .iter()
            .enumerate()
            .map(|(i, o)| (o.clone(), b.objects()[obj_map[i]].clone()))
            .collect();
        let mors = a
            .morphisms()
            .iter()
            .enumerate()
            .map(|(i, m)| (m.name.clone(), b.morphisms()[mm[i]].name.clone()))
            .collect();
        (objs, mors)
    })
}
