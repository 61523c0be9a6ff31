//! Diagrams as functors, commutativity checking, cones, slice categories,
//! and generic limits/colimits in arbitrary finite categories by exhaustive
//! terminal-cone search.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::category::{CategoryError, ComposeEntry, FinCategory, Morphism, RawCategory};
use crate::functor::{FinFunctor, FunctorError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UniversalError {
    #[error("enumeration budget exceeded (estimated {0})")]
    BudgetExceeded(u64),
    #[error("the diagram has no limit")]
    NoLimit,
    #[error("invalid cone: {0}")]
    InvalidCone(String),
    #[error(transparent)]
    Functor(#[from] FunctorError),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

/// A diagram: a functor from a finite shape category into an ambient one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    body: FinFunctor,
}

impl Diagram {
    pub fn new(body: FinFunctor) -> Diagram {
        Diagram { body }
    }

    pub fn shape(&self) -> &FinCategory {
        self.body.source()
    }

    pub fn ambient(&self) -> &FinCategory {
        self.body.target()
    }

    pub fn body(&self) -> &FinFunctor {
        &self.body
    }

    pub fn on_object(&self, shape_object: &str) -> &str {
        self.body.on_object(shape_object)
    }

    pub fn on_morphism(&self, shape_morphism: &str) -> &str {
        self.body.on_morphism(shape_morphism)
    }

    /// The same assignments read as a diagram of the opposite shape in the
    /// opposite ambient category.
    pub fn opposite(&self) -> Diagram {
        let body = FinFunctor::new(
            self.shape().opposite(),
            self.ambient().opposite(),
            self.body.object_map().clone(),
            self.body.morphism_map().clone(),
        )
        .expect("the opposite of a functor is a functor");
        Diagram { body }
    }
}

/// Two parallel directed paths in the shape whose image composites differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathPairWitness {
    pub from: String,
    pub to: String,
    pub left_path: Vec<String>,
    pub left_composite: String,
    pub right_path: Vec<String>,
    pub right_composite: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutesVerdict {
    pub commutes: bool,
    pub witness: Option<PathPairWitness>,
    pub paths_checked: u64,
}

/// Checks commutativity: for every ordered pair of shape objects, all
/// composites of images along directed paths of shape morphisms agree.
/// Path length is bounded by the number of shape morphisms; the sweep runs
/// as a fixpoint over (endpoints, composite) states so it terminates without
/// cycle analysis.
pub fn check_commutes(d: &Diagram) -> CommutesVerdict {
    let shape = d.shape();
    let ambient = d.ambient();
    let max_len = shape.morphisms().len();
    // State: (start shape object, end shape object, ambient composite) with a
    // representative path in (length, lex) order.
    type Key = (String, String, String);
    let mut best: HashMap<Key, Vec<String>> = HashMap::new();
    let mut queue: Vec<Key> = Vec::new();
    let mut paths_checked = 0u64;
    for m in shape.morphisms() {
        let key = (
            m.src.clone(),
            m.tgt.clone(),
            d.on_morphism(&m.name).to_string(),
        );
        paths_checked += 1;
        if !best.contains_key(&key) {
            best.insert(key.clone(), vec![m.name.clone()]);
            queue.push(key);
        }
    }
    while let Some(key) = queue.pop() {
        let path = best[&key].clone();
        if path.len() >= max_len {
            continue;
        }
        let (start, end, composite) = key;
        for m in shape.morphisms() {
            if m.src != end {
                continue;
            }
            let next = ambient
                .compose(&composite, d.on_morphism(&m.name))
                .expect("validated ambient category")
                .to_string();
            paths_checked += 1;
            let mut next_path = path.clone();
            next_path.push(m.name.clone());
            let next_key = (start.clone(), m.tgt.clone(), next);
            match best.get(&next_key) {
                Some(old)
                    if (old.len(), old.as_slice()) <= (next_path.len(), next_path.as_slice()) => {}
                _ => {
                    best.insert(next_key.clone(), next_path);
                    queue.push(next_key);
                }
            }
        }
    }
    // Group by endpoints; any pair with two distinct composites diverges.
    type Grouped = BTreeMap<(String, String), Vec<(String, Vec<String>)>>;
    let mut by_pair: Grouped = BTreeMap::new();
    for ((s, t, c), p) in best {
        by_pair.entry((s, t)).or_default().push((c, p));
    }
    for ((s, t), mut reps) in by_pair {
        if reps.len() > 1 {
            reps.sort_by(|a, b| (a.1.len(), &a.1).cmp(&(b.1.len(), &b.1)));
            let (lc, lp) = reps[0].clone();
            let (rc, rp) = reps[1].clone();
            return CommutesVerdict {
                commutes: false,
                witness: Some(PathPairWitness {
                    from: s,
                    to: t,
                    left_path: lp,
                    left_composite: lc,
                    right_path: rp,
                    right_composite: rc,
                }),
                paths_checked,
            };
        }
    }
    CommutesVerdict {
        commutes: true,
        witness: None,
        paths_checked,
    }
}

/// A cone over a diagram: a tip with one component per shape object, such
/// that every shape morphism's image closes the triangle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cone {
    pub tip: String,
    pub components: BTreeMap<String, String>,
}

impl Cone {
    pub fn name(&self) -> String {
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|(i, c)| format!("{i}:{c}"))
            .collect();
        format!("cone({};{})", self.tip, comps.join(","))
    }

    pub fn validate(&self, d: &Diagram) -> Result<(), UniversalError> {
        let ambient = d.ambient();
        for (i, c) in &self.components {
            let m = ambient
                .morphism(c)
                .ok_or_else(|| UniversalError::InvalidCone(format!("unknown morphism `{c}`")))?;
            if m.src != self.tip || m.tgt != *d.on_object(i) {
                return Err(UniversalError::InvalidCone(format!(
                    "component at `{i}` has wrong endpoints"
                )));
            }
        }
        for m in d.shape().morphisms() {
            let lhs = ambient.compose(&self.components[&m.src], d.on_morphism(&m.name));
            if lhs != Some(self.components[&m.tgt].as_str()) {
                return Err(UniversalError::InvalidCone(format!(
                    "triangle at `{}` does not commute",
                    m.name
                )));
            }
        }
        Ok(())
    }
}

/// A cocone under a diagram: a bottom with components `D(I) -> bottom`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocone {
    pub bottom: String,
    pub components: BTreeMap<String, String>,
}

/// Index-level cone data used by the exhaustive sweeps: the tip's object id
/// and one ambient morphism id per shape object position.
struct ConeIdx {
    tip: u32,
    comps: Vec<u32>,
}

/// Shared index for cone sweeps over one diagram.
struct DiagramIdx<'a> {
    amb: crate::category::CatIndex<'a>,
    /// Ambient object id of `D(I)` per shape object position.
    value_obj: Vec<u32>,
    /// (src position, tgt position, ambient id of `D(m)`) per shape morphism.
    arrows: Vec<(usize, usize, u32)>,
}

fn diagram_index<'a>(d: &'a Diagram) -> DiagramIdx<'a> {
    let amb = d.ambient().index();
    let shape_objects = d.shape().objects();
    let pos: BTreeMap<&str, usize> = shape_objects
        .iter()
        .enumerate()
        .map(|(i, o)| (o.as_str(), i))
        .collect();
    let value_obj = shape_objects
        .iter()
        .map(|i| amb.obj_id[d.on_object(i)])
        .collect();
    let arrows = d
        .shape()
        .morphisms()
        .iter()
        .map(|m| {
            (
                pos[m.src.as_str()],
                pos[m.tgt.as_str()],
                amb.mor_id[d.on_morphism(&m.name)],
            )
        })
        .collect();
    DiagramIdx {
        amb,
        value_obj,
        arrows,
    }
}

fn enumerate_cones_idx(d: &Diagram, idx: &DiagramIdx, budget: u64) -> Result<Vec<ConeIdx>, UniversalError> {
    let nobj = d.ambient().objects().len();
    let npos = idx.value_obj.len();
    let mut estimate: u64 = 0;
    for x in 0..nobj {
        let mut n: u64 = 1;
        for &v in &idx.value_obj {
            n = n.saturating_mul(idx.amb.homs[x][v as usize].len().max(1) as u64);
        }
        estimate = estimate.saturating_add(n);
    }
    if estimate > budget {
        return Err(UniversalError::BudgetExceeded(estimate));
    }
    let mut out = Vec::new();
    for x in 0..nobj {
        let candidates: Vec<&Vec<u32>> = idx
            .value_obj
            .iter()
            .map(|&v| &idx.amb.homs[x][v as usize])
            .collect();
        if candidates.iter().any(|v| v.is_empty()) && npos > 0 {
            continue;
        }
        let mut pick = vec![0usize; npos];
        loop {
            let natural = idx.arrows.iter().all(|&(s, t, m)| {
                idx.amb
                    .compose(candidates[s][pick[s]], m)
                    .map(|c| c == candidates[t][pick[t]])
                    .unwrap_or(false)
            });
            if natural {
                out.push(ConeIdx {
                    tip: x as u32,
                    comps: (0..npos).map(|k| candidates[k][pick[k]]).collect(),
                });
            }
            let mut k = npos;
            let mut done = npos == 0;
            while k > 0 {
                k -= 1;
                pick[k] += 1;
                if pick[k] < candidates[k].len() {
                    break;
                }
                pick[k] = 0;
                if k == 0 {
                    done = true;
                }
            }
            if done {
                break;
            }
        }
    }
    Ok(out)
}

/// Ambient morphism ids between the tips commuting with all components.
fn cone_morphisms_idx(idx: &DiagramIdx, alpha: &ConeIdx, beta: &ConeIdx) -> Vec<u32> {
    idx.amb.homs[alpha.tip as usize][beta.tip as usize]
        .iter()
        .copied()
        .filter(|&f| {
            (0..alpha.comps.len()).all(|i| idx.amb.compose(f, beta.comps[i]) == Some(alpha.comps[i]))
        })
        .collect()
}

fn cone_from_idx(d: &Diagram, idx: &DiagramIdx, cone: &ConeIdx) -> Cone {
    Cone {
        tip: d.ambient().objects()[cone.tip as usize].clone(),
        components: d
            .shape()
            .objects()
            .iter()
            .enumerate()
            .map(|(k, i)| (i.clone(), idx.amb.mor_name(cone.comps[k]).to_string()))
            .collect(),
    }
}

fn cone_to_idx(d: &Diagram, idx: &DiagramIdx, cone: &Cone) -> Result<ConeIdx, UniversalError> {
    cone.validate(d)?;
    let tip = idx.amb.obj_id[cone.tip.as_str()];
    let comps = d
        .shape()
        .objects()
        .iter()
        .map(|i| idx.amb.mor_id[cone.components[i].as_str()])
        .collect();
    Ok(ConeIdx { tip, comps })
}

/// Enumerates all cones over the diagram, gated by the candidate count.
pub fn enumerate_cones(d: &Diagram, budget: u64) -> Result<Vec<Cone>, UniversalError> {
    let idx = diagram_index(d);
    Ok(enumerate_cones_idx(d, &idx, budget)?
        .iter()
        .map(|c| cone_from_idx(d, &idx, c))
        .collect())
}

/// Morphisms of cones from `alpha` to `beta`: ambient maps between the tips
/// commuting with all components.
fn cone_morphisms(d: &Diagram, alpha: &Cone, beta: &Cone) -> Vec<String> {
    let ambient = d.ambient();
    ambient
        .hom(&alpha.tip, &beta.tip)
        .into_iter()
        .filter(|f| {
            d.shape().objects().iter().all(|i| {
                ambient.compose(f, &beta.components[i]) == Some(alpha.components[i].as_str())
            })
        })
        .map(|s| s.to_string())
        .collect()
}

/// The slice category over a diagram: objects are all cones, morphisms are
/// tip maps commuting with the components.
#[derive(Debug, Clone)]
pub struct MaterializedSlice {
    pub category: FinCategory,
    pub cones: BTreeMap<String, Cone>,
}

pub fn slice_category(d: &Diagram, budget: u64) -> Result<MaterializedSlice, UniversalError> {
    let cones = enumerate_cones(d, budget)?;
    let mut by_name: BTreeMap<String, Cone> = BTreeMap::new();
    for c in &cones {
        by_name.insert(c.name(), c.clone());
    }
    let mor_name = |f: &str, a: &Cone, b: &Cone| format!("{f}:{}->{}", a.name(), b.name());
    let mut morphisms = Vec::new();
    let mut underlying: BTreeMap<String, (String, String, String)> = BTreeMap::new();
    for a in &cones {
        for b in &cones {
            for f in cone_morphisms(d, a, b) {
                let name = mor_name(&f, a, b);
                morphisms.push(Morphism {
                    name: name.clone(),
                    src: a.name(),
                    tgt: b.name(),
                });
                underlying.insert(name, (f, a.name(), b.name()));
            }
        }
    }
    let identities: BTreeMap<String, String> = cones
        .iter()
        .map(|c| {
            let id = d
                .ambient()
                .identity_of(&c.tip)
                .expect("validated ambient")
                .to_string();
            (c.name(), mor_name(&id, c, c))
        })
        .collect();
    let mut compose = Vec::new();
    for (n1, (f, a, b)) in &underlying {
        for (n2, (g, b2, c)) in &underlying {
            if b == b2 {
                let fg = d
                    .ambient()
                    .compose(f, g)
                    .expect("validated ambient")
                    .to_string();
                compose.push(ComposeEntry {
                    first: n1.clone(),
                    then: n2.clone(),
                    equals: mor_name(&fg, &by_name[a], &by_name[c]),
                });
            }
        }
    }
    let raw = RawCategory {
        objects: by_name.keys().cloned().collect(),
        morphisms,
        identities,
        compose,
    };
    Ok(MaterializedSlice {
        category: FinCategory::validate(&raw)?,
        cones: by_name,
    })
}

/// Checks whether the given cone is terminal among all cones.
pub fn is_limit_cone(d: &Diagram, cone: &Cone, budget: u64) -> Result<bool, UniversalError> {
    let idx = diagram_index(d);
    let target = cone_to_idx(d, &idx, cone)?;
    let cones = enumerate_cones_idx(d, &idx, budget)?;
    Ok(cones
        .iter()
        .all(|alpha| cone_morphisms_idx(&idx, alpha, &target).len() == 1))
}

/// Checks whether the given cocone is initial, via the opposite dictionary.
pub fn is_colimit_cocone(
    d: &Diagram,
    cocone: &Cocone,
    budget: u64,
) -> Result<bool, UniversalError> {
    let op = d.opposite();
    let cone = Cone {
        tip: cocone.bottom.clone(),
        components: cocone.components.clone(),
    };
    is_limit_cone(&op, &cone, budget)
}

/// Searches for a terminal cone: one admitting exactly one mediating
/// morphism from every other cone. Returns the first in canonical order.
pub fn limit_of(d: &Diagram, budget: u64) -> Result<Option<Cone>, UniversalError> {
    let idx = diagram_index(d);
    let cones = enumerate_cones_idx(d, &idx, budget)?;
    for tau in &cones {
        let terminal = cones
            .iter()
            .all(|alpha| cone_morphisms_idx(&idx, alpha, tau).len() == 1);
        if terminal {
            return Ok(Some(cone_from_idx(d, &idx, tau)));
        }
    }
    Ok(None)
}

/// Colimit computed as the limit of the opposite diagram; component names
/// transfer verbatim under the opposite dictionary.
pub fn colimit_of(d: &Diagram, budget: u64) -> Result<Option<Cocone>, UniversalError> {
    Ok(limit_of(&d.opposite(), budget)?.map(|cone| Cocone {
        bottom: cone.tip,
        components: cone.components,
    }))
}

/// Verdict of a limit-preservation check for a functor applied to a diagram.
#[derive(Debug, Clone)]
pub struct PreservationVerdict {
    /// The limit cone in the source category.
    pub source_cone: Cone,
    /// Its image cone in the target category.
    pub image_cone: Cone,
    /// Whether the image cone satisfies the universal property of the limit
    /// of the composed diagram.
    pub preserved: bool,
    /// An independently computed limit of the composed diagram, if any.
    pub image_limit: Option<Cone>,
}

/// Checks whether `F` preserves the limit of `d`: computes `lim d`, pushes
/// the cone through `F`, and re-verifies the universal property among all
/// cones over `F ∘ d`.
pub fn check_preservation(
    f: &FinFunctor,
    d: &Diagram,
    budget: u64,
) -> Result<PreservationVerdict, UniversalError> {
    let source_cone = limit_of(d, budget)?.ok_or(UniversalError::NoLimit)?;
    let composed = Diagram::new(d.body().then(f)?);
    let image_cone = Cone {
        tip: f.on_object(&source_cone.tip).to_string(),
        components: source_cone
            .components
            .iter()
            .map(|(i, c)| (i.clone(), f.on_morphism(c).to_string()))
            .collect(),
    };
    let idx = diagram_index(&composed);
    let target = cone_to_idx(&composed, &idx, &image_cone)
        .map_err(|_| UniversalError::InvalidCone("image of a cone failed to be a cone".into()))?;
    let cones = enumerate_cones_idx(&composed, &idx, budget)?;
    let preserved = cones
        .iter()
        .all(|alpha| cone_morphisms_idx(&idx, alpha, &target).len() == 1);
    drop(cones);
    drop(idx);
    let image_limit = limit_of(&composed, budget)?;
    Ok(PreservationVerdict {
        source_cone,
        image_cone,
        preserved,
        image_limit,
    })
}
