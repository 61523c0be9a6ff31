//! Presheaves on finite categories, representables, exhaustive enumeration
//! of natural transformations between presheaves, and executable checks of
//! the Yoneda lemma and embedding theorem.
//!
//! A presheaf stores its value sets and restriction maps directly; the
//! contravariant functoriality axioms are re-derived at validation time.
//! Representable values use the name scheme `hom(Y,X):f` so that bijections
//! are name-stable across runs.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::category::{CategoryError, FinCategory};
use crate::finset::{all_functions, fragment_category, FinFunction, FinSet, FinSetError, FragmentCategory};
use crate::functor::{FinFunctor, FunctorError};

pub const DEFAULT_FAMILY_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum YonedaError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("invalid presheaf: {0}")]
    InvalidPresheaf(String),
    #[error("naturality square fails at `{0}`")]
    NaturalitySquareFails(String),
    #[error("enumeration budget exceeded (estimated {0})")]
    BudgetExceeded(u64),
    #[error(transparent)]
    FinSet(#[from] FinSetError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Functor(#[from] FunctorError),
}

/// A presheaf: set values on objects, restriction maps on morphisms,
/// contravariantly functorial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presheaf {
    base: FinCategory,
    values: BTreeMap<String, FinSet>,
    /// For `f : Y' -> Y` of the base, the restriction `F f : F Y -> F Y'`.
    actions: BTreeMap<String, FinFunction>,
}

impl Presheaf {
    pub fn new(
        base: FinCategory,
        values: BTreeMap<String, FinSet>,
        actions: BTreeMap<String, FinFunction>,
    ) -> Result<Presheaf, YonedaError> {
        for x in base.objects() {
            if !values.contains_key(x) {
                return Err(YonedaError::InvalidPresheaf(format!("object `{x}` has no value")));
            }
        }
        for m in base.morphisms() {
            let a = actions.get(&m.name).ok_or_else(|| {
                YonedaError::InvalidPresheaf(format!("morphism `{}` has no action", m.name))
            })?;
            if a.domain() != &values[&m.tgt] || a.codomain() != &values[&m.src] {
                return Err(YonedaError::InvalidPresheaf(format!(
                    "action of `{}` must go from F({}) to F({})",
                    m.name, m.tgt, m.src
                )));
            }
        }
        for x in base.objects() {
            let id = base.identity_of(x).expect("validated base");
            if actions[id] != FinFunction::identity(&values[x]) {
                return Err(YonedaError::InvalidPresheaf(format!(
                    "identity of `{x}` does not act as the identity"
                )));
            }
        }
        // Contravariance: F(g ∘ f) = F f ∘ F g.
        for ((f, g), h) in base.compose_table() {
            let rhs = actions[g].then(&actions[f])?;
            if rhs != actions[h] {
                return Err(YonedaError::InvalidPresheaf(format!(
                    "contravariant functoriality fails on ({f}, {g})"
                )));
            }
        }
        Ok(Presheaf {
            base,
            values,
            actions,
        })
    }

    pub fn base(&self) -> &FinCategory {
        &self.base
    }

    pub fn value(&self, object: &str) -> &FinSet {
        &self.values[object]
    }

    pub fn action(&self, morphism: &str) -> &FinFunction {
        &self.actions[morphism]
    }

    /// A constant presheaf with trivial restriction maps.
    pub fn constant(base: &FinCategory, value: &FinSet) -> Presheaf {
        let values = base
            .objects()
            .iter()
            .map(|x| (x.clone(), value.clone()))
            .collect();
        let actions = base
            .morphisms()
            .iter()
            .map(|m| (m.name.clone(), FinFunction::identity(value)))
            .collect();
        Presheaf::new(base.clone(), values, actions).expect("constant presheaf is valid")
    }
}

/// Element name of `f` inside the representable value `Hom(Y, X)`.
fn hom_element(y: &str, x: &str, f: &str) -> String {
    format!("hom({y},{x}):{f}")
}

/// The representable presheaf of an object: value at `Y` is `Hom(Y, X)`,
/// restriction along `f : Y' -> Y` is precomposition.
pub fn representable(cat: &FinCategory, x: &str) -> Result<Presheaf, YonedaError> {
    if !cat.has_object(x) {
        return Err(YonedaError::UnknownObject(x.to_string()));
    }
    let mut values = BTreeMap::new();
    for y in cat.objects() {
        let elements = cat
            .hom(y, x)
            .into_iter()
            .map(|f| hom_element(y, x, f))
            .collect();
        values.insert(y.clone(), FinSet::new(elements)?);
    }
    let mut actions = BTreeMap::new();
    for m in cat.morphisms() {
        // - ∘ f : Hom(tgt, X) -> Hom(src, X).
        let mapping: BTreeMap<String, String> = cat
            .hom(&m.tgt, x)
            .into_iter()
            .map(|g| {
                let composite = cat.compose(&m.name, g).expect("validated category");
                (hom_element(&m.tgt, x, g), hom_element(&m.src, x, composite))
            })
            .collect();
        actions.insert(
            m.name.clone(),
            FinFunction::new(values[&m.tgt].clone(), values[&m.src].clone(), &mapping)?,
        );
    }
    Presheaf::new(cat.clone(), values, actions)
}

/// A natural transformation between presheaves: one function per object,
/// all naturality squares verified.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PresheafNat {
    components: BTreeMap<String, FinFunction>,
}

impl PresheafNat {
    pub fn new(
        source: &Presheaf,
        target: &Presheaf,
        components: BTreeMap<String, FinFunction>,
    ) -> Result<PresheafNat, YonedaError> {
        for x in source.base().objects() {
            let c = components.get(x).ok_or_else(|| {
                YonedaError::InvalidPresheaf(format!("missing component at `{x}`"))
            })?;
            if c.domain() != source.value(x) || c.codomain() != target.value(x) {
                return Err(YonedaError::InvalidPresheaf(format!(
                    "component at `{x}` has wrong endpoints"
                )));
            }
        }
        for m in source.base().morphisms() {
            // α_{src} ∘ F f  =  G f ∘ α_{tgt}
            let lhs = source.action(&m.name).then(&components[&m.src])?;
            let rhs = components[&m.tgt].then(target.action(&m.name))?;
            if lhs != rhs {
                return Err(YonedaError::NaturalitySquareFails(m.name.clone()));
            }
        }
        Ok(PresheafNat { components })
    }

    pub fn identity(p: &Presheaf) -> PresheafNat {
        PresheafNat {
            components: p
                .base()
                .objects()
                .iter()
                .map(|x| (x.clone(), FinFunction::identity(p.value(x))))
                .collect(),
        }
    }

    pub fn component(&self, object: &str) -> &FinFunction {
        &self.components[object]
    }

    pub fn components(&self) -> &BTreeMap<String, FinFunction> {
        &self.components
    }

    /// Vertical composition `then ∘ self`.
    pub fn then(&self, then: &PresheafNat) -> Result<PresheafNat, YonedaError> {
        let components = self
            .components
            .iter()
            .map(|(x, c)| Ok((x.clone(), c.then(&then.components[x])?)))
            .collect::<Result<_, FinSetError>>()?;
        Ok(PresheafNat { components })
    }

    pub fn is_iso(&self) -> bool {
        self.components.values().all(|c| c.is_bijective())
    }

    pub fn signature(&self) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(x, c)| format!("{x}:{}", c.name()))
            .collect();
        format!("pn[{}]", parts.join("|"))
    }
}

/// All natural transformations `P ⇒ Q`, enumerated by brute force over
/// component families, gated by `∏_X |Q X| ^ |P X|`.
pub fn nat_set(p: &Presheaf, q: &Presheaf, budget: u64) -> Result<Vec<PresheafNat>, YonedaError> {
    let objects = p.base().objects();
    let mut estimate: u64 = 1;
    for x in objects {
        let c = (q.value(x).len() as u64)
            .checked_pow(p.value(x).len() as u32)
            .unwrap_or(u64::MAX);
        estimate = estimate.saturating_mul(c.max(1));
    }
    if estimate > budget {
        return Err(YonedaError::BudgetExceeded(estimate));
    }
    let per_object: Vec<Vec<FinFunction>> = objects
        .iter()
        .map(|x| all_functions(p.value(x), q.value(x)))
        .collect();
    if per_object.iter().any(|v| v.is_empty()) && !objects.is_empty() {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; objects.len()];
    loop {
        let components: BTreeMap<String, FinFunction> = objects
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), per_object[i][pick[i]].clone()))
            .collect();
        if let Ok(nat) = PresheafNat::new(p, q, components) {
            out.push(nat);
        }
        let mut k = pick.len();
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

/// The forward direction of the Yoneda correspondence: `α ↦ α_X(id_X)`.
pub fn yoneda_forward(cat: &FinCategory, x: &str, alpha: &PresheafNat) -> String {
    let id = cat.identity_of(x).expect("validated category");
    alpha
        .component(x)
        .apply(&hom_element(x, x, id))
        .expect("identity element present")
        .to_string()
}

/// The backward direction: `p ↦ (f ↦ F f (p))`.
pub fn yoneda_backward(
    cat: &FinCategory,
    x: &str,
    f: &Presheaf,
    p: &str,
) -> Result<PresheafNat, YonedaError> {
    let y_x = representable(cat, x)?;
    let mut components = BTreeMap::new();
    for y in cat.objects() {
        let mapping: BTreeMap<String, String> = cat
            .hom(y, x)
            .into_iter()
            .map(|g| {
                let image = f
                    .action(g)
                    .apply(p)
                    .expect("element of F X")
                    .to_string();
                (hom_element(y, x, g), image)
            })
            .collect();
        components.insert(
            y.clone(),
            FinFunction::new(y_x.value(y).clone(), f.value(y).clone(), &mapping)?,
        );
    }
    PresheafNat::new(&y_x, f, components)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YonedaVerdict {
    pub nat_count: usize,
    pub value_count: usize,
    pub forward_then_backward_is_identity: bool,
    pub backward_then_forward_is_identity: bool,
}

impl YonedaVerdict {
    pub fn holds(&self) -> bool {
        self.nat_count == self.value_count
            && self.forward_then_backward_is_identity
            && self.backward_then_forward_is_identity
    }
}

/// Runs both directions of the Yoneda correspondence between
/// `Nat(y_X, F)` and `F X` and confirms they are mutually inverse.
pub fn yoneda_correspondence(
    cat: &FinCategory,
    x: &str,
    f: &Presheaf,
    budget: u64,
) -> Result<YonedaVerdict, YonedaError> {
    let y_x = representable(cat, x)?;
    let nats = nat_set(&y_x, f, budget)?;
    let mut forward_then_backward = true;
    for alpha in &nats {
        let p = yoneda_forward(cat, x, alpha);
        let back = yoneda_backward(cat, x, f, &p)?;
        if &back != alpha {
            forward_then_backward = false;
        }
    }
    let mut backward_then_forward = true;
    for p in f.value(x).elements() {
        let alpha = yoneda_backward(cat, x, f, p)?;
        if yoneda_forward(cat, x, &alpha) != *p {
            backward_then_forward = false;
        }
    }
    Ok(YonedaVerdict {
        nat_count: nats.len(),
        value_count: f.value(x).len(),
        forward_then_backward_is_identity: forward_then_backward,
        backward_then_forward_is_identity: backward_then_forward,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingVerdict {
    pub hom_counts_match: bool,
    pub embedding_fully_faithful: bool,
    pub iso_reflection: bool,
    pub pairs_checked: u64,
}

impl EmbeddingVerdict {
    pub fn holds(&self) -> bool {
        self.hom_counts_match && self.embedding_fully_faithful && self.iso_reflection
    }
}

/// The transformation `y_h : y_X ⇒ y_Y` induced by `h : X -> Y`
/// (postcomposition).
pub fn yoneda_on_morphism(cat: &FinCategory, h: &str) -> Result<PresheafNat, YonedaError> {
    let m = cat
        .morphism(h)
        .ok_or_else(|| YonedaError::UnknownObject(h.to_string()))?
        .clone();
    let y_src = representable(cat, &m.src)?;
    let y_tgt = representable(cat, &m.tgt)?;
    let mut components = BTreeMap::new();
    for a in cat.objects() {
        let mapping: BTreeMap<String, String> = cat
            .hom(a, &m.src)
            .into_iter()
            .map(|g| {
                let composite = cat.compose(g, h).expect("validated category");
                (
                    hom_element(a, &m.src, g),
                    hom_element(a, &m.tgt, composite),
                )
            })
            .collect();
        components.insert(
            a.clone(),
            FinFunction::new(y_src.value(a).clone(), y_tgt.value(a).clone(), &mapping)?,
        );
    }
    PresheafNat::new(&y_src, &y_tgt, components)
}

/// Checks the embedding theorem on every pair of objects: hom-set counts
/// match the transformation counts, the induced map is a bijection, and
/// objects are isomorphic exactly when their representables are naturally
/// isomorphic.
pub fn yoneda_embedding_check(
    cat: &FinCategory,
    budget: u64,
) -> Result<EmbeddingVerdict, YonedaError> {
    let mut hom_counts_match = true;
    let mut fully_faithful = true;
    let mut iso_reflection = true;
    let mut pairs = 0u64;
    for x in cat.objects() {
        let y_x = representable(cat, x)?;
        for y in cat.objects() {
            pairs += 1;
            let y_y = representable(cat, y)?;
            let nats = nat_set(&y_x, &y_y, budget)?;
            let hom = cat.hom(x, y);
            if hom.len() != nats.len() {
                hom_counts_match = false;
            }
            // The canonical map h -> y_h must be injective into nats.
            let mut images = Vec::new();
            for h in &hom {
                let nat = yoneda_on_morphism(cat, h)?;
                if !nats.contains(&nat) {
                    fully_faithful = false;
                }
                images.push(nat);
            }
            images.sort();
            images.dedup();
            if images.len() != hom.len() {
                fully_faithful = false;
            }
            // X ≅ Y iff y_X ≅ y_Y.
            let obj_iso = cat.hom(x, y).into_iter().any(|f| {
                crate::category::classify_morphism(cat, f)
                    .map(|k| k.iso)
                    .unwrap_or(false)
            }) || x == y;
            let nat_iso = nats.iter().any(|n| n.is_iso());
            if obj_iso != nat_iso {
                iso_reflection = false;
            }
        }
    }
    Ok(EmbeddingVerdict {
        hom_counts_match,
        embedding_fully_faithful: fully_faithful,
        iso_reflection,
        pairs_checked: pairs,
    })
}

/// Searches every object and natural isomorphism; returns the first
/// representation found, in canonical order.
pub fn is_representable(
    f: &Presheaf,
    budget: u64,
) -> Result<Option<(String, PresheafNat)>, YonedaError> {
    for s in f.base().objects() {
        let y_s = representable(f.base(), s)?;
        for nat in nat_set(&y_s, f, budget)? {
            if nat.is_iso() {
                return Ok(Some((s.clone(), nat)));
            }
        }
    }
    Ok(None)
}

/// The covariant hom functor `Hom(R, -) : C -> FinSet fragment`, together
/// with the fragment it lands in. Values are hom-sets, the action on
/// `f : X -> Y` is postcomposition.
pub fn covariant_hom_functor(
    cat: &FinCategory,
    r: &str,
) -> Result<(FinFunctor, FragmentCategory), YonedaError> {
    if !cat.has_object(r) {
        return Err(YonedaError::UnknownObject(r.to_string()));
    }
    let mut value_sets = BTreeMap::new();
    for x in cat.objects() {
        let elements = cat
            .hom(r, x)
            .into_iter()
            .map(|f| hom_element(r, x, f))
            .collect();
        value_sets.insert(x.clone(), FinSet::new(elements)?);
    }
    let frag = fragment_category(&value_sets.values().cloned().collect::<Vec<_>>())?;
    let obj_map: BTreeMap<String, String> = value_sets
        .iter()
        .map(|(x, s)| (x.clone(), s.name()))
        .collect();
    let mut mor_map = BTreeMap::new();
    for m in cat.morphisms() {
        // f ∘ - : Hom(R, src) -> Hom(R, tgt).
        let mapping: BTreeMap<String, String> = cat
            .hom(r, &m.src)
            .into_iter()
            .map(|g| {
                let composite = cat.compose(g, &m.name).expect("validated category");
                (hom_element(r, &m.src, g), hom_element(r, &m.tgt, composite))
            })
            .collect();
        let func = FinFunction::new(
            value_sets[&m.src].clone(),
            value_sets[&m.tgt].clone(),
            &mapping,
        )?;
        mor_map.insert(m.name.clone(), func.name());
    }
    let functor = FinFunctor::new(cat.clone(), frag.category.clone(), obj_map, mor_map)?;
    Ok((functor, frag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{delooping, ComposeEntry, Morphism, RawCategory};
    use crate::monoid::MonoidTable;
    use crate::universal::{check_preservation, Diagram};

    #[test]
    fn representable_on_terminal_is_singleton() {
        let c = FinCategory::terminal();
        let y = representable(&c, "*").unwrap();
        assert_eq!(y.value("*").len(), 1);
    }

    #[test]
    fn representable_on_delooping_is_right_action() {
        let c = delooping(&MonoidTable::cyclic(3)).unwrap();
        let y = representable(&c, "*").unwrap();
        assert_eq!(y.value("*").len(), 3);
        // Restriction along g is right multiplication by g.
        let act = y.action("1");
        assert_eq!(
            act.apply("hom(*,*):1"),
            // 1 ∘ 1 = "first 1 then 1" = 2 in Z/3.
            Some("hom(*,*):2")
        );
    }

    #[test]
    fn representable_on_walking_arrow() {
        let c = FinCategory::walking_arrow();
        let y_b = representable(&c, "B").unwrap();
        assert_eq!(y_b.value("A").len(), 1);
        assert_eq!(y_b.value("B").len(), 1);
        let y_a = representable(&c, "A").unwrap();
        assert_eq!(y_a.value("A").len(), 1);
        assert_eq!(y_a.value("B").len(), 0);
    }

    #[test]
    fn nat_set_counts_on_walking_arrow() {
        let c = FinCategory::walking_arrow();
        let y_a = representable(&c, "A").unwrap();
        let y_b = representable(&c, "B").unwrap();
        // Nat(y_A, y_B) ≅ Hom(A, B): exactly one.
        assert_eq!(nat_set(&y_a, &y_b, 10_000).unwrap().len(), 1);
        // Nat(y_B, y_A) ≅ Hom(B, A): none.
        assert_eq!(nat_set(&y_b, &y_a, 10_000).unwrap().len(), 0);
        // Identity is always present.
        let nats = nat_set(&y_a, &y_a, 10_000).unwrap();
        assert!(nats.contains(&PresheafNat::identity(&y_a)));
    }

    #[test]
    fn cayley_on_z2() {
        let c = delooping(&MonoidTable::cyclic(2)).unwrap();
        let y = representable(&c, "*").unwrap();
        let nats = nat_set(&y, &y, 10_000).unwrap();
        assert_eq!(nats.len(), 2);
        // Every transformation is invertible: the image is a subgroup of the
        // permutations of the underlying set.
        assert!(nats.iter().all(|n| n.is_iso()));
    }

    #[test]
    fn correspondence_on_representables() {
        let c = delooping(&MonoidTable::cyclic(3)).unwrap();
        let f = representable(&c, "*").unwrap();
        let verdict = yoneda_correspondence(&c, "*", &f, 100_000).unwrap();
        assert!(verdict.holds());
        assert_eq!(verdict.nat_count, 3);
        // backward(id element) is the identity transformation.
        let id_elt = hom_element("*", "*", "0");
        let back = yoneda_backward(&c, "*", &f, &id_elt).unwrap();
        assert_eq!(back, PresheafNat::identity(&f));
    }

    #[test]
    fn correspondence_on_constant_presheaf() {
        let c = FinCategory::walking_arrow();
        let f = Presheaf::constant(&c, &FinSet::range("v", 2));
        for x in c.objects() {
            let verdict = yoneda_correspondence(&c, x, &f, 100_000).unwrap();
            assert!(verdict.holds(), "{verdict:?}");
        }
    }

    #[test]
    fn yoneda_bijection_natural_in_x_and_f() {
        let c = FinCategory::walking_arrow();
        let presheaves = vec![
            representable(&c, "A").unwrap(),
            representable(&c, "B").unwrap(),
            Presheaf::constant(&c, &FinSet::range("v", 2)),
        ];
        // Naturality in X: F h (α_Y(id)) = α_X(h) for h : X -> Y.
        for f in &presheaves {
            for m in c.morphisms() {
                let y_tgt = representable(&c, &m.tgt).unwrap();
                for alpha in nat_set(&y_tgt, f, 100_000).unwrap() {
                    let lhs = f
                        .action(&m.name)
                        .apply(&yoneda_forward(&c, &m.tgt, &alpha))
                        .unwrap()
                        .to_string();
                    let rhs = alpha
                        .component(&m.src)
                        .apply(&hom_element(&m.src, &m.tgt, &m.name))
                        .unwrap()
                        .to_string();
                    assert_eq!(lhs, rhs);
                }
            }
        }
        // Naturality in F: (β ∘ α)_X(id) = β_X(α_X(id)).
        for f in &presheaves {
            for g in &presheaves {
                for x in c.objects() {
                    let y_x = representable(&c, x).unwrap();
                    for alpha in nat_set(&y_x, f, 100_000).unwrap() {
                        for beta in nat_set(f, g, 100_000).unwrap() {
                            let composed = alpha.then(&beta).unwrap();
                            let lhs = yoneda_forward(&c, x, &composed);
                            let rhs = beta
                                .component(x)
                                .apply(&yoneda_forward(&c, x, &alpha))
                                .unwrap()
                                .to_string();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn embedding_check_small_categories() {
        for c in [
            FinCategory::terminal(),
            FinCategory::walking_arrow(),
            delooping(&MonoidTable::cyclic(3)).unwrap(),
        ] {
            let verdict = yoneda_embedding_check(&c, 1_000_000).unwrap();
            assert!(verdict.holds(), "{verdict:?}");
        }
    }

    #[test]
    fn embedding_check_on_s3() {
        let c = delooping(&MonoidTable::symmetric3()).unwrap();
        let verdict = yoneda_embedding_check(&c, 1_000_000).unwrap();
        assert!(verdict.holds(), "{verdict:?}");
    }

    #[test]
    fn representable_search_finds_representing_object() {
        let c = FinCategory::walking_arrow();
        let y_b = representable(&c, "B").unwrap();
        let (s, nat) = is_representable(&y_b, 100_000).unwrap().unwrap();
        assert_eq!(s, "B");
        assert!(nat.is_iso());
    }

    #[test]
    fn trivial_action_presheaf_not_representable() {
        // Constant 2-element presheaf on B(Z/2): the representable has a
        // free right action, the constant one does not.
        let c = delooping(&MonoidTable::cyclic(2)).unwrap();
        let f = Presheaf::constant(&c, &FinSet::range("v", 2));
        assert!(is_representable(&f, 100_000).unwrap().is_none());
    }

    /// The two-parallel-arrows category: objects V, E with s, t : V -> E.
    fn par_category() -> FinCategory {
        let raw = RawCategory {
            objects: vec!["V".into(), "E".into()],
            morphisms: vec![
                Morphism { name: "id_V".into(), src: "V".into(), tgt: "V".into() },
                Morphism { name: "id_E".into(), src: "E".into(), tgt: "E".into() },
                Morphism { name: "s".into(), src: "V".into(), tgt: "E".into() },
                Morphism { name: "t".into(), src: "V".into(), tgt: "E".into() },
            ],
            identities: BTreeMap::from([
                ("V".to_string(), "id_V".to_string()),
                ("E".to_string(), "id_E".to_string()),
            ]),
            compose: vec![
                ComposeEntry { first: "id_V".into(), then: "id_V".into(), equals: "id_V".into() },
                ComposeEntry { first: "id_E".into(), then: "id_E".into(), equals: "id_E".into() },
                ComposeEntry { first: "id_V".into(), then: "s".into(), equals: "s".into() },
                ComposeEntry { first: "s".into(), then: "id_E".into(), equals: "s".into() },
                ComposeEntry { first: "id_V".into(), then: "t".into(), equals: "t".into() },
                ComposeEntry { first: "t".into(), then: "id_E".into(), equals: "t".into() },
            ],
        };
        FinCategory::validate(&raw).unwrap()
    }

    #[test]
    fn single_vertex_graph_is_representable_by_v() {
        // Presheaves on Par are multigraphs; the one-vertex no-edge graph is
        // the representable of V.
        let par = par_category();
        let vset = FinSet::new(vec!["v".into()]).unwrap();
        let eset = FinSet::empty();
        let values = BTreeMap::from([("V".to_string(), vset.clone()), ("E".to_string(), eset.clone())]);
        let actions = BTreeMap::from([
            ("id_V".to_string(), FinFunction::identity(&vset)),
            ("id_E".to_string(), FinFunction::identity(&eset)),
            (
                "s".to_string(),
                FinFunction::new(eset.clone(), vset.clone(), &BTreeMap::new()).unwrap(),
            ),
            (
                "t".to_string(),
                FinFunction::new(eset.clone(), vset.clone(), &BTreeMap::new()).unwrap(),
            ),
        ]);
        let g0 = Presheaf::new(par, values, actions).unwrap();
        let (s, _) = is_representable(&g0, 100_000).unwrap().unwrap();
        assert_eq!(s, "V");
    }

    #[test]
    fn isomorphic_presheaf_shares_representing_object() {
        let c = FinCategory::walking_arrow();
        let y_b = representable(&c, "B").unwrap();
        // Rename the values by an isomorphism.
        let renamed_a = FinSet::new(vec!["p".into()]).unwrap();
        let renamed_b = FinSet::new(vec!["q".into()]).unwrap();
        let values = BTreeMap::from([
            ("A".to_string(), renamed_a.clone()),
            ("B".to_string(), renamed_b.clone()),
        ]);
        let actions = BTreeMap::from([
            ("id_A".to_string(), FinFunction::identity(&renamed_a)),
            ("id_B".to_string(), FinFunction::identity(&renamed_b)),
            (
                "f".to_string(),
                FinFunction::new(
                    renamed_b.clone(),
                    renamed_a.clone(),
                    &BTreeMap::from([("q".to_string(), "p".to_string())]),
                )
                .unwrap(),
            ),
        ]);
        let g = Presheaf::new(c.clone(), values, actions).unwrap();
        // G ≅ y_B, so it must be representable by B.
        assert!(nat_set(&y_b, &g, 10_000).unwrap().iter().any(|n| n.is_iso()));
        let (s, _) = is_representable(&g, 100_000).unwrap().unwrap();
        assert_eq!(s, "B");
    }

    #[test]
    fn representable_turns_coproduct_into_product() {
        // Fragment on {a}, {b}, {a,b}: the 2-element set is the coproduct of
        // the singletons. y_X(A ⊔ B) must factor as y_X(A) × y_X(B).
        let a = FinSet::new(vec!["a".into()]).unwrap();
        let b = FinSet::new(vec!["b".into()]).unwrap();
        let ab = FinSet::new(vec!["a".into(), "b".into()]).unwrap();
        let frag = fragment_category(&[a.clone(), b.clone(), ab.clone()]).unwrap();
        let x = ab.name();
        let y = representable(&frag.category, &x).unwrap();
        let at_coprod = y.value(&ab.name()).len();
        let at_a = y.value(&a.name()).len();
        let at_b = y.value(&b.name()).len();
        assert_eq!(at_coprod, at_a * at_b);
        // The pairing along the two injections is a bijection.
        let inj_a = FinFunction::from_fn(&a, &ab, |e| e.to_string()).unwrap().name();
        let inj_b = FinFunction::from_fn(&b, &ab, |e| e.to_string()).unwrap().name();
        let mut pairs = std::collections::BTreeSet::new();
        for g in y.value(&ab.name()).elements() {
            let ra = y.action(&inj_a).apply(g).unwrap().to_string();
            let rb = y.action(&inj_b).apply(g).unwrap().to_string();
            pairs.insert((ra, rb));
        }
        assert_eq!(pairs.len(), at_coprod);
    }

    #[test]
    fn representable_functor_preserves_binary_product() {
        // C = fragment on {∅, {u}, {u,v}}; the product of {u} and {u,v}
        // exists in C. Hom(R, -) with R = {u,v} must preserve it.
        let empty = FinSet::empty();
        let one = FinSet::new(vec!["u".into()]).unwrap();
        let two = FinSet::new(vec!["u".into(), "v".into()]).unwrap();
        let frag = fragment_category(&[empty, one.clone(), two.clone()]).unwrap();
        let (hom_r, _target) = covariant_hom_functor(&frag.category, &two.name()).unwrap();
        let shape = FinCategory::discrete(&["P".to_string(), "Q".to_string()]);
        let body = FinFunctor::new(
            shape,
            frag.category.clone(),
            BTreeMap::from([
                ("P".to_string(), one.name()),
                ("Q".to_string(), two.name()),
            ]),
            BTreeMap::from([
                ("id_P".to_string(), FinFunction::identity(&one).name()),
                ("id_Q".to_string(), FinFunction::identity(&two).name()),
            ]),
        )
        .unwrap();
        let verdict = check_preservation(&hom_r, &Diagram::new(body), 5_000_000).unwrap();
        assert!(verdict.preserved);
    }
}
