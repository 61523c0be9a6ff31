//! Finite preorders and posets as thin categories, meets and joins, Galois
//! connections, the adjoint functor theorem for preorders, and closure
//! operators.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::category::{CategoryError, ComposeEntry, FinCategory, Morphism, RawCategory};
use crate::functor::{FinFunctor, FunctorError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("relation mentions unknown element `{0}`")]
    UnknownElement(String),
    #[error("relation is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("relation is not transitive on ({0}, {1}, {2})")]
    NotTransitive(String, String, String),
    #[error("map is not total at `{0}`")]
    NotTotal(String),
    #[error("map is not monotone on {0} <= {1}")]
    NotMonotone(String, String),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Functor(#[from] FunctorError),
}

/// A finite preorder: elements plus a reflexive, transitive relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinPreorder {
    elements: Vec<String>,
    leq: BTreeSet<(String, String)>,
}

impl FinPreorder {
    pub fn new(
        mut elements: Vec<String>,
        leq: BTreeSet<(String, String)>,
    ) -> Result<FinPreorder, OrderError> {
        elements.sort();
        for w in elements.windows(2) {
            if w[0] == w[1] {
                return Err(OrderError::DuplicateElement(w[0].clone()));
            }
        }
        for (a, b) in &leq {
            if !elements.contains(a) {
                return Err(OrderError::UnknownElement(a.clone()));
            }
            if !elements.contains(b) {
                return Err(OrderError::UnknownElement(b.clone()));
            }
        }
        let p = FinPreorder { elements, leq };
        for x in &p.elements {
            if !p.leq(x, x) {
                return Err(OrderError::NotReflexive(x.clone()));
            }
        }
        for (a, b) in &p.leq {
            for c in &p.elements {
                if p.leq(b, c) && !p.leq(a, c) {
                    return Err(OrderError::NotTransitive(a.clone(), b.clone(), c.clone()));
                }
            }
        }
        Ok(p)
    }

    /// Builds the preorder generated by the given pairs: reflexive and
    /// transitive closure.
    pub fn generated(elements: Vec<String>, pairs: &[(String, String)]) -> Result<FinPreorder, OrderError> {
        let mut leq: BTreeSet<(String, String)> = pairs.iter().cloned().collect();
        for e in &elements {
            leq.insert((e.clone(), e.clone()));
        }
        loop {
            let mut grew = false;
            let snapshot: Vec<(String, String)> = leq.iter().cloned().collect();
            for (a, b) in &snapshot {
                for (c, d) in &snapshot {
                    if b == c && leq.insert((a.clone(), d.clone())) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        FinPreorder::new(elements, leq)
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn leq(&self, a: &str, b: &str) -> bool {
        self.leq.contains(&(a.to_string(), b.to_string()))
    }

    pub fn pairs(&self) -> &BTreeSet<(String, String)> {
        &self.leq
    }

    pub fn equivalent(&self, a: &str, b: &str) -> bool {
        self.leq(a, b) && self.leq(b, a)
    }

    /// Antisymmetry check.
    pub fn is_poset(&self) -> bool {
        self.leq
            .iter()
            .all(|(a, b)| a == b || !self.leq(b, a))
    }

    /// The linear order 0 < 1 < ... < n-1.
    pub fn chain(n: usize) -> FinPreorder {
        let elements: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut leq = BTreeSet::new();
        for i in 0..n {
            for j in i..n {
                leq.insert((i.to_string(), j.to_string()));
            }
        }
        FinPreorder::new(elements, leq).expect("chain is a preorder")
    }

    /// The discrete order on n elements.
    pub fn discrete(n: usize) -> FinPreorder {
        let elements: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let leq = elements.iter().map(|e| (e.clone(), e.clone())).collect();
        FinPreorder::new(elements, leq).expect("discrete order is a preorder")
    }

    /// bot < a, b < top with a, b incomparable.
    pub fn diamond() -> FinPreorder {
        let elements: Vec<String> = ["a", "b", "bot", "top"].iter().map(|s| s.to_string()).collect();
        FinPreorder::generated(
            elements,
            &[
                ("bot".to_string(), "a".to_string()),
                ("bot".to_string(), "b".to_string()),
                ("a".to_string(), "top".to_string()),
                ("b".to_string(), "top".to_string()),
            ],
        )
        .expect("diamond is a preorder")
    }

    /// Divisors of n under divisibility.
    pub fn divisors(n: u64) -> FinPreorder {
        let divs: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
        let elements: Vec<String> = divs.iter().map(|d| d.to_string()).collect();
        let mut leq = BTreeSet::new();
        for &a in &divs {
            for &b in &divs {
                if b % a == 0 {
                    leq.insert((a.to_string(), b.to_string()));
                }
            }
        }
        FinPreorder::new(elements, leq).expect("divisibility is a preorder")
    }

    /// The induced preorder on a subset of the elements.
    pub fn restrict(&self, keep: &[String]) -> FinPreorder {
        let kept: BTreeSet<&String> = keep.iter().collect();
        let leq = self
            .leq
            .iter()
            .filter(|(a, b)| kept.contains(a) && kept.contains(b))
            .cloned()
            .collect();
        FinPreorder::new(keep.to_vec(), leq).expect("restriction of a preorder is a preorder")
    }
}

/// The thin category of a preorder: one morphism `le(x,y)` per related pair.
pub fn as_thin_category(p: &FinPreorder) -> Result<FinCategory, OrderError> {
    let name = |a: &str, b: &str| format!("le({a},{b})");
    let morphisms: Vec<Morphism> = p
        .pairs()
        .iter()
        .map(|(a, b)| Morphism {
            name: name(a, b),
            src: a.clone(),
            tgt: b.clone(),
        })
        .collect();
    let identities = p
        .elements()
        .iter()
        .map(|x| (x.clone(), name(x, x)))
        .collect();
    let mut compose = Vec::new();
    for (a, b) in p.pairs() {
        for (c, d) in p.pairs() {
            if b == c {
                compose.push(ComposeEntry {
                    first: name(a, b),
                    then: name(c, d),
                    equals: name(a, d),
                });
            }
        }
    }
    Ok(FinCategory::validate(&RawCategory {
        objects: p.elements().to_vec(),
        morphisms,
        identities,
        compose,
    })?)
}

/// Result of a meet/join search; in a non-antisymmetric preorder the answer
/// is only canonical up to equivalence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundResult {
    pub element: String,
    pub up_to_equivalence: bool,
}

/// Greatest lower bound of the subset, by brute force. The meet of the empty
/// subset is the top element, if any.
pub fn meet(p: &FinPreorder, subset: &[String]) -> Option<BoundResult> {
    let lower: Vec<&String> = p
        .elements()
        .iter()
        .filter(|b| subset.iter().all(|s| p.leq(b, s)))
        .collect();
    let maxima: Vec<&String> = lower
        .iter()
        .filter(|m| lower.iter().all(|b| p.leq(b, m)))
        .copied()
        .collect();
    maxima.first().map(|m| BoundResult {
        element: (*m).clone(),
        up_to_equivalence: maxima.len() > 1,
    })
}

/// Least upper bound, dual to [`meet`].
pub fn join(p: &FinPreorder, subset: &[String]) -> Option<BoundResult> {
    let upper: Vec<&String> = p
        .elements()
        .iter()
        .filter(|b| subset.iter().all(|s| p.leq(s, b)))
        .collect();
    let minima: Vec<&String> = upper
        .iter()
        .filter(|m| upper.iter().all(|b| p.leq(m, b)))
        .copied()
        .collect();
    minima.first().map(|m| BoundResult {
        element: (*m).clone(),
        up_to_equivalence: minima.len() > 1,
    })
}

/// A monotone map between preorders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    source: FinPreorder,
    target: FinPreorder,
    map: BTreeMap<String, String>,
}

impl MonotoneMap {
    pub fn new(
        source: &FinPreorder,
        target: &FinPreorder,
        map: &BTreeMap<String, String>,
    ) -> Result<MonotoneMap, OrderError> {
        for x in source.elements() {
            let y = map.get(x).ok_or_else(|| OrderError::NotTotal(x.clone()))?;
            if !target.elements().contains(y) {
                return Err(OrderError::UnknownElement(y.clone()));
            }
        }
        for (a, b) in source.pairs() {
            if !target.leq(&map[a], &map[b]) {
                return Err(OrderError::NotMonotone(a.clone(), b.clone()));
            }
        }
        Ok(MonotoneMap {
            source: source.clone(),
            target: target.clone(),
            map: map.clone(),
        })
    }

    pub fn identity(p: &FinPreorder) -> MonotoneMap {
        MonotoneMap {
            source: p.clone(),
            target: p.clone(),
            map: p.elements().iter().map(|e| (e.clone(), e.clone())).collect(),
        }
    }

    pub fn source(&self) -> &FinPreorder {
        &self.source
    }

    pub fn target(&self) -> &FinPreorder {
        &self.target
    }

    pub fn apply(&self, x: &str) -> &str {
        &self.map[x]
    }

    pub fn mapping(&self) -> &BTreeMap<String, String> {
        &self.map
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &MonotoneMap) -> Result<MonotoneMap, OrderError> {
        let map = self
            .map
            .iter()
            .map(|(x, y)| (x.clone(), then.map[y].clone()))
            .collect();
        MonotoneMap::new(&self.source, &then.target, &map)
    }
}

/// All monotone maps between two preorders, canonical order.
pub fn all_monotone_maps(p: &FinPreorder, q: &FinPreorder) -> Vec<MonotoneMap> {
    let n = p.elements().len();
    if n == 0 {
        return vec![MonotoneMap {
            source: p.clone(),
            target: q.clone(),
            map: BTreeMap::new(),
        }];
    }
    if q.elements().is_empty() {
        return vec![];
    }
    let m = q.elements().len();
    let mut out = Vec::new();
    let mut pick = vec![0usize; n];
    loop {
        let map: BTreeMap<String, String> = p
            .elements()
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), q.elements()[pick[i]].clone()))
            .collect();
        if let Ok(f) = MonotoneMap::new(p, q, &map) {
            out.push(f);
        }
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            pick[k] += 1;
            if pick[k] < m {
                break;
            }
            pick[k] = 0;
        }
    }
}

/// The functor between thin categories induced by a monotone map.
pub fn monotone_as_functor(f: &MonotoneMap) -> Result<FinFunctor, OrderError> {
    let src = as_thin_category(f.source())?;
    let tgt = as_thin_category(f.target())?;
    let obj_map: BTreeMap<String, String> = f.mapping().clone();
    let mor_map = f
        .source()
        .pairs()
        .iter()
        .map(|(a, b)| {
            (
                format!("le({a},{b})"),
                format!("le({},{})", f.apply(a), f.apply(b)),
            )
        })
        .collect();
    Ok(FinFunctor::new(src, tgt, obj_map, mor_map)?)
}

/// Outcome of checking `f(x) <= y  iff  x <= g(y)` over all pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisVerdict {
    pub holds: bool,
    /// A pair (x, y) where the biconditional breaks.
    pub witness: Option<(String, String)>,
    /// Corollary `x <= g(f(x))` for all x.
    pub unit_holds: bool,
    /// Corollary `f(g(y)) <= y` for all y.
    pub counit_holds: bool,
    pub pairs_checked: u64,
}

/// Checks the Galois biconditional exhaustively.
pub fn validate_galois(lower: &MonotoneMap, upper: &MonotoneMap) -> GaloisVerdict {
    let x_order = lower.source();
    let y_order = lower.target();
    let mut witness = None;
    let mut pairs = 0u64;
    for x in x_order.elements() {
        for y in y_order.elements() {
            pairs += 1;
            let lhs = y_order.leq(lower.apply(x), y);
            let rhs = x_order.leq(x, upper.apply(y));
            if lhs != rhs && witness.is_none() {
                witness = Some((x.clone(), y.clone()));
            }
        }
    }
    let unit_holds = x_order
        .elements()
        .iter()
        .all(|x| x_order.leq(x, upper.apply(lower.apply(x))));
    let counit_holds = y_order
        .elements()
        .iter()
        .all(|y| y_order.leq(lower.apply(upper.apply(y)), y));
    GaloisVerdict {
        holds: witness.is_none(),
        witness,
        unit_holds,
        counit_holds,
        pairs_checked: pairs,
    }
}

/// A validated Galois connection `lower ⊣ upper`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisConnection {
    pub lower: MonotoneMap,
    pub upper: MonotoneMap,
}

impl GaloisConnection {
    pub fn new(lower: MonotoneMap, upper: MonotoneMap) -> Result<GaloisConnection, GaloisVerdict> {
        let verdict = validate_galois(&lower, &upper);
        if verdict.holds {
            Ok(GaloisConnection { lower, upper })
        } else {
            Err(verdict)
        }
    }
}

/// Result of the adjoint functor theorem for preorders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AftOutcome {
    /// The lower adjoint, computed as `f(x) = inf { y | x <= g(y) }`.
    LowerAdjoint(MonotoneMap),
    /// Preconditions fail: the witness subset of the target either has no
    /// meet or its meet is not preserved by g.
    NoAdjoint { witness_subset: Vec<String> },
}

/// Adjoint functor theorem for preorders: the lower adjoint, when it exists,
/// is `f(x) = inf { y | x <= g(y) }`. The sweep checks, per `x`, that this
/// infimum exists and lies in the set itself (it always does when the source
/// of `g` has all meets and `g` preserves them, and the adjoint exists in
/// exactly the surviving cases); the first `x` whose candidate set has no
/// least element is returned as the witness.
pub fn aft_lower_adjoint(g: &MonotoneMap) -> Result<AftOutcome, OrderError> {
    let y_order = g.source();
    let x_order = g.target();
    let mut map = BTreeMap::new();
    for x in x_order.elements() {
        let above: Vec<String> = y_order
            .elements()
            .iter()
            .filter(|y| x_order.leq(x, g.apply(y)))
            .cloned()
            .collect();
        let minima: Vec<&String> = above
            .iter()
            .filter(|m| above.iter().all(|y| y_order.leq(m, y)))
            .collect();
        match minima.first() {
            Some(m) => {
                map.insert(x.clone(), (*m).clone());
            }
            None => {
                return Ok(AftOutcome::NoAdjoint {
                    witness_subset: above,
                })
            }
        }
    }
    let f = MonotoneMap::new(x_order, y_order, &map)?;
    debug_assert!(validate_galois(&f, g).holds);
    Ok(AftOutcome::LowerAdjoint(f))
}

/// Brute-force oracle: searches all monotone maps for a lower adjoint.
pub fn brute_force_lower_adjoint(g: &MonotoneMap) -> Option<MonotoneMap> {
    all_monotone_maps(g.target(), g.source())
        .into_iter()
        .find(|f| validate_galois(f, g).holds)
}

/// The closure operator `g ∘ f` of a Galois connection.
pub fn closure_from_galois(gc: &GaloisConnection) -> MonotoneMap {
    gc.lower
        .then(&gc.upper)
        .expect("lower and upper compose by construction")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureVerdict {
    pub monotone: bool,
    pub extensive: bool,
    pub idempotent: bool,
    /// First element violating extensivity or idempotency, if any.
    pub witness: Option<String>,
}

impl ClosureVerdict {
    pub fn holds(&self) -> bool {
        self.monotone && self.extensive && self.idempotent
    }
}

/// Checks that a self-map is a closure operator: monotone, extensive,
/// idempotent.
pub fn check_closure_operator(t: &MonotoneMap) -> ClosureVerdict {
    let p = t.source();
    let monotone = t.source() == t.target();
    let mut witness = None;
    let mut extensive = true;
    let mut idempotent = true;
    for x in p.elements() {
        if !p.leq(x, t.apply(x)) {
            extensive = false;
            witness.get_or_insert_with(|| x.clone());
        }
        if !p.equivalent(t.apply(t.apply(x)), t.apply(x)) {
            idempotent = false;
            witness.get_or_insert_with(|| x.clone());
        }
    }
    ClosureVerdict {
        monotone,
        extensive,
        idempotent,
        witness,
    }
}

/// Fixed points of a self-map, in canonical order.
pub fn fixed_points(t: &MonotoneMap) -> Vec<String> {
    t.source()
        .elements()
        .iter()
        .filter(|x| t.source().equivalent(t.apply(x), x))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{classify_morphism, core_groupoid};

    #[test]
    fn chain_category_counts() {
        let c = as_thin_category(&FinPreorder::chain(3)).unwrap();
        assert_eq!(c.morphisms().len(), 6);
    }

    #[test]
    fn discrete_order_only_identities() {
        let c = as_thin_category(&FinPreorder::discrete(3)).unwrap();
        assert_eq!(c.morphisms().len(), 3);
        assert!(c.morphisms().iter().all(|m| c.is_identity(&m.name)));
    }

    #[test]
    fn equivalence_relation_is_groupoid() {
        // Two equivalent elements: x ~ y.
        let p = FinPreorder::generated(
            vec!["x".into(), "y".into()],
            &[
                ("x".to_string(), "y".to_string()),
                ("y".to_string(), "x".to_string()),
            ],
        )
        .unwrap();
        let c = as_thin_category(&p).unwrap();
        assert_eq!(core_groupoid(&c).unwrap(), c);
        for m in c.morphisms() {
            assert!(classify_morphism(&c, &m.name).unwrap().iso);
        }
    }

    #[test]
    fn meet_of_empty_is_top() {
        let p = FinPreorder::chain(3);
        let m = meet(&p, &[]).unwrap();
        assert_eq!(m.element, "2");
        // No top in the discrete order on two elements.
        assert!(meet(&FinPreorder::discrete(2), &[]).is_none());
    }

    #[test]
    fn divisor_meet_is_gcd() {
        let p = FinPreorder::divisors(12);
        let m = meet(&p, &["4".to_string(), "6".to_string()]).unwrap();
        assert_eq!(m.element, "2");
        let j = join(&p, &["4".to_string(), "6".to_string()]).unwrap();
        assert_eq!(j.element, "12");
    }

    fn three_two_example() -> (FinPreorder, FinPreorder, MonotoneMap) {
        // X = {a < b < c}, Y = {0 < 1}, g(0) = a, g(1) = c.
        let x = FinPreorder::generated(
            vec!["a".into(), "b".into(), "c".into()],
            &[
                ("a".to_string(), "b".to_string()),
                ("b".to_string(), "c".to_string()),
            ],
        )
        .unwrap();
        let y = FinPreorder::chain(2);
        let g = MonotoneMap::new(
            &y,
            &x,
            &BTreeMap::from([("0".to_string(), "a".to_string()), ("1".to_string(), "c".to_string())]),
        )
        .unwrap();
        (x, y, g)
    }

    #[test]
    fn aft_formula_on_three_two() {
        let (_, _, g) = three_two_example();
        let AftOutcome::LowerAdjoint(f) = aft_lower_adjoint(&g).unwrap() else {
            panic!("lower adjoint must exist")
        };
        assert_eq!(f.apply("a"), "0");
        assert_eq!(f.apply("b"), "1");
        assert_eq!(f.apply("c"), "1");
        // Cross-check against the brute-force oracle.
        let brute = brute_force_lower_adjoint(&g).unwrap();
        assert_eq!(f, brute);
    }

    #[test]
    fn aft_identity() {
        let p = FinPreorder::chain(3);
        let g = MonotoneMap::identity(&p);
        let AftOutcome::LowerAdjoint(f) = aft_lower_adjoint(&g).unwrap() else {
            panic!()
        };
        assert_eq!(f, g);
    }

    #[test]
    fn aft_rejects_non_meet_preserving() {
        let diamond = FinPreorder::diamond();
        let two = FinPreorder::chain(2);
        let g = MonotoneMap::new(
            &diamond,
            &two,
            &BTreeMap::from([
                ("bot".to_string(), "0".to_string()),
                ("a".to_string(), "1".to_string()),
                ("b".to_string(), "1".to_string()),
                ("top".to_string(), "1".to_string()),
            ]),
        )
        .unwrap();
        let AftOutcome::NoAdjoint { witness_subset } = aft_lower_adjoint(&g).unwrap() else {
            panic!("no adjoint should exist")
        };
        assert!(!witness_subset.is_empty());
        assert!(brute_force_lower_adjoint(&g).is_none());
    }

    #[test]
    fn galois_identity_and_swap() {
        let p = FinPreorder::chain(3);
        let id = MonotoneMap::identity(&p);
        assert!(validate_galois(&id, &id).holds);
        let (_, _, g) = three_two_example();
        let AftOutcome::LowerAdjoint(f) = aft_lower_adjoint(&g).unwrap() else {
            panic!()
        };
        assert!(validate_galois(&f, &g).holds);
        // Swapped pair is generally invalid.
        let v = validate_galois(&g, &f);
        assert!(!v.holds);
        assert!(v.witness.is_some());
    }

    #[test]
    fn closure_operator_from_connection() {
        let (_, _, g) = three_two_example();
        let AftOutcome::LowerAdjoint(f) = aft_lower_adjoint(&g).unwrap() else {
            panic!()
        };
        let gc = GaloisConnection::new(f, g).unwrap();
        let t = closure_from_galois(&gc);
        assert_eq!(t.apply("a"), "a");
        assert_eq!(t.apply("b"), "c");
        assert_eq!(t.apply("c"), "c");
        assert!(check_closure_operator(&t).holds());
        assert_eq!(fixed_points(&t), vec!["a".to_string(), "c".to_string()]);
    }

    #[test]
    fn non_adjoint_composite_fails_closure() {
        // f not left adjoint to g: map b "down" so extensivity fails.
        let x = FinPreorder::chain(3);
        let f = MonotoneMap::new(
            &x,
            &x,
            &BTreeMap::from([
                ("0".to_string(), "0".to_string()),
                ("1".to_string(), "0".to_string()),
                ("2".to_string(), "1".to_string()),
            ]),
        )
        .unwrap();
        let v = check_closure_operator(&f);
        assert!(!v.extensive);
        assert!(v.witness.is_some());
    }

    #[test]
    fn adjoints_preserve_bounds() {
        let (x, y, g) = three_two_example();
        let AftOutcome::LowerAdjoint(f) = aft_lower_adjoint(&g).unwrap() else {
            panic!()
        };
        // Lower adjoints preserve joins; upper adjoints preserve meets.
        let xs = x.elements();
        for mask in 0u32..(1 << xs.len()) {
            let subset: Vec<String> = (0..xs.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| xs[i].clone())
                .collect();
            if let Some(j) = join(&x, &subset) {
                let images: Vec<String> = subset.iter().map(|s| f.apply(s).to_string()).collect();
                let jf = join(&y, &images).expect("join of images exists");
                assert!(y.equivalent(f.apply(&j.element), &jf.element));
            }
        }
        let ys = y.elements();
        for mask in 0u32..(1 << ys.len()) {
            let subset: Vec<String> = (0..ys.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| ys[i].clone())
                .collect();
            if let Some(m) = meet(&y, &subset) {
                let images: Vec<String> = subset.iter().map(|s| g.apply(s).to_string()).collect();
                let mg = meet(&x, &images).expect("meet of images exists");
                assert!(x.equivalent(g.apply(&m.element), &mg.element));
            }
        }
    }
}
