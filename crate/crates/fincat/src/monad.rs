//! Monads and comonads on finite sets at value level: built-in instances
//! (powerset, distribution, writer, maybe, list; reader comonad), law
//! checking, Kleisli composition and category materialization, algebras and
//! the Eilenberg-Moore construction, and the exact-rational bridge between
//! distribution Kleisli maps and stochastic matrices.
//!
//! Generalized elements are [`Term`]s: one monad layer over named atoms.
//! Multiplication flattens the outer two layers; materialized functions are
//! produced by naming the terms canonically. Finite-carrier monads
//! (powerset, writer, maybe) materialize `T X` as a [`FinSet`]; distribution
//! and list only enumerate bounded fragments, and every law check on them is
//! reported as "bounded", never "exhaustive".

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::category::{CategoryError, ComposeEntry, FinCategory, Morphism, RawCategory};
use crate::finset::{all_functions, FinFunction, FinSet, FinSetError};
use crate::monoid::{MonoidError, MonoidTable};

pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonadError {
    #[error("not a monoid: {0}")]
    NotAMonoid(#[from] MonoidError),
    #[error("malformed generalized element: {0}")]
    Structure(String),
    #[error("enumeration budget exceeded (estimated {0})")]
    BudgetExceeded(u64),
    #[error("`{0}` does not have a finite carrier")]
    NotFiniteCarrier(String),
    #[error("weights do not sum to one at `{0}`")]
    NotNormalized(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error(transparent)]
    FinSet(#[from] FinSetError),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

/// A generalized element: one or more monad layers over named atoms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Term {
    Atom(String),
    /// Powerset layer.
    Set(BTreeSet<Term>),
    /// Distribution layer: sorted support with positive rational weights
    /// summing to one.
    Dist(Vec<(Term, Rat)>),
    /// Writer layer: a monoid annotation paired with the inner value.
    Tagged(String, Box<Term>),
    /// Maybe layer: the added point.
    Nothing,
    /// Maybe layer: a present value.
    Just(Box<Term>),
    /// List layer.
    Seq(Vec<Term>),
    /// Reader layer: inner value paired with an environment element.
    WithEnv(Box<Term>, String),
}

impl Term {
    pub fn atom(s: &str) -> Term {
        Term::Atom(s.to_string())
    }

    /// Canonical printable name; nested layers nest textually.
    pub fn name(&self) -> String {
        match self {
            Term::Atom(s) => s.clone(),
            Term::Set(xs) => {
                let parts: Vec<String> = xs.iter().map(|t| t.name()).collect();
                format!("{{{}}}", parts.join(","))
            }
            Term::Dist(ws) => {
                let parts: Vec<String> = ws.iter().map(|(t, w)| format!("{}:{}", t.name(), w)).collect();
                format!("{{{}}}", parts.join(","))
            }
            Term::Tagged(m, t) => format!("({m},{})", t.name()),
            Term::Nothing => "nothing".to_string(),
            Term::Just(t) => format!("just({})", t.name()),
            Term::Seq(ts) => {
                let parts: Vec<String> = ts.iter().map(|t| t.name()).collect();
                format!("[{}]", parts.join(","))
            }
            Term::WithEnv(t, e) => format!("({}|{e})", t.name()),
        }
    }

    pub fn dist(entries: Vec<(Term, Rat)>) -> Result<Term, MonadError> {
        let mut acc: BTreeMap<Term, Rat> = BTreeMap::new();
        for (t, w) in entries {
            if w < Rat::zero() {
                return Err(MonadError::Structure(format!("negative weight at {}", t.name())));
            }
            if !w.is_zero() {
                *acc.entry(t).or_insert_with(Rat::zero) += w;
            }
        }
        let total: Rat = acc.values().cloned().sum();
        if !total.is_one() {
            return Err(MonadError::NotNormalized(format!("total weight {total}")));
        }
        Ok(Term::Dist(acc.into_iter().collect()))
    }
}

/// Compositions of `total` into `parts` non-negative summands.
fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for head in 0..=total {
        for mut rest in compositions(total - head, parts - 1) {
            let mut v = vec![head];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// The built-in monads on finite sets.
#[derive(Debug, Clone)]
pub enum BuiltinMonad {
    Powerset,
    Distribution { max_denominator: u64 },
    Writer { monoid: MonoidTable },
    Maybe,
    List { max_length: usize },
}

/// Validating constructor mirroring the CLI surface.
pub fn builtin_monad(kind: &BuiltinMonad) -> Result<BuiltinMonad, MonadError> {
    match kind {
        BuiltinMonad::Writer { monoid } => {
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
            Ok(BuiltinMonad::Writer { monoid: checked })
        }
        BuiltinMonad::Distribution { max_denominator } => {
            if *max_denominator == 0 {
                return Err(MonadError::Structure("max_denominator must be at least 1".into()));
            }
            Ok(kind.clone())
        }
        other => Ok(other.clone()),
    }
}

impl BuiltinMonad {
    pub fn kind(&self) -> &'static str {
        match self {
            BuiltinMonad::Powerset => "powerset",
            BuiltinMonad::Distribution { .. } => "distribution",
            BuiltinMonad::Writer { .. } => "writer",
            BuiltinMonad::Maybe => "maybe",
            BuiltinMonad::List { .. } => "list",
        }
    }

    /// True when `T X` is finite for every finite `X` and is materialized in
    /// full; distribution and list only carry bounded enumerators.
    pub fn finite_carrier(&self) -> bool {
        matches!(
            self,
            BuiltinMonad::Powerset | BuiltinMonad::Writer { .. } | BuiltinMonad::Maybe
        )
    }

    /// One monad layer over the given base terms: the full carrier for the
    /// finite-carrier monads, the bounded enumeration otherwise.
    pub fn enumerate_layer(&self, base: &[Term]) -> Vec<Term> {
        match self {
            BuiltinMonad::Powerset => {
                let n = base.len();
                let mut out = Vec::with_capacity(1 << n);
                for mask in 0u64..(1 << n) {
                    let set: BTreeSet<Term> = (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| base[i].clone())
                        .collect();
                    out.push(Term::Set(set));
                }
                out.sort_by_key(|t| t.name());
                out.dedup();
                out
            }
            BuiltinMonad::Distribution { max_denominator } => {
                let mut seen: BTreeSet<Term> = BTreeSet::new();
                for q in 1..=*max_denominator {
                    for comp in compositions(q, base.len()) {
                        let entries: Vec<(Term, Rat)> = comp
                            .iter()
                            .enumerate()
                            .filter(|(_, &k)| k > 0)
                            .map(|(i, &k)| (base[i].clone(), Rat::new((k as i64).into(), (q as i64).into())))
                            .collect();
                        if let Ok(t) = Term::dist(entries) {
                            seen.insert(t);
                        }
                    }
                }
                seen.into_iter().collect()
            }
            BuiltinMonad::Writer { monoid } => {
                let mut out = Vec::new();
                for m in monoid.elements() {
                    for b in base {
                        out.push(Term::Tagged(m.clone(), Box::new(b.clone())));
                    }
                }
                out
            }
            BuiltinMonad::Maybe => {
                let mut out = vec![Term::Nothing];
                out.extend(base.iter().map(|b| Term::Just(Box::new(b.clone()))));
                out
            }
            BuiltinMonad::List { max_length } => {
                let mut out: Vec<Term> = vec![Term::Seq(vec![])];
                let mut level: Vec<Vec<Term>> = vec![vec![]];
                for _ in 0..*max_length {
                    let mut next = Vec::new();
                    for prefix in &level {
                        for b in base {
                            let mut v = prefix.clone();
                            v.push(b.clone());
                            next.push(v);
                        }
                    }
                    out.extend(next.iter().map(|v| Term::Seq(v.clone())));
                    level = next;
                }
                out
            }
        }
    }

    /// The unit: wraps an element in one trivial layer.
    pub fn unit_term(&self, inner: &Term) -> Term {
        match self {
            BuiltinMonad::Powerset => Term::Set(BTreeSet::from([inner.clone()])),
            BuiltinMonad::Distribution { .. } => Term::Dist(vec![(inner.clone(), Rat::one())]),
            BuiltinMonad::Writer { monoid } => {
                Term::Tagged(monoid.unit().to_string(), Box::new(inner.clone()))
            }
            BuiltinMonad::Maybe => Term::Just(Box::new(inner.clone())),
            BuiltinMonad::List { .. } => Term::Seq(vec![inner.clone()]),
        }
    }

    /// Applies `f` to every immediate child of the outer layer.
    pub fn map_layer(
        &self,
        t: &Term,
        f: &mut dyn FnMut(&Term) -> Result<Term, MonadError>,
    ) -> Result<Term, MonadError> {
        match (self, t) {
            (BuiltinMonad::Powerset, Term::Set(xs)) => {
                let mut out = BTreeSet::new();
                for x in xs {
                    out.insert(f(x)?);
                }
                Ok(Term::Set(out))
            }
            (BuiltinMonad::Distribution { .. }, Term::Dist(ws)) => {
                let mut entries = Vec::new();
                for (x, w) in ws {
                    entries.push((f(x)?, w.clone()));
                }
                Term::dist(entries)
            }
            (BuiltinMonad::Writer { .. }, Term::Tagged(m, x)) => {
                Ok(Term::Tagged(m.clone(), Box::new(f(x)?)))
            }
            (BuiltinMonad::Maybe, Term::Nothing) => Ok(Term::Nothing),
            (BuiltinMonad::Maybe, Term::Just(x)) => Ok(Term::Just(Box::new(f(x)?))),
            (BuiltinMonad::List { .. }, Term::Seq(xs)) => {
                let mut out = Vec::new();
                for x in xs {
                    out.push(f(x)?);
                }
                Ok(Term::Seq(out))
            }
            _ => Err(MonadError::Structure(format!(
                "{} cannot map over `{}`",
                self.kind(),
                t.name()
            ))),
        }
    }

    /// Multiplication: flattens the outer two layers into one.
    pub fn flatten(&self, t: &Term) -> Result<Term, MonadError> {
        match (self, t) {
            (BuiltinMonad::Powerset, Term::Set(xs)) => {
                let mut out = BTreeSet::new();
                for x in xs {
                    match x {
                        Term::Set(inner) => out.extend(inner.iter().cloned()),
                        other => {
                            return Err(MonadError::Structure(format!(
                                "union over non-set `{}`",
                                other.name()
                            )))
                        }
                    }
                }
                Ok(Term::Set(out))
            }
            (BuiltinMonad::Distribution { .. }, Term::Dist(ws)) => {
                let mut entries = Vec::new();
                for (p, w) in ws {
                    match p {
                        Term::Dist(inner) => {
                            for (x, v) in inner {
                                entries.push((x.clone(), w * v));
                            }
                        }
                        other => {
                            return Err(MonadError::Structure(format!(
                                "averaging over non-distribution `{}`",
                                other.name()
                            )))
                        }
                    }
                }
                Term::dist(entries)
            }
            (BuiltinMonad::Writer { monoid }, Term::Tagged(m, inner)) => match inner.as_ref() {
                Term::Tagged(n, x) => Ok(Term::Tagged(monoid.mul(m, n).to_string(), x.clone())),
                other => Err(MonadError::Structure(format!(
                    "writer flatten over `{}`",
                    other.name()
                ))),
            },
            (BuiltinMonad::Maybe, Term::Nothing) => Ok(Term::Nothing),
            (BuiltinMonad::Maybe, Term::Just(inner)) => match inner.as_ref() {
                Term::Nothing => Ok(Term::Nothing),
                Term::Just(x) => Ok(Term::Just(x.clone())),
                other => Err(MonadError::Structure(format!(
                    "maybe flatten over `{}`",
                    other.name()
                ))),
            },
            (BuiltinMonad::List { .. }, Term::Seq(xs)) => {
                let mut out = Vec::new();
                for x in xs {
                    match x {
                        Term::Seq(inner) => out.extend(inner.iter().cloned()),
                        other => {
                            return Err(MonadError::Structure(format!(
                                "concatenation over non-list `{}`",
                                other.name()
                            )))
                        }
                    }
                }
                Ok(Term::Seq(out))
            }
            _ => Err(MonadError::Structure(format!(
                "{} cannot flatten `{}`",
                self.kind(),
                t.name()
            ))),
        }
    }

    /// Deterministic random one-layer term over the base, used for seeded
    /// bounded sweeps; children are picked by the supplied closure.
    fn sample_layer(
        &self,
        rng: &mut ChaCha8Rng,
        child: &mut dyn FnMut(&mut ChaCha8Rng) -> Term,
    ) -> Term {
        match self {
            BuiltinMonad::Powerset => {
                let size = rng.gen_range(0..=4usize);
                let mut set = BTreeSet::new();
                for _ in 0..size {
                    set.insert(child(rng));
                }
                Term::Set(set)
            }
            BuiltinMonad::Distribution { .. } => {
                let size = rng.gen_range(1..=4usize);
                let mut entries: BTreeMap<Term, u64> = BTreeMap::new();
                for _ in 0..size {
                    *entries.entry(child(rng)).or_insert(0) += rng.gen_range(1..=4u64);
                }
                let total: u64 = entries.values().sum();
                Term::dist(
                    entries
                        .into_iter()
                        .map(|(t, k)| (t, Rat::new((k as i64).into(), (total as i64).into())))
                        .collect(),
                )
                .expect("weights normalized by construction")
            }
            BuiltinMonad::Writer { monoid } => {
                let i = rng.gen_range(0..monoid.elements().len());
                Term::Tagged(monoid.elements()[i].clone(), Box::new(child(rng)))
            }
            BuiltinMonad::Maybe => {
                if rng.gen_bool(0.25) {
                    Term::Nothing
                } else {
                    Term::Just(Box::new(child(rng)))
                }
            }
            BuiltinMonad::List { max_length } => {
                let size = rng.gen_range(0..=*max_length.min(&4));
                Term::Seq((0..size).map(|_| child(rng)).collect())
            }
        }
    }

    /// A random element of `T^layers X`.
    pub fn sample_nested(&self, rng: &mut ChaCha8Rng, base: &FinSet, layers: usize) -> Term {
        if layers == 0 {
            let i = rng.gen_range(0..base.len());
            return Term::atom(&base.elements()[i]);
        }
        let monad = self.clone();
        let base = base.clone();
        let mut child =
            move |rng: &mut ChaCha8Rng| monad.sample_nested_inner(rng, &base, layers - 1);
        self.sample_layer(rng, &mut child)
    }

    fn sample_nested_inner(&self, rng: &mut ChaCha8Rng, base: &FinSet, layers: usize) -> Term {
        self.sample_nested(rng, base, layers)
    }

    /// Materializes `T X` as a finite set, together with the term table in
    /// element order. Only defined for finite-carrier monads.
    pub fn apply_set(&self, x: &FinSet) -> Result<(FinSet, Vec<Term>), MonadError> {
        if !self.finite_carrier() {
            return Err(MonadError::NotFiniteCarrier(self.kind().to_string()));
        }
        let atoms: Vec<Term> = x.elements().iter().map(|e| Term::atom(e)).collect();
        let mut named: Vec<(String, Term)> = self
            .enumerate_layer(&atoms)
            .into_iter()
            .map(|t| (t.name(), t))
            .collect();
        named.sort_by(|a, b| a.0.cmp(&b.0));
        named.dedup_by(|a, b| a.0 == b.0);
        let set = FinSet::new(named.iter().map(|(n, _)| n.clone()).collect())?;
        let terms = named.into_iter().map(|(_, t)| t).collect();
        Ok((set, terms))
    }

    /// `T f` as a materialized function.
    pub fn fmap_function(&self, f: &FinFunction) -> Result<FinFunction, MonadError> {
        let (tdom, dom_terms) = self.apply_set(f.domain())?;
        let (tcod, _) = self.apply_set(f.codomain())?;
        let mut mapping = BTreeMap::new();
        for (name, term) in tdom.elements().iter().zip(&dom_terms) {
            let image = self.map_layer(term, &mut |atom| match atom {
                Term::Atom(a) => f
                    .apply(a)
                    .map(Term::atom)
                    .ok_or_else(|| MonadError::UnknownElement(a.clone())),
                other => Ok(other.clone()),
            })?;
            mapping.insert(name.clone(), image.name());
        }
        Ok(FinFunction::new(tdom, tcod, &mapping)?)
    }

    /// The unit `η_X : X -> T X` as a materialized function.
    pub fn unit_function(&self, x: &FinSet) -> Result<FinFunction, MonadError> {
        let (tx, _) = self.apply_set(x)?;
        let mapping: BTreeMap<String, String> = x
            .elements()
            .iter()
            .map(|e| (e.clone(), self.unit_term(&Term::atom(e)).name()))
            .collect();
        Ok(FinFunction::new(x.clone(), tx, &mapping)?)
    }

    /// The multiplication `μ_X : T T X -> T X` as a materialized function.
    pub fn mult_function(&self, x: &FinSet) -> Result<FinFunction, MonadError> {
        let (tx, tx_terms) = self.apply_set(x)?;
        let lookup: BTreeMap<String, Term> = tx
            .elements()
            .iter()
            .cloned()
            .zip(tx_terms.iter().cloned())
            .collect();
        let (ttx, ttx_terms) = self.apply_set(&tx)?;
        let mut mapping = BTreeMap::new();
        for (name, term) in ttx.elements().iter().zip(&ttx_terms) {
            // Substitute inner atoms (names of T X elements) by their terms,
            // then flatten the two structured layers.
            let substituted = self.map_layer(term, &mut |atom| match atom {
                Term::Atom(a) => lookup
                    .get(a)
                    .cloned()
                    .ok_or_else(|| MonadError::UnknownElement(a.clone())),
                other => Ok(other.clone()),
            })?;
            mapping.insert(name.clone(), self.flatten(&substituted)?.name());
        }
        Ok(FinFunction::new(ttx, tx, &mapping)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawCheck {
    pub holds: bool,
    pub witness: Option<String>,
    pub instances: u64,
}

impl LawCheck {
    fn pass(instances: u64) -> LawCheck {
        LawCheck {
            holds: true,
            witness: None,
            instances,
        }
    }

    fn fail(witness: String, instances: u64) -> LawCheck {
        LawCheck {
            holds: false,
            witness: Some(witness),
            instances,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub kind: String,
    /// "exhaustive" or "bounded".
    pub mode: String,
    pub left_unit: LawCheck,
    pub right_unit: LawCheck,
    pub associativity: LawCheck,
    pub unit_natural: LawCheck,
    pub mult_natural: LawCheck,
}

impl LawReport {
    pub fn holds(&self) -> bool {
        self.left_unit.holds
            && self.right_unit.holds
            && self.associativity.holds
            && self.unit_natural.holds
            && self.mult_natural.holds
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LawMode {
    Exhaustive,
    Bounded { seed: u64, samples: u64 },
}

fn functions_equal_witness(a: &FinFunction, b: &FinFunction) -> Option<String> {
    a.domain()
        .elements()
        .iter()
        .find(|e| a.apply(e) != b.apply(e))
        .cloned()
}

/// Checks the three monad law squares on `X`, plus naturality of the unit
/// and multiplication against all functions between subsets of `X`.
pub fn check_monad_laws(
    monad: &BuiltinMonad,
    x: &FinSet,
    mode: LawMode,
    budget: u64,
) -> Result<LawReport, MonadError> {
    match mode {
        LawMode::Exhaustive => check_laws_exhaustive(monad, x, budget),
        LawMode::Bounded { seed, samples } => check_laws_bounded(monad, x, seed, samples),
    }
}

fn check_laws_exhaustive(
    monad: &BuiltinMonad,
    x: &FinSet,
    budget: u64,
) -> Result<LawReport, MonadError> {
    if !monad.finite_carrier() {
        return Err(MonadError::NotFiniteCarrier(monad.kind().to_string()));
    }
    let (tx, _) = monad.apply_set(x)?;
    let (ttx, _) = monad.apply_set(&tx)?;
    // |TTTX| estimate gates the associativity sweep.
    let estimate: u64 = match monad {
        BuiltinMonad::Powerset => 1u64
            .checked_shl(ttx.len().min(63) as u32)
            .unwrap_or(u64::MAX),
        BuiltinMonad::Writer { monoid } => (monoid.elements().len() * ttx.len()) as u64,
        BuiltinMonad::Maybe => ttx.len() as u64 + 1,
        _ => u64::MAX,
    };
    if estimate > budget {
        return Err(MonadError::BudgetExceeded(estimate));
    }
    let id_tx = FinFunction::identity(&tx);
    let unit_x = monad.unit_function(x)?;
    let unit_tx = monad.unit_function(&tx)?;
    let mult_x = monad.mult_function(x)?;
    let mult_tx = monad.mult_function(&tx)?;
    let fmap_unit = monad.fmap_function(&unit_x)?;
    let fmap_mult = monad.fmap_function(&mult_x)?;

    let left = unit_tx.then(&mult_x)?;
    let left_unit = match functions_equal_witness(&left, &id_tx) {
        None => LawCheck::pass(tx.len() as u64),
        Some(w) => LawCheck::fail(w, tx.len() as u64),
    };
    let right = fmap_unit.then(&mult_x)?;
    let right_unit = match functions_equal_witness(&right, &id_tx) {
        None => LawCheck::pass(tx.len() as u64),
        Some(w) => LawCheck::fail(w, tx.len() as u64),
    };
    let assoc_lhs = fmap_mult.then(&mult_x)?;
    let assoc_rhs = mult_tx.then(&mult_x)?;
    let instances = assoc_lhs.domain().len() as u64;
    let associativity = match functions_equal_witness(&assoc_lhs, &assoc_rhs) {
        None => LawCheck::pass(instances),
        Some(w) => LawCheck::fail(w, instances),
    };
    let (unit_natural, mult_natural) = check_naturality(monad, x)?;
    Ok(LawReport {
        kind: monad.kind().to_string(),
        mode: "exhaustive".into(),
        left_unit,
        right_unit,
        associativity,
        unit_natural,
        mult_natural,
    })
}

/// Naturality of η and μ against all functions between subsets of `x`.
fn check_naturality(monad: &BuiltinMonad, x: &FinSet) -> Result<(LawCheck, LawCheck), MonadError> {
    let n = x.len();
    let mut subsets = Vec::new();
    for mask in 0u64..(1 << n.min(6)) {
        let elems: Vec<String> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| x.elements()[i].clone())
            .collect();
        subsets.push(FinSet::new(elems)?);
    }
    let mut unit_nat = LawCheck::pass(0);
    let mut mult_nat = LawCheck::pass(0);
    for a in &subsets {
        for b in &subsets {
            for f in all_functions(a, b) {
                let tf = monad.fmap_function(&f)?;
                // η_B ∘ f = T f ∘ η_A
                let lhs = f.then(&monad.unit_function(b)?)?;
                let rhs = monad.unit_function(a)?.then(&tf)?;
                unit_nat.instances += lhs.domain().len() as u64;
                if let Some(w) = functions_equal_witness(&lhs, &rhs) {
                    if unit_nat.holds {
                        unit_nat.holds = false;
                        unit_nat.witness = Some(w);
                    }
                }
                // T f ∘ μ_A = μ_B ∘ T T f
                let ttf = monad.fmap_function(&tf)?;
                let lhs = monad.mult_function(a)?.then(&tf)?;
                let rhs = ttf.then(&monad.mult_function(b)?)?;
                mult_nat.instances += lhs.domain().len() as u64;
                if let Some(w) = functions_equal_witness(&lhs, &rhs) {
                    if mult_nat.holds {
                        mult_nat.holds = false;
                        mult_nat.witness = Some(w);
                    }
                }
            }
        }
    }
    Ok((unit_nat, mult_nat))
}

/// Upper bound on the size of one monad layer over `n` base elements,
/// saturating at u128::MAX.
fn layer_count_estimate(monad: &BuiltinMonad, n: u128) -> u128 {
    match monad {
        BuiltinMonad::Powerset => {
            if n >= 120 {
                u128::MAX
            } else {
                1u128 << n
            }
        }
        BuiltinMonad::Distribution { max_denominator } => {
            // Compositions of q into n parts, summed over q <= d.
            let mut total: u128 = 0;
            for q in 1..=*max_denominator as u128 {
                let mut c: u128 = 1;
                for i in 0..q {
                    c = c.saturating_mul(n.saturating_add(q - 1 - i));
                    c /= i + 1;
                    if c > 1 << 100 {
                        return u128::MAX;
                    }
                }
                total = total.saturating_add(c);
            }
            total
        }
        BuiltinMonad::Writer { monoid } => n.saturating_mul(monoid.elements().len() as u128),
        BuiltinMonad::Maybe => n.saturating_add(1),
        BuiltinMonad::List { max_length } => {
            let mut total: u128 = 1;
            let mut power: u128 = 1;
            for _ in 0..*max_length {
                power = power.saturating_mul(n.max(1));
                total = total.saturating_add(power);
                if total > 1 << 100 {
                    return u128::MAX;
                }
            }
            total
        }
    }
}

fn check_laws_bounded(
    monad: &BuiltinMonad,
    x: &FinSet,
    seed: u64,
    samples: u64,
) -> Result<LawReport, MonadError> {
    let atoms: Vec<Term> = x.elements().iter().map(|e| Term::atom(e)).collect();
    let tx = monad.enumerate_layer(&atoms);
    // Unit laws over the enumerated T X fragment.
    let mut left_unit = LawCheck::pass(0);
    let mut right_unit = LawCheck::pass(0);
    for t in &tx {
        left_unit.instances += 1;
        let wrapped = monad.unit_term(t);
        if monad.flatten(&wrapped)? != *t && left_unit.holds {
            left_unit = LawCheck::fail(t.name(), left_unit.instances);
        }
        right_unit.instances += 1;
        let mapped = monad.map_layer(t, &mut |c| Ok(monad.unit_term(c)))?;
        if monad.flatten(&mapped)? != *t && right_unit.holds {
            right_unit = LawCheck::fail(t.name(), right_unit.instances);
        }
    }
    // Associativity: enumerate T^3 X when the bounded enumeration is small,
    // otherwise draw seeded samples.
    let mut assoc = LawCheck::pass(0);
    let ttx_estimate = layer_count_estimate(monad, tx.len() as u128);
    let tttx_estimate = layer_count_estimate(monad, ttx_estimate);
    let check_assoc = |t3: &Term, assoc: &mut LawCheck| -> Result<(), MonadError> {
        assoc.instances += 1;
        let via_inner = monad.flatten(&monad.map_layer(t3, &mut |c| monad.flatten(c))?)?;
        let via_outer = monad.flatten(&monad.flatten(t3)?)?;
        if via_inner != via_outer && assoc.holds {
            *assoc = LawCheck::fail(t3.name(), assoc.instances);
        }
        Ok(())
    };
    if tttx_estimate <= 4096 {
        let ttx = monad.enumerate_layer(&tx);
        let tttx = monad.enumerate_layer(&ttx);
        for t3 in &tttx {
            check_assoc(t3, &mut assoc)?;
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let t3 = monad.sample_nested(&mut rng, x, 3);
            check_assoc(&t3, &mut assoc)?;
        }
    }
    // Naturality on the bounded fragment: map along a couple of deterministic
    // endofunctions of X (rotation and a collapse).
    let mut unit_nat = LawCheck::pass(0);
    let mut mult_nat = LawCheck::pass(0);
    let n = x.len();
    if n > 0 {
        let rot = FinFunction::from_fn(x, x, |e| {
            let i = x.position(e).unwrap();
            x.elements()[(i + 1) % n].clone()
        })?;
        let collapse = FinFunction::from_fn(x, x, |_| x.elements()[0].clone())?;
        for f in [rot, collapse] {
            let mut apply_atom = |t: &Term| -> Result<Term, MonadError> {
                match t {
                    Term::Atom(a) => f
                        .apply(a)
                        .map(Term::atom)
                        .ok_or_else(|| MonadError::UnknownElement(a.clone())),
                    other => Ok(other.clone()),
                }
            };
            for e in x.elements() {
                unit_nat.instances += 1;
                let lhs = monad.unit_term(&Term::atom(f.apply(e).unwrap()));
                let rhs = monad.map_layer(&monad.unit_term(&Term::atom(e)), &mut apply_atom)?;
                if lhs != rhs && unit_nat.holds {
                    unit_nat = LawCheck::fail(e.clone(), unit_nat.instances);
                }
            }
            let ttx: Vec<Term> = if layer_count_estimate(monad, tx.len() as u128) <= 65_536 {
                monad.enumerate_layer(&tx)
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
                (0..512).map(|_| monad.sample_nested(&mut rng, x, 2)).collect()
            };
            for t2 in ttx.iter().take(512) {
                mult_nat.instances += 1;
                let lhs = monad.map_layer(&monad.flatten(t2)?, &mut apply_atom)?;
                let rhs = monad.flatten(
                    &monad.map_layer(t2, &mut |inner| monad.map_layer(inner, &mut apply_atom))?,
                )?;
                if lhs != rhs && mult_nat.holds {
                    mult_nat = LawCheck::fail(t2.name(), mult_nat.instances);
                }
            }
        }
    }
    Ok(LawReport {
        kind: monad.kind().to_string(),
        mode: "bounded".into(),
        left_unit,
        right_unit,
        associativity: assoc,
        unit_natural: unit_nat,
        mult_natural: mult_nat,
    })
}

/// A Kleisli morphism at value level: each element of the domain is sent to
/// a one-layer generalized element over the codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KleisliMap {
    pub domain: FinSet,
    pub codomain: FinSet,
    pub map: BTreeMap<String, Term>,
}

impl KleisliMap {
    pub fn new(
        monad: &BuiltinMonad,
        domain: FinSet,
        codomain: FinSet,
        map: BTreeMap<String, Term>,
    ) -> Result<KleisliMap, MonadError> {
        for e in domain.elements() {
            let t = map
                .get(e)
                .ok_or_else(|| MonadError::UnknownElement(e.clone()))?;
            validate_term(monad, t, &codomain)?;
        }
        Ok(KleisliMap {
            domain,
            codomain,
            map,
        })
    }

    /// The Kleisli identity: the unit pointwise.
    pub fn unit(monad: &BuiltinMonad, x: &FinSet) -> KleisliMap {
        KleisliMap {
            domain: x.clone(),
            codomain: x.clone(),
            map: x
                .elements()
                .iter()
                .map(|e| (e.clone(), monad.unit_term(&Term::atom(e))))
                .collect(),
        }
    }

    pub fn apply(&self, x: &str) -> Option<&Term> {
        self.map.get(x)
    }
}

/// Validates that a term is a single monad layer over atoms of `base`.
pub fn validate_term(monad: &BuiltinMonad, t: &Term, base: &FinSet) -> Result<(), MonadError> {
    let check_atom = |a: &Term| -> Result<(), MonadError> {
        match a {
            Term::Atom(s) if base.contains(s) => Ok(()),
            Term::Atom(s) => Err(MonadError::UnknownElement(s.clone())),
            other => Err(MonadError::Structure(format!(
                "expected an atom, found `{}`",
                other.name()
            ))),
        }
    };
    match (monad, t) {
        (BuiltinMonad::Powerset, Term::Set(xs)) => xs.iter().try_for_each(check_atom),
        (BuiltinMonad::Distribution { .. }, Term::Dist(ws)) => {
            let total: Rat = ws.iter().map(|(_, w)| w.clone()).sum();
            if !total.is_one() {
                return Err(MonadError::NotNormalized(t.name()));
            }
            ws.iter().try_for_each(|(x, _)| check_atom(x))
        }
        (BuiltinMonad::Writer { monoid }, Term::Tagged(m, x)) => {
            if !monoid.elements().contains(m) {
                return Err(MonadError::UnknownElement(m.clone()));
            }
            check_atom(x)
        }
        (BuiltinMonad::Maybe, Term::Nothing) => Ok(()),
        (BuiltinMonad::Maybe, Term::Just(x)) => check_atom(x),
        (BuiltinMonad::List { .. }, Term::Seq(xs)) => xs.iter().try_for_each(check_atom),
        _ => Err(MonadError::Structure(format!(
            "`{}` is not a {} value",
            t.name(),
            monad.kind()
        ))),
    }
}

/// Kleisli composition `h ∘ₖ k = μ ∘ T h ∘ k`, evaluated pointwise.
pub fn kleisli_compose(
    monad: &BuiltinMonad,
    k: &KleisliMap,
    h: &KleisliMap,
) -> Result<KleisliMap, MonadError> {
    if k.codomain != h.domain {
        return Err(MonadError::Structure(
            "kleisli maps do not compose: codomain differs from domain".into(),
        ));
    }
    let mut map = BTreeMap::new();
    for x in k.domain.elements() {
        let t = &k.map[x];
        let pushed = monad.map_layer(t, &mut |atom| match atom {
            Term::Atom(y) => h
                .map
                .get(y)
                .cloned()
                .ok_or_else(|| MonadError::UnknownElement(y.clone())),
            other => Ok(other.clone()),
        })?;
        map.insert(x.clone(), monad.flatten(&pushed)?);
    }
    KleisliMap::new(monad, k.domain.clone(), h.codomain.clone(), map)
}

/// A materialized Kleisli category over a universe of sets.
#[derive(Debug, Clone)]
pub struct MaterializedKleisli {
    pub category: FinCategory,
    pub maps: BTreeMap<String, KleisliMap>,
}

fn kleisli_name(k: &KleisliMap) -> String {
    let entries: Vec<String> = k
        .map
        .iter()
        .map(|(x, t)| format!("{x}:{}", t.name()))
        .collect();
    format!(
        "kl{}=>{}[{}]",
        k.domain.name(),
        k.codomain.name(),
        entries.join(";")
    )
}

/// Materializes the Kleisli category: objects are the universe's sets,
/// morphisms all maps `X -> T Y`, identities the units, composition the
/// Kleisli composition. The result passing category validation is the
/// unitality/associativity argument run on concrete data.
pub fn kleisli_category(
    monad: &BuiltinMonad,
    universe: &[FinSet],
    budget: u64,
) -> Result<MaterializedKleisli, MonadError> {
    if !monad.finite_carrier() {
        return Err(MonadError::NotFiniteCarrier(monad.kind().to_string()));
    }
    let mut dedup: BTreeMap<String, FinSet> = BTreeMap::new();
    for s in universe {
        dedup.insert(s.name(), s.clone());
    }
    let mut estimate = 0u64;
    for a in dedup.values() {
        for b in dedup.values() {
            let (tb, _) = monad.apply_set(b)?;
            estimate = estimate.saturating_add(
                (tb.len() as u64)
                    .checked_pow(a.len() as u32)
                    .unwrap_or(u64::MAX),
            );
        }
    }
    if estimate > budget {
        return Err(MonadError::BudgetExceeded(estimate));
    }
    let mut maps: BTreeMap<String, KleisliMap> = BTreeMap::new();
    let mut morphisms = Vec::new();
    for a in dedup.values() {
        for b in dedup.values() {
            let (_, tb_terms) = monad.apply_set(b)?;
            // All assignments a -> terms of T b.
            let n = a.len();
            if tb_terms.is_empty() && n > 0 {
                continue;
            }
            let mut pick = vec![0usize; n];
            loop {
                let map: BTreeMap<String, Term> = a
                    .elements()
                    .iter()
                    .enumerate()
                    .map(|(i, x)| (x.clone(), tb_terms[pick[i]].clone()))
                    .collect();
                let k = KleisliMap {
                    domain: a.clone(),
                    codomain: b.clone(),
                    map,
                };
                let name = kleisli_name(&k);
                morphisms.push(Morphism {
                    name: name.clone(),
                    src: a.name(),
                    tgt: b.name(),
                });
                maps.insert(name, k);
                let mut done = n == 0;
                let mut i = n;
                while i > 0 {
                    i -= 1;
                    pick[i] += 1;
                    if pick[i] < tb_terms.len() {
                        break;
                    }
                    pick[i] = 0;
                    if i == 0 {
                        done = true;
                    }
                }
                if done {
                    break;
                }
            }
        }
    }
    let identities: BTreeMap<String, String> = dedup
        .values()
        .map(|s| (s.name(), kleisli_name(&KleisliMap::unit(monad, s))))
        .collect();
    let mut compose = Vec::new();
    for k in maps.values() {
        for h in maps.values() {
            if k.codomain == h.domain {
                let c = kleisli_compose(monad, k, h)?;
                compose.push(ComposeEntry {
                    first: kleisli_name(k),
                    then: kleisli_name(h),
                    equals: kleisli_name(&c),
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
    Ok(MaterializedKleisli {
        category: FinCategory::validate(&raw)?,
        maps,
    })
}

/// An algebra `(A, e : T A -> A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    pub carrier: FinSet,
    pub structure: FinFunction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraVerdict {
    pub unit_square: LawCheck,
    pub mult_square: LawCheck,
}

impl AlgebraVerdict {
    pub fn holds(&self) -> bool {
        self.unit_square.holds && self.mult_square.holds
    }
}

/// Checks the two algebra squares elementwise.
pub fn check_algebra(monad: &BuiltinMonad, alg: &Algebra) -> Result<AlgebraVerdict, MonadError> {
    let (ta, _) = monad.apply_set(&alg.carrier)?;
    if alg.structure.domain() != &ta || alg.structure.codomain() != &alg.carrier {
        return Err(MonadError::Structure(
            "structure map must go from T A to A".into(),
        ));
    }
    let unit = monad.unit_function(&alg.carrier)?;
    let lhs = unit.then(&alg.structure)?;
    let id_a = FinFunction::identity(&alg.carrier);
    let unit_square = match functions_equal_witness(&lhs, &id_a) {
        None => LawCheck::pass(alg.carrier.len() as u64),
        Some(w) => LawCheck::fail(w, alg.carrier.len() as u64),
    };
    let te = monad.fmap_function(&alg.structure)?;
    let mult = monad.mult_function(&alg.carrier)?;
    let lhs = te.then(&alg.structure)?;
    let rhs = mult.then(&alg.structure)?;
    let mult_square = match functions_equal_witness(&lhs, &rhs) {
        None => LawCheck::pass(lhs.domain().len() as u64),
        Some(w) => LawCheck::fail(w, lhs.domain().len() as u64),
    };
    Ok(AlgebraVerdict {
        unit_square,
        mult_square,
    })
}

/// The free algebra `(T X, μ_X)`.
pub fn free_algebra(monad: &BuiltinMonad, x: &FinSet) -> Result<Algebra, MonadError> {
    let (tx, _) = monad.apply_set(x)?;
    Ok(Algebra {
        carrier: tx,
        structure: monad.mult_function(x)?,
    })
}

/// Checks the algebra-morphism square `e_B ∘ T f = f ∘ e_A`.
pub fn check_algebra_morphism(
    monad: &BuiltinMonad,
    a: &Algebra,
    b: &Algebra,
    f: &FinFunction,
) -> Result<LawCheck, MonadError> {
    if f.domain() != &a.carrier || f.codomain() != &b.carrier {
        return Err(MonadError::Structure("morphism endpoints must match the carriers".into()));
    }
    let tf = monad.fmap_function(f)?;
    let lhs = tf.then(&b.structure)?;
    let rhs = a.structure.then(f)?;
    Ok(match functions_equal_witness(&lhs, &rhs) {
        None => LawCheck::pass(lhs.domain().len() as u64),
        Some(w) => LawCheck::fail(w, lhs.domain().len() as u64),
    })
}

#[derive(Debug, Clone)]
pub struct EmExtension {
    pub morphism: FinFunction,
    /// Exhaustive confirmation that no other algebra morphism satisfies the
    /// triangle.
    pub unique: bool,
}

/// The unique algebra morphism `(T X, μ) -> (A, e)` extending `f : X -> A`:
/// computed as `e ∘ T f`, with the triangle and uniqueness re-verified by
/// brute force.
pub fn em_extension(
    monad: &BuiltinMonad,
    x: &FinSet,
    alg: &Algebra,
    f: &FinFunction,
) -> Result<EmExtension, MonadError> {
    let tf = monad.fmap_function(f)?;
    let morphism = tf.then(&alg.structure)?;
    let unit = monad.unit_function(x)?;
    let triangle = unit.then(&morphism)?;
    if &triangle != f {
        return Err(MonadError::Structure(
            "extension does not restrict to f along the unit".into(),
        ));
    }
    let free = free_algebra(monad, x)?;
    let mut found = 0usize;
    for cand in all_functions(&free.carrier, &alg.carrier) {
        let is_morphism = check_algebra_morphism(monad, &free, alg, &cand)?.holds;
        let restricts = unit.then(&cand)? == *f;
        if is_morphism && restricts {
            found += 1;
        }
    }
    Ok(EmExtension {
        morphism,
        unique: found == 1,
    })
}

/// A materialized Eilenberg-Moore category over a universe of carriers.
#[derive(Debug, Clone)]
pub struct MaterializedEm {
    pub category: FinCategory,
    pub algebras: BTreeMap<String, Algebra>,
}

fn algebra_name(a: &Algebra) -> String {
    format!("alg({};{})", a.carrier.name(), a.structure.name())
}

/// Enumerates all algebras on the universe's carriers and all algebra
/// morphisms between them; the result is validated as a category.
pub fn materialize_em_category(
    monad: &BuiltinMonad,
    universe: &[FinSet],
    budget: u64,
) -> Result<MaterializedEm, MonadError> {
    if !monad.finite_carrier() {
        return Err(MonadError::NotFiniteCarrier(monad.kind().to_string()));
    }
    let mut dedup: BTreeMap<String, FinSet> = BTreeMap::new();
    for s in universe {
        dedup.insert(s.name(), s.clone());
    }
    let mut estimate = 0u64;
    for a in dedup.values() {
        let (ta, _) = monad.apply_set(a)?;
        estimate = estimate.saturating_add(
            (a.len() as u64)
                .checked_pow(ta.len() as u32)
                .unwrap_or(u64::MAX),
        );
    }
    if estimate > budget {
        return Err(MonadError::BudgetExceeded(estimate));
    }
    let mut algebras: BTreeMap<String, Algebra> = BTreeMap::new();
    for a in dedup.values() {
        let (ta, _) = monad.apply_set(a)?;
        for e in all_functions(&ta, a) {
            let alg = Algebra {
                carrier: a.clone(),
                structure: e,
            };
            if check_algebra(monad, &alg)?.holds() {
                algebras.insert(algebra_name(&alg), alg);
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut underlying: BTreeMap<String, (FinFunction, String, String)> = BTreeMap::new();
    let mor_name = |f: &FinFunction, a: &str, b: &str| format!("{}:{a}->{b}", f.name());
    for (an, a) in &algebras {
        for (bn, b) in &algebras {
            for f in all_functions(&a.carrier, &b.carrier) {
                if check_algebra_morphism(monad, a, b, &f)?.holds {
                    let name = mor_name(&f, an, bn);
                    morphisms.push(Morphism {
                        name: name.clone(),
                        src: an.clone(),
                        tgt: bn.clone(),
                    });
                    underlying.insert(name, (f, an.clone(), bn.clone()));
                }
            }
        }
    }
    let identities: BTreeMap<String, String> = algebras
        .iter()
        .map(|(n, a)| (n.clone(), mor_name(&FinFunction::identity(&a.carrier), n, n)))
        .collect();
    let mut compose = Vec::new();
    for (n1, (f, _, b1)) in &underlying {
        for (n2, (g, b2, c)) in &underlying {
            if b1 == b2 {
                let fg = f.then(g)?;
                compose.push(ComposeEntry {
                    first: n1.clone(),
                    then: n2.clone(),
                    equals: mor_name(&fg, underlying[n1].1.as_str(), c),
                });
            }
        }
    }
    let raw = RawCategory {
        objects: algebras.keys().cloned().collect(),
        morphisms,
        identities,
        compose,
    };
    Ok(MaterializedEm {
        category: FinCategory::validate(&raw)?,
        algebras,
    })
}

/// The built-in comonads on finite sets.
#[derive(Debug, Clone)]
pub enum BuiltinComonad {
    Reader { env: FinSet },
}

impl BuiltinComonad {
    pub fn kind(&self) -> &'static str {
        match self {
            BuiltinComonad::Reader { .. } => "reader",
        }
    }

    /// Materializes `C X` with the term table.
    pub fn apply_set(&self, x: &FinSet) -> Result<(FinSet, Vec<Term>), MonadError> {
        let BuiltinComonad::Reader { env } = self;
        let mut named: Vec<(String, Term)> = Vec::new();
        for a in x.elements() {
            for e in env.elements() {
                let t = Term::WithEnv(Box::new(Term::atom(a)), e.clone());
                named.push((t.name(), t));
            }
        }
        named.sort_by(|a, b| a.0.cmp(&b.0));
        let set = FinSet::new(named.iter().map(|(n, _)| n.clone()).collect())?;
        Ok((set, named.into_iter().map(|(_, t)| t).collect()))
    }

    pub fn fmap_function(&self, f: &FinFunction) -> Result<FinFunction, MonadError> {
        let (cdom, dom_terms) = self.apply_set(f.domain())?;
        let (ccod, _) = self.apply_set(f.codomain())?;
        let mut mapping = BTreeMap::new();
        for (name, term) in cdom.elements().iter().zip(&dom_terms) {
            let Term::WithEnv(inner, e) = term else {
                return Err(MonadError::Structure("reader value expected".into()));
            };
            let Term::Atom(a) = inner.as_ref() else {
                return Err(MonadError::Structure("reader over atoms expected".into()));
            };
            let fa = f
                .apply(a)
                .ok_or_else(|| MonadError::UnknownElement(a.clone()))?;
            mapping.insert(
                name.clone(),
                Term::WithEnv(Box::new(Term::atom(fa)), e.clone()).name(),
            );
        }
        Ok(FinFunction::new(cdom, ccod, &mapping)?)
    }

    /// Counit `ε(x, e) = x`.
    pub fn counit_function(&self, x: &FinSet) -> Result<FinFunction, MonadError> {
        let (cx, terms) = self.apply_set(x)?;
        let mut mapping = BTreeMap::new();
        for (name, term) in cx.elements().iter().zip(&terms) {
            let Term::WithEnv(inner, _) = term else {
                return Err(MonadError::Structure("reader value expected".into()));
            };
            mapping.insert(name.clone(), inner.name());
        }
        Ok(FinFunction::new(cx, x.clone(), &mapping)?)
    }

    /// Comultiplication `ν(x, e) = ((x, e), e)`: copies the environment.
    pub fn comult_function(&self, x: &FinSet) -> Result<FinFunction, MonadError> {
        let (cx, terms) = self.apply_set(x)?;
        let (ccx, _) = self.apply_set(&cx)?;
        let mut mapping = BTreeMap::new();
        for (name, term) in cx.elements().iter().zip(&terms) {
            let Term::WithEnv(_, e) = term else {
                return Err(MonadError::Structure("reader value expected".into()));
            };
            let doubled = Term::WithEnv(Box::new(Term::atom(name)), e.clone());
            mapping.insert(name.clone(), doubled.name());
        }
        Ok(FinFunction::new(cx, ccx, &mapping)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComonadLawReport {
    pub left_counit: LawCheck,
    pub right_counit: LawCheck,
    pub coassociativity: LawCheck,
}

impl ComonadLawReport {
    pub fn holds(&self) -> bool {
        self.left_counit.holds && self.right_counit.holds && self.coassociativity.holds
    }
}

/// Checks the comonad laws exhaustively on `X`.
pub fn check_comonad_laws(
    comonad: &BuiltinComonad,
    x: &FinSet,
) -> Result<ComonadLawReport, MonadError> {
    let (cx, _) = comonad.apply_set(x)?;
    let id_cx = FinFunction::identity(&cx);
    let nu = comonad.comult_function(x)?;
    let eps_cx = comonad.counit_function(&cx)?;
    let lhs = nu.then(&eps_cx)?;
    let left_counit = match functions_equal_witness(&lhs, &id_cx) {
        None => LawCheck::pass(cx.len() as u64),
        Some(w) => LawCheck::fail(w, cx.len() as u64),
    };
    let eps_x = comonad.counit_function(x)?;
    let ceps = comonad.fmap_function(&eps_x)?;
    let lhs = nu.then(&ceps)?;
    let right_counit = match functions_equal_witness(&lhs, &id_cx) {
        None => LawCheck::pass(cx.len() as u64),
        Some(w) => LawCheck::fail(w, cx.len() as u64),
    };
    let nu_cx = comonad.comult_function(&cx)?;
    let cnu = comonad.fmap_function(&nu)?;
    let lhs = nu.then(&nu_cx)?;
    let rhs = nu.then(&cnu)?;
    let coassociativity = match functions_equal_witness(&lhs, &rhs) {
        None => LawCheck::pass(cx.len() as u64),
        Some(w) => LawCheck::fail(w, cx.len() as u64),
    };
    Ok(ComonadLawReport {
        left_counit,
        right_counit,
        coassociativity,
    })
}

/// Co-Kleisli composition `h ∘ck k = h ∘ C k ∘ ν`.
pub fn cokleisli_compose(
    comonad: &BuiltinComonad,
    k: &FinFunction,
    h: &FinFunction,
) -> Result<FinFunction, MonadError> {
    // k : C X -> Y, h : C Y -> Z.
    let x = infer_reader_base(comonad, k.domain())?;
    let nu = comonad.comult_function(&x)?;
    let ck = comonad.fmap_function(k)?;
    Ok(nu.then(&ck)?.then(h)?)
}

fn infer_reader_base(comonad: &BuiltinComonad, cx: &FinSet) -> Result<FinSet, MonadError> {
    // Recover X from the element names `(x|e)`.
    let BuiltinComonad::Reader { env } = comonad;
    let mut xs = BTreeSet::new();
    for name in cx.elements() {
        let stripped = name
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| MonadError::Structure(format!("`{name}` is not a reader pair")))?;
        let (x, e) = stripped
            .rsplit_once('|')
            .ok_or_else(|| MonadError::Structure(format!("`{name}` is not a reader pair")))?;
        if !env.contains(e) {
            return Err(MonadError::UnknownElement(e.to_string()));
        }
        xs.insert(x.to_string());
    }
    let base = FinSet::new(xs.into_iter().collect())?;
    let (expect, _) = comonad.apply_set(&base)?;
    if &expect != cx {
        return Err(MonadError::Structure(
            "domain is not a full reader carrier".into(),
        ));
    }
    Ok(base)
}

/// A coalgebra `(A, i : A -> C A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coalgebra {
    pub carrier: FinSet,
    pub structure: FinFunction,
}

/// Checks the coalgebra squares `ε ∘ i = id` and `ν ∘ i = C i ∘ i`.
pub fn check_coalgebra(
    comonad: &BuiltinComonad,
    coalg: &Coalgebra,
) -> Result<AlgebraVerdict, MonadError> {
    let (ca, _) = comonad.apply_set(&coalg.carrier)?;
    if coalg.structure.domain() != &coalg.carrier || coalg.structure.codomain() != &ca {
        return Err(MonadError::Structure(
            "structure map must go from A to C A".into(),
        ));
    }
    let eps = comonad.counit_function(&coalg.carrier)?;
    let lhs = coalg.structure.then(&eps)?;
    let id_a = FinFunction::identity(&coalg.carrier);
    let unit_square = match functions_equal_witness(&lhs, &id_a) {
        None => LawCheck::pass(coalg.carrier.len() as u64),
        Some(w) => LawCheck::fail(w, coalg.carrier.len() as u64),
    };
    let nu = comonad.comult_function(&coalg.carrier)?;
    let ci = comonad.fmap_function(&coalg.structure)?;
    let lhs = coalg.structure.then(&nu)?;
    let rhs = coalg.structure.then(&ci)?;
    let mult_square = match functions_equal_witness(&lhs, &rhs) {
        None => LawCheck::pass(lhs.domain().len() as u64),
        Some(w) => LawCheck::fail(w, lhs.domain().len() as u64),
    };
    Ok(AlgebraVerdict {
        unit_square,
        mult_square,
    })
}

/// A row-stochastic matrix with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StochasticMatrix {
    pub rows: FinSet,
    pub cols: FinSet,
    /// `entries[i][j]` indexed by row (domain) and column (codomain) order.
    pub entries: Vec<Vec<Rat>>,
}

impl StochasticMatrix {
    pub fn entry(&self, row: &str, col: &str) -> Option<&Rat> {
        let i = self.rows.position(row)?;
        let j = self.cols.position(col)?;
        Some(&self.entries[i][j])
    }
}

/// Converts a distribution Kleisli map into its row-stochastic matrix.
pub fn kernel_to_matrix(k: &KleisliMap) -> Result<StochasticMatrix, MonadError> {
    let mut entries = Vec::new();
    for x in k.domain.elements() {
        let t = &k.map[x];
        let Term::Dist(ws) = t else {
            return Err(MonadError::Structure(format!(
                "`{}` is not a distribution",
                t.name()
            )));
        };
        let mut row = vec![Rat::zero(); k.codomain.len()];
        for (y, w) in ws {
            let Term::Atom(name) = y else {
                return Err(MonadError::Structure("distribution over atoms expected".into()));
            };
            let j = k
                .codomain
                .position(name)
                .ok_or_else(|| MonadError::UnknownElement(name.clone()))?;
            row[j] += w;
        }
        let total: Rat = row.iter().cloned().sum();
        if !total.is_one() {
            return Err(MonadError::NotNormalized(x.clone()));
        }
        entries.push(row);
    }
    Ok(StochasticMatrix {
        rows: k.domain.clone(),
        cols: k.codomain.clone(),
        entries,
    })
}

/// Converts a row-stochastic matrix back into a Kleisli map.
pub fn matrix_to_kernel(m: &StochasticMatrix) -> Result<KleisliMap, MonadError> {
    let mut map = BTreeMap::new();
    for (i, x) in m.rows.elements().iter().enumerate() {
        let entries: Vec<(Term, Rat)> = m.cols
            .elements()
            .iter()
            .enumerate()
            .filter(|(j, _)| !m.entries[i][*j].is_zero())
            .map(|(j, y)| (Term::atom(y), m.entries[i][j].clone()))
            .collect();
        let total: Rat = entries.iter().map(|(_, w)| w.clone()).sum();
        if !total.is_one() {
            return Err(MonadError::NotNormalized(x.clone()));
        }
        map.insert(x.clone(), Term::Dist(entries));
    }
    Ok(KleisliMap {
        domain: m.rows.clone(),
        codomain: m.cols.clone(),
        map,
    })
}

/// Independent oracle: plain matrix multiplication, `(a · b)(x, z) =
/// Σ_y a(x, y) b(y, z)`.
pub fn matrix_product(
    a: &StochasticMatrix,
    b: &StochasticMatrix,
) -> Result<StochasticMatrix, MonadError> {
    if a.cols != b.rows {
        return Err(MonadError::Structure("matrix shapes do not compose".into()));
    }
    let mut entries = vec![vec![Rat::zero(); b.cols.len()]; a.rows.len()];
    for (i, row) in entries.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let mut acc = Rat::zero();
            for k in 0..a.cols.len() {
                acc += &a.entries[i][k] * &b.entries[k][j];
            }
            *cell = acc;
        }
    }
    Ok(StochasticMatrix {
        rows: a.rows.clone(),
        cols: b.cols.clone(),
        entries,
    })
}
