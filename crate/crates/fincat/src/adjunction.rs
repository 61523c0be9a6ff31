//! Adjunctions between finite categories, stored as unit/counit data, with
//! the transpose calculus, induced monads/comonads, the Kleisli and
//! Eilenberg-Moore constructions at category level, comparison functors, and
//! a desk-scale monadicity check.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::category::{CategoryError, ComposeEntry, FinCategory, Morphism, RawCategory};
use crate::functor::{
    check_equivalence, find_natural_iso, EquivalenceWitness, FinFunctor, FunctorError, NatTrans,
};
use crate::order::{monotone_as_functor, GaloisConnection, OrderError};
use crate::universal::{check_preservation, enumerate_cones, Cone, Diagram, PreservationVerdict, UniversalError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdjunctionError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("triangle identity ({side:?}) fails at object `{object}`")]
    TriangleViolation { side: TriangleSide, object: String },
    #[error("transposes are not mutually inverse on Hom pair ({0}, {1})")]
    TransposeNotBijective(String, String),
    #[error("morphism `{0}` is not in the required hom-set")]
    WrongHomSet(String),
    #[error("derived law failed, which indicates an upstream bug: {0}")]
    LawFailure(String),
    #[error("enumeration budget exceeded (estimated {0})")]
    BudgetExceeded(u64),
    #[error(transparent)]
    Functor(#[from] FunctorError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Universal(#[from] UniversalError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleSide {
    /// ε_{FC} ∘ F η_C = id_{FC}
    First,
    /// G ε_D ∘ η_{GD} = id_{GD}
    Second,
}

/// A validated adjunction `left ⊣ right` with unit and counit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjunction {
    left: FinFunctor,
    right: FinFunctor,
    unit: NatTrans,
    counit: NatTrans,
}

impl Adjunction {
    /// Validates the triangle identities exhaustively and additionally
    /// verifies that the derived transposes are mutually inverse bijections
    /// on every hom pair.
    pub fn new(
        left: FinFunctor,
        right: FinFunctor,
        unit: NatTrans,
        counit: NatTrans,
    ) -> Result<Adjunction, AdjunctionError> {
        if left.source() != right.target() || left.target() != right.source() {
            return Err(AdjunctionError::ShapeMismatch(
                "functors must form a pair C -> D, D -> C".into(),
            ));
        }
        let composite_gf = left.then(&right)?;
        if unit.source_functor() != &FinFunctor::identity(left.source())
            || unit.target_functor() != &composite_gf
        {
            return Err(AdjunctionError::ShapeMismatch(
                "unit must go from the identity to right ∘ left".into(),
            ));
        }
        let composite_fg = right.then(&left)?;
        if counit.source_functor() != &composite_fg
            || counit.target_functor() != &FinFunctor::identity(left.target())
        {
            return Err(AdjunctionError::ShapeMismatch(
                "counit must go from left ∘ right to the identity".into(),
            ));
        }
        let adj = Adjunction {
            left,
            right,
            unit,
            counit,
        };
        adj.check_triangles()?;
        adj.check_transposes()?;
        Ok(adj)
    }

    fn check_triangles(&self) -> Result<(), AdjunctionError> {
        let c_cat = self.left.source();
        let d_cat = self.left.target();
        for c in c_cat.objects() {
            let fc = self.left.on_object(c);
            let f_eta = self.left.on_morphism(self.unit.component(c));
            let eps_fc = self.counit.component(fc);
            let composite = d_cat.compose(f_eta, eps_fc);
            if composite != d_cat.identity_of(fc) {
                return Err(AdjunctionError::TriangleViolation {
                    side: TriangleSide::First,
                    object: c.clone(),
                });
            }
        }
        for d in d_cat.objects() {
            let gd = self.right.on_object(d);
            let eta_gd = self.unit.component(gd);
            let g_eps = self.right.on_morphism(self.counit.component(d));
            let composite = c_cat.compose(eta_gd, g_eps);
            if composite != c_cat.identity_of(gd) {
                return Err(AdjunctionError::TriangleViolation {
                    side: TriangleSide::Second,
                    object: d.clone(),
                });
            }
        }
        Ok(())
    }

    pub(crate) fn check_transposes(&self) -> Result<(), AdjunctionError> {
        let c_cat = self.left.source();
        let d_cat = self.left.target();
        for c in c_cat.objects() {
            for d in d_cat.objects() {
                let sharp_side = d_cat.hom(self.left.on_object(c), d);
                let flat_side = c_cat.hom(c, self.right.on_object(d));
                if sharp_side.len() != flat_side.len() {
                    return Err(AdjunctionError::TransposeNotBijective(c.clone(), d.clone()));
                }
                for f in &sharp_side {
                    let flat = self.flat(c, d, f)?;
                    let back = self.sharp(c, d, &flat)?;
                    if &back != f {
                        return Err(AdjunctionError::TransposeNotBijective(c.clone(), d.clone()));
                    }
                }
                for g in &flat_side {
                    let sharp = self.sharp(c, d, g)?;
                    let back = self.flat(c, d, &sharp)?;
                    if &back != g {
                        return Err(AdjunctionError::TransposeNotBijective(c.clone(), d.clone()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn left(&self) -> &FinFunctor {
        &self.left
    }

    pub fn right(&self) -> &FinFunctor {
        &self.right
    }

    pub fn unit(&self) -> &NatTrans {
        &self.unit
    }

    pub fn counit(&self) -> &NatTrans {
        &self.counit
    }

    pub fn source(&self) -> &FinCategory {
        self.left.source()
    }

    pub fn target(&self) -> &FinCategory {
        self.left.target()
    }

    /// `♭(f) = G f ∘ η_C` for `f : F C -> D`.
    pub fn flat(&self, c: &str, d: &str, f: &str) -> Result<String, AdjunctionError> {
        let c_cat = self.left.source();
        let m = self
            .left
            .target()
            .morphism(f)
            .ok_or_else(|| AdjunctionError::WrongHomSet(f.to_string()))?;
        if m.src != *self.left.on_object(c) || m.tgt != d {
            return Err(AdjunctionError::WrongHomSet(f.to_string()));
        }
        c_cat
            .compose(self.unit.component(c), self.right.on_morphism(f))
            .map(|s| s.to_string())
            .ok_or_else(|| AdjunctionError::WrongHomSet(f.to_string()))
    }

    /// `♯(g) = ε_D ∘ F g` for `g : C -> G D`.
    pub fn sharp(&self, c: &str, d: &str, g: &str) -> Result<String, AdjunctionError> {
        let d_cat = self.left.target();
        let m = self
            .left
            .source()
            .morphism(g)
            .ok_or_else(|| AdjunctionError::WrongHomSet(g.to_string()))?;
        if m.src != c || m.tgt != *self.right.on_object(d) {
            return Err(AdjunctionError::WrongHomSet(g.to_string()));
        }
        d_cat
            .compose(self.left.on_morphism(g), self.counit.component(d))
            .map(|s| s.to_string())
            .ok_or_else(|| AdjunctionError::WrongHomSet(g.to_string()))
    }

    /// The identity adjunction on a category.
    pub fn identity(cat: &FinCategory) -> Adjunction {
        let id = FinFunctor::identity(cat);
        Adjunction::new(
            id.clone(),
            id.clone(),
            NatTrans::identity(&id),
            NatTrans::identity(&id),
        )
        .expect("identity adjunction is valid")
    }
}

/// Builds the thin adjunction between the induced categories of a validated
/// Galois connection.
pub fn galois_to_adjunction(gc: &GaloisConnection) -> Result<Adjunction, AdjunctionError> {
    let left = monotone_as_functor(&gc.lower)?;
    let right = monotone_as_functor(&gc.upper)?;
    let x = gc.lower.source();
    let unit_components: BTreeMap<String, String> = x
        .elements()
        .iter()
        .map(|a| {
            (
                a.clone(),
                format!("le({a},{})", gc.upper.apply(gc.lower.apply(a))),
            )
        })
        .collect();
    let unit = NatTrans::new(
        FinFunctor::identity(left.source()),
        left.then(&right)?,
        unit_components,
    )?;
    let y = gc.lower.target();
    let counit_components: BTreeMap<String, String> = y
        .elements()
        .iter()
        .map(|b| {
            (
                b.clone(),
                format!("le({},{b})", gc.lower.apply(gc.upper.apply(b))),
            )
        })
        .collect();
    let counit = NatTrans::new(
        right.then(&left)?,
        FinFunctor::identity(left.target()),
        counit_components,
    )?;
    Adjunction::new(left, right, unit, counit)
}

/// Reads a thin adjunction back as a Galois connection, when both categories
/// are thin.
pub fn adjunction_to_galois(adj: &Adjunction) -> Option<GaloisConnection> {
    let to_preorder = |cat: &FinCategory| -> Option<crate::order::FinPreorder> {
        let mut pairs = std::collections::BTreeSet::new();
        for x in cat.objects() {
            for y in cat.objects() {
                match cat.hom(x, y).len() {
                    0 => {}
                    1 => {
                        pairs.insert((x.clone(), y.clone()));
                    }
                    _ => return None,
                }
            }
        }
        crate::order::FinPreorder::new(cat.objects().to_vec(), pairs).ok()
    };
    let c = to_preorder(adj.source())?;
    let d = to_preorder(adj.target())?;
    let lower = crate::order::MonotoneMap::new(&c, &d, adj.left.object_map()).ok()?;
    let upper = crate::order::MonotoneMap::new(&d, &c, adj.right.object_map()).ok()?;
    GaloisConnection::new(lower, upper).ok()
}

/// A monad on a finite category: endofunctor with unit and multiplication,
/// all law squares re-verified at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatMonad {
    endofunctor: FinFunctor,
    unit: NatTrans,
    mult: NatTrans,
}

impl CatMonad {
    pub fn new(endofunctor: FinFunctor, unit: NatTrans, mult: NatTrans) -> Result<CatMonad, AdjunctionError> {
        if endofunctor.source() != endofunctor.target() {
            return Err(AdjunctionError::ShapeMismatch("monad needs an endofunctor".into()));
        }
        let m = CatMonad {
            endofunctor,
            unit,
            mult,
        };
        m.check_laws()?;
        Ok(m)
    }

    pub fn base(&self) -> &FinCategory {
        self.endofunctor.source()
    }

    pub fn endofunctor(&self) -> &FinFunctor {
        &self.endofunctor
    }

    pub fn unit(&self) -> &NatTrans {
        &self.unit
    }

    pub fn mult(&self) -> &NatTrans {
        &self.mult
    }

    fn check_laws(&self) -> Result<(), AdjunctionError> {
        let cat = self.base();
        let t = &self.endofunctor;
        for c in cat.objects() {
            let tc = t.on_object(c);
            let id_tc = cat.identity_of(tc);
            // μ_C ∘ η_{TC}
            let left = cat.compose(self.unit.component(tc), self.mult.component(c));
            if left != id_tc {
                return Err(AdjunctionError::LawFailure(format!(
                    "left unitality fails at `{c}`"
                )));
            }
            // μ_C ∘ T η_C
            let right = cat.compose(t.on_morphism(self.unit.component(c)), self.mult.component(c));
            if right != id_tc {
                return Err(AdjunctionError::LawFailure(format!(
                    "right unitality fails at `{c}`"
                )));
            }
            // μ_C ∘ T μ_C  =  μ_C ∘ μ_{TC}
            let lhs = cat.compose(t.on_morphism(self.mult.component(c)), self.mult.component(c));
            let rhs = cat.compose(self.mult.component(tc), self.mult.component(c));
            if lhs != rhs || lhs.is_none() {
                return Err(AdjunctionError::LawFailure(format!(
                    "associativity fails at `{c}`"
                )));
            }
        }
        Ok(())
    }
}

/// A comonad on a finite category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatComonad {
    endofunctor: FinFunctor,
    counit: NatTrans,
    comult: NatTrans,
}

impl CatComonad {
    pub fn new(
        endofunctor: FinFunctor,
        counit: NatTrans,
        comult: NatTrans,
    ) -> Result<CatComonad, AdjunctionError> {
        let m = CatComonad {
            endofunctor,
            counit,
            comult,
        };
        m.check_laws()?;
        Ok(m)
    }

    pub fn base(&self) -> &FinCategory {
        self.endofunctor.source()
    }

    pub fn counit(&self) -> &NatTrans {
        &self.counit
    }

    pub fn comult(&self) -> &NatTrans {
        &self.comult
    }

    fn check_laws(&self) -> Result<(), AdjunctionError> {
        let cat = self.base();
        let t = &self.endofunctor;
        for d in cat.objects() {
            let td = t.on_object(d);
            let id_td = cat.identity_of(td);
            // ε_{TD} ∘ ν_D
            let left = cat.compose(self.comult.component(d), self.counit.component(td));
            if left != id_td {
                return Err(AdjunctionError::LawFailure(format!(
                    "left counitality fails at `{d}`"
                )));
            }
            // T ε_D ∘ ν_D
            let right = cat.compose(self.comult.component(d), t.on_morphism(self.counit.component(d)));
            if right != id_td {
                return Err(AdjunctionError::LawFailure(format!(
                    "right counitality fails at `{d}`"
                )));
            }
            // ν_{TD} ∘ ν_D  =  T ν_D ∘ ν_D
            let lhs = cat.compose(self.comult.component(d), self.comult.component(td));
            let rhs = cat.compose(self.comult.component(d), t.on_morphism(self.comult.component(d)));
            if lhs != rhs || lhs.is_none() {
                return Err(AdjunctionError::LawFailure(format!(
                    "coassociativity fails at `{d}`"
                )));
            }
        }
        Ok(())
    }
}

/// The monad `(G F, η, G ε F)` induced by an adjunction.
pub fn induced_monad(adj: &Adjunction) -> Result<CatMonad, AdjunctionError> {
    let t = adj.left.then(&adj.right)?;
    let mult_components: BTreeMap<String, String> = adj
        .source()
        .objects()
        .iter()
        .map(|c| {
            let eps_fc = adj.counit.component(adj.left.on_object(c));
            (c.clone(), adj.right.on_morphism(eps_fc).to_string())
        })
        .collect();
    let mult = NatTrans::new(t.then(&t)?, t.clone(), mult_components)?;
    CatMonad::new(t, adj.unit.clone(), mult)
}

/// The comonad `(F G, ε, F η G)` induced by an adjunction.
pub fn induced_comonad(adj: &Adjunction) -> Result<CatComonad, AdjunctionError> {
    let t = adj.right.then(&adj.left)?;
    let comult_components: BTreeMap<String, String> = adj
        .target()
        .objects()
        .iter()
        .map(|d| {
            let eta_gd = adj.unit.component(adj.right.on_object(d));
            (d.clone(), adj.left.on_morphism(eta_gd).to_string())
        })
        .collect();
    let comult = NatTrans::new(t.clone(), t.then(&t)?, comult_components)?;
    CatComonad::new(t, adj.counit.clone(), comult)
}

/// A materialized Kleisli category of a monad on a finite category, with the
/// two functors of the Kleisli adjunction.
#[derive(Debug, Clone)]
pub struct CatKleisli {
    pub category: FinCategory,
    /// Kleisli morphism name -> (underlying morphism of the base, codomain).
    pub maps: BTreeMap<String, (String, String)>,
}

fn kl_name(f: &str, codomain: &str) -> String {
    format!("kl[{f};{codomain}]")
}

/// Materializes the Kleisli category of a monad on a finite category:
/// objects of the base, morphisms `X -> T Y`, identities the units,
/// composition `μ ∘ T h ∘ k`.
pub fn cat_kleisli(monad: &CatMonad) -> Result<CatKleisli, AdjunctionError> {
    let cat = monad.base();
    let t = monad.endofunctor();
    let mut maps: BTreeMap<String, (String, String)> = BTreeMap::new();
    let mut morphisms = Vec::new();
    for x in cat.objects() {
        for y in cat.objects() {
            for k in cat.hom(x, t.on_object(y)) {
                let name = kl_name(k, y);
                morphisms.push(Morphism {
                    name: name.clone(),
                    src: x.clone(),
                    tgt: y.clone(),
                });
                maps.insert(name, (k.to_string(), y.clone()));
            }
        }
    }
    let identities: BTreeMap<String, String> = cat
        .objects()
        .iter()
        .map(|x| (x.clone(), kl_name(monad.unit().component(x), x)))
        .collect();
    let mut compose = Vec::new();
    for (n1, (k, y1)) in &maps {
        for (n2, (h, z)) in &maps {
            let h_src = &cat.morphism(h).expect("validated").src;
            if h_src != y1 {
                continue;
            }
            let th = t.on_morphism(h);
            let step = cat
                .compose(k, th)
                .ok_or_else(|| AdjunctionError::LawFailure("kleisli composition broke".into()))?;
            let total = cat
                .compose(step, monad.mult().component(z))
                .ok_or_else(|| AdjunctionError::LawFailure("kleisli composition broke".into()))?;
            compose.push(ComposeEntry {
                first: n1.clone(),
                then: n2.clone(),
                equals: kl_name(total, z),
            });
        }
    }
    let raw = RawCategory {
        objects: cat.objects().to_vec(),
        morphisms,
        identities,
        compose,
    };
    Ok(CatKleisli {
        category: FinCategory::validate(&raw)?,
        maps,
    })
}

/// A materialized Eilenberg-Moore category of a monad on a finite category.
#[derive(Debug, Clone)]
pub struct CatEm {
    pub category: FinCategory,
    /// Algebra object name -> (carrier object, structure morphism).
    pub algebras: BTreeMap<String, (String, String)>,
    /// Morphism name -> underlying morphism of the base.
    pub morphisms: BTreeMap<String, String>,
}

fn em_obj_name(carrier: &str, structure: &str) -> String {
    format!("em({carrier};{structure})")
}

/// Materializes the Eilenberg-Moore category: all algebras `(A, e)` passing
/// the two squares, all structure-compatible morphisms.
pub fn cat_em(monad: &CatMonad) -> Result<CatEm, AdjunctionError> {
    let cat = monad.base();
    let t = monad.endofunctor();
    let mut algebras: BTreeMap<String, (String, String)> = BTreeMap::new();
    for a in cat.objects() {
        let ta = t.on_object(a);
        for e in cat.hom(ta, a) {
            let unit_ok = cat.compose(monad.unit().component(a), e) == cat.identity_of(a);
            let te = t.on_morphism(e);
            let lhs = cat.compose(te, e);
            let rhs = cat.compose(monad.mult().component(a), e);
            if unit_ok && lhs.is_some() && lhs == rhs {
                algebras.insert(em_obj_name(a, e), (a.clone(), e.to_string()));
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut underlying: BTreeMap<String, String> = BTreeMap::new();
    let mor_name = |f: &str, a: &str, b: &str| format!("{f}:{a}->{b}");
    for (an, (a, ea)) in &algebras {
        for (bn, (b, eb)) in &algebras {
            for f in cat.hom(a, b) {
                let tf = t.on_morphism(f);
                let lhs = cat.compose(tf, eb);
                let rhs = cat.compose(ea, f);
                if lhs.is_some() && lhs == rhs {
                    let name = mor_name(f, an, bn);
                    morphisms.push(Morphism {
                        name: name.clone(),
                        src: an.clone(),
                        tgt: bn.clone(),
                    });
                    underlying.insert(name, f.to_string());
                }
            }
        }
    }
    let identities: BTreeMap<String, String> = algebras
        .iter()
        .map(|(n, (a, _))| {
            (
                n.clone(),
                mor_name(cat.identity_of(a).expect("validated"), n, n),
            )
        })
        .collect();
    let mut compose = Vec::new();
    for m1 in &morphisms {
        for m2 in &morphisms {
            if m1.tgt == m2.src {
                let f = &underlying[&m1.name];
                let g = &underlying[&m2.name];
                let fg = cat
                    .compose(f, g)
                    .ok_or_else(|| AdjunctionError::LawFailure("algebra morphisms broke".into()))?;
                compose.push(ComposeEntry {
                    first: m1.name.clone(),
                    then: m2.name.clone(),
                    equals: mor_name(fg, &m1.src, &m2.tgt),
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
    Ok(CatEm {
        category: FinCategory::validate(&raw)?,
        algebras,
        morphisms: underlying,
    })
}

/// The Kleisli adjunction of a monad, as a validated [`Adjunction`] into the
/// materialized Kleisli category.
pub fn kleisli_adjunction(monad: &CatMonad) -> Result<(Adjunction, CatKleisli), AdjunctionError> {
    let cat = monad.base();
    let t = monad.endofunctor();
    let kl = cat_kleisli(monad)?;
    let l = FinFunctor::new(
        cat.clone(),
        kl.category.clone(),
        cat.objects().iter().map(|x| (x.clone(), x.clone())).collect(),
        cat.morphisms()
            .iter()
            .map(|m| {
                let wrapped = cat
                    .compose(&m.name, monad.unit().component(&m.tgt))
                    .expect("validated")
                    .to_string();
                (m.name.clone(), kl_name(&wrapped, &m.tgt))
            })
            .collect(),
    )?;
    let r = FinFunctor::new(
        kl.category.clone(),
        cat.clone(),
        cat.objects()
            .iter()
            .map(|x| (x.clone(), t.on_object(x).to_string()))
            .collect(),
        kl.maps
            .iter()
            .map(|(name, (k, y))| {
                let tk = t.on_morphism(k);
                let total = cat
                    .compose(tk, monad.mult().component(y))
                    .expect("validated")
                    .to_string();
                (name.clone(), total)
            })
            .collect(),
    )?;
    let unit = NatTrans::new(
        FinFunctor::identity(cat),
        l.then(&r)?,
        cat.objects()
            .iter()
            .map(|x| (x.clone(), monad.unit().component(x).to_string()))
            .collect(),
    )?;
    let counit = NatTrans::new(
        r.then(&l)?,
        FinFunctor::identity(&kl.category),
        cat.objects()
            .iter()
            .map(|x| {
                let id_tx = cat.identity_of(t.on_object(x)).expect("validated");
                (x.clone(), kl_name(id_tx, x))
            })
            .collect(),
    )?;
    Ok((Adjunction::new(l, r, unit, counit)?, kl))
}

/// The Eilenberg-Moore adjunction of a monad, with unit the monad's unit and
/// counit the structure maps.
pub fn em_adjunction(monad: &CatMonad) -> Result<(Adjunction, CatEm), AdjunctionError> {
    let cat = monad.base();
    let t = monad.endofunctor();
    let em = cat_em(monad)?;
    let free_name = |x: &str| em_obj_name(t.on_object(x), monad.mult().component(x));
    let l = FinFunctor::new(
        cat.clone(),
        em.category.clone(),
        cat.objects().iter().map(|x| (x.clone(), free_name(x))).collect(),
        cat.morphisms()
            .iter()
            .map(|m| {
                let tf = t.on_morphism(&m.name);
                (
                    m.name.clone(),
                    format!("{tf}:{}->{}", free_name(&m.src), free_name(&m.tgt)),
                )
            })
            .collect(),
    )?;
    let r = FinFunctor::new(
        em.category.clone(),
        cat.clone(),
        em.algebras
            .iter()
            .map(|(n, (a, _))| (n.clone(), a.clone()))
            .collect(),
        em.morphisms
            .iter()
            .map(|(n, f)| (n.clone(), f.clone()))
            .collect(),
    )?;
    let unit = NatTrans::new(
        FinFunctor::identity(cat),
        l.then(&r)?,
        cat.objects()
            .iter()
            .map(|x| (x.clone(), monad.unit().component(x).to_string()))
            .collect(),
    )?;
    let counit = NatTrans::new(
        r.then(&l)?,
        FinFunctor::identity(&em.category),
        em.algebras
            .iter()
            .map(|(n, (a, e))| {
                (
                    n.clone(),
                    format!("{e}:{}->{}", free_name(a), n),
                )
            })
            .collect(),
    )?;
    Ok((Adjunction::new(l, r, unit, counit)?, em))
}

/// The two comparison functors of an adjunction, together with the witnesses
/// that their defining squares commute (an explicit natural isomorphism per
/// square, searched rather than assumed).
#[derive(Debug, Clone)]
pub struct ComparisonFunctors {
    pub kleisli: CatKleisli,
    pub em: CatEm,
    /// J : Kleisli(T) -> D.
    pub j: FinFunctor,
    /// K : D -> EM(T).
    pub k: FinFunctor,
    pub j_squares: (NatTrans, NatTrans),
    pub k_squares: (NatTrans, NatTrans),
}

pub fn comparison_functors(
    adj: &Adjunction,
    budget: u64,
) -> Result<ComparisonFunctors, AdjunctionError> {
    let monad = induced_monad(adj)?;
    let kl = cat_kleisli(&monad)?;
    let em = cat_em(&monad)?;
    let c_cat = adj.source();
    let d_cat = adj.target();
    // J on objects: X -> F X; on morphisms: k -> k♯ = ε ∘ F k.
    let j = FinFunctor::new(
        kl.category.clone(),
        d_cat.clone(),
        c_cat
            .objects()
            .iter()
            .map(|x| (x.clone(), adj.left.on_object(x).to_string()))
            .collect(),
        kl.maps
            .iter()
            .map(|(name, (k, y))| {
                let fk = adj.left.on_morphism(k);
                let sharp = d_cat
                    .compose(fk, adj.counit.component(adj.left.on_object(y)))
                    .expect("validated")
                    .to_string();
                (name.clone(), sharp)
            })
            .collect(),
    )?;
    // K on objects: D -> (G D, G ε_D); on morphisms: g -> G g.
    let k_obj = |d: &str| {
        em_obj_name(
            adj.right.on_object(d),
            adj.right.on_morphism(adj.counit.component(d)),
        )
    };
    let k = FinFunctor::new(
        d_cat.clone(),
        em.category.clone(),
        d_cat.objects().iter().map(|d| (d.clone(), k_obj(d))).collect(),
        d_cat
            .morphisms()
            .iter()
            .map(|m| {
                let gg = adj.right.on_morphism(&m.name);
                (
                    m.name.clone(),
                    format!("{gg}:{}->{}", k_obj(&m.src), k_obj(&m.tgt)),
                )
            })
            .collect(),
    )?;
    // Squares, each certified by an explicit natural isomorphism.
    let (kl_adj, _) = kleisli_adjunction(&monad)?;
    let g_of_j = j.then(&adj.right)?;
    let sq1 = find_natural_iso(&g_of_j, kl_adj.right(), budget)?
        .ok_or_else(|| AdjunctionError::LawFailure("G ∘ J is not isomorphic to R_T".into()))?;
    let j_of_l = kl_adj.left().then(&j)?;
    let sq2 = find_natural_iso(&j_of_l, &adj.left, budget)?
        .ok_or_else(|| AdjunctionError::LawFailure("J ∘ L_T is not isomorphic to F".into()))?;
    let (em_adj, _) = em_adjunction(&monad)?;
    let r_of_k = k.then(em_adj.right())?;
    let sq3 = find_natural_iso(&r_of_k, &adj.right, budget)?
        .ok_or_else(|| AdjunctionError::LawFailure("R^T ∘ K is not isomorphic to G".into()))?;
    let k_of_f = adj.left.then(&k)?;
    let sq4 = find_natural_iso(&k_of_f, em_adj.left(), budget)?
        .ok_or_else(|| AdjunctionError::LawFailure("K ∘ F is not isomorphic to L^T".into()))?;
    Ok(ComparisonFunctors {
        kleisli: kl,
        em,
        j,
        k,
        j_squares: (sq1, sq2),
        k_squares: (sq3, sq4),
    })
}

#[derive(Debug, Clone)]
pub struct MonadicityVerdict {
    pub monadic: bool,
    pub witness: Option<EquivalenceWitness>,
    pub em_objects: usize,
}

/// Monadicity at desk scale: the comparison functor `K : D -> EM(T)` is run
/// through the equivalence checker.
pub fn monadicity_check(adj: &Adjunction, budget: u64) -> Result<MonadicityVerdict, AdjunctionError> {
    let cmp = comparison_functors(adj, budget)?;
    let witness = check_equivalence(&cmp.k);
    Ok(MonadicityVerdict {
        monadic: witness.is_some(),
        em_objects: cmp.em.algebras.len(),
        witness,
    })
}

#[derive(Debug, Clone)]
pub struct RadjContinuityVerdict {
    pub preservation: PreservationVerdict,
    /// The cone sets `Cone(F C, E)` and `Cone(C, G ∘ E)` are in bijection
    /// under componentwise transposition, for every object C.
    pub cone_bijection: bool,
}

/// Right adjoints are continuous: delegates to the preservation check for
/// the right functor, and additionally verifies the cone transposition
/// bijection explicitly.
pub fn check_radj_continuity(
    adj: &Adjunction,
    diagram: &Diagram,
    budget: u64,
) -> Result<RadjContinuityVerdict, AdjunctionError> {
    if diagram.ambient() != adj.target() {
        return Err(AdjunctionError::ShapeMismatch(
            "diagram must live in the right adjoint's source category".into(),
        ));
    }
    let preservation = check_preservation(&adj.right, diagram, budget)?;
    let composed = Diagram::new(diagram.body().then(&adj.right)?);
    let cones_d = enumerate_cones(diagram, budget)?;
    let cones_c = enumerate_cones(&composed, budget)?;
    let mut cone_bijection = true;
    for c in adj.source().objects() {
        let fc = adj.left.on_object(c);
        let upstairs: Vec<&Cone> = cones_d.iter().filter(|k| k.tip == fc).collect();
        let downstairs: Vec<&Cone> = cones_c.iter().filter(|k| k.tip == *c).collect();
        // Transpose every cone with tip F C componentwise.
        let mut transposed = Vec::new();
        for cone in &upstairs {
            let mut comps = BTreeMap::new();
            for (i, f) in &cone.components {
                comps.insert(i.clone(), adj.flat(c, diagram.on_object(i), f)?);
            }
            transposed.push(Cone {
                tip: c.clone(),
                components: comps,
            });
        }
        transposed.sort();
        transposed.dedup();
        let mut expect: Vec<Cone> = downstairs.iter().map(|k| (*k).clone()).collect();
        expect.sort();
        if transposed != expect || transposed.len() != upstairs.len() {
            cone_bijection = false;
        }
    }
    Ok(RadjContinuityVerdict {
        preservation,
        cone_bijection,
    })
}

/// Cardinality comparison between `Cone(l(c), E)` and `Cone(c, r ∘ E)` for a
/// functor pair that need not be an adjunction; adjoint pairs always match.
pub fn cone_counts_match(
    l: &FinFunctor,
    r: &FinFunctor,
    diagram: &Diagram,
    budget: u64,
) -> Result<bool, AdjunctionError> {
    let composed = Diagram::new(diagram.body().then(r)?);
    let cones_d = enumerate_cones(diagram, budget)?;
    let cones_c = enumerate_cones(&composed, budget)?;
    for c in l.source().objects() {
        let fc = l.on_object(c);
        let up = cones_d.iter().filter(|k| k.tip == fc).count();
        let down = cones_c.iter().filter(|k| k.tip == *c).count();
        if up != down {
            return Ok(false);
        }
    }
    Ok(true)
}
