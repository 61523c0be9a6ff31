//! Command-line surface: every check is a subcommand with a machine-readable
//! verdict on standard output. Exit codes: 0 = holds/valid, 1 = fails (a
//! structured witness is printed), 2 = input or parse error.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fincat::adjunction::{induced_comonad, induced_monad, monadicity_check};
use fincat::category::{classify_morphism, FinCategory};
use fincat::cli::{self, CliError, ParsedDiagram, Status, Verdict};
use fincat::finset::{finset_colimit, finset_limit, FinSet};
use fincat::monad::{
    builtin_monad, check_monad_laws, kleisli_compose, materialize_em_category, BuiltinMonad,
    LawMode,
};
use fincat::order::{aft_lower_adjoint, validate_galois, AftOutcome};
use fincat::quiver::{chains_up_to, free_category, verify_pu_adjunction};
use fincat::universal::{check_commutes, colimit_of, limit_of};
use fincat::yoneda::{representable, is_representable, yoneda_correspondence, yoneda_embedding_check};

#[derive(Parser)]
#[command(name = "fincat", about = "Finite category theory, executable", version)]
struct Cli {
    /// Cap on enumeration sizes (candidate counts).
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: u64,
    /// Seed for bounded-mode sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Category,
    Graph,
    Poset,
    Functor,
    Monoid,
    Presheaf,
}

#[derive(Clone, Copy, ValueEnum)]
enum MonadKind {
    Powerset,
    Distribution,
    Writer,
    Maybe,
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Bounded,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a structure file against its axioms.
    Validate {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Category)]
        kind: Kind,
    },
    /// Classify a morphism (mono/epi/split/iso) by exhaustive search.
    Classify { path: PathBuf, morphism: String },
    /// Check that a diagram commutes.
    Commutes { diagram: PathBuf },
    /// Compute the limit of a diagram.
    Limit { diagram: PathBuf },
    /// Compute the colimit of a diagram.
    Colimit { diagram: PathBuf },
    /// Build the free category on an acyclic graph, or report chain counts
    /// up to a bound for cyclic ones.
    FreeCat {
        graph: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Verify the Yoneda correspondence at an object (against every
    /// representable presheaf), plus the embedding theorem.
    Yoneda {
        category: PathBuf,
        #[arg(long)]
        object: String,
    },
    /// Search for a representing object of a presheaf.
    RepresentableSearch { presheaf: PathBuf },
    /// Check the monad laws of a builtin on a generated carrier.
    MonadLaws {
        #[arg(value_enum)]
        kind: MonadKind,
        #[arg(long, default_value_t = 2)]
        size: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 4)]
        max_denominator: u64,
        #[arg(long, default_value_t = 3)]
        max_length: usize,
        /// Monoid table file for the writer monad.
        #[arg(long)]
        monoid: Option<PathBuf>,
    },
    /// Compose two Kleisli maps and print the composite.
    KleisliCompose {
        #[arg(value_enum)]
        kind: MonadKind,
        #[arg(long)]
        k: PathBuf,
        #[arg(long)]
        h: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_denominator: u64,
        #[arg(long, default_value_t = 3)]
        max_length: usize,
        #[arg(long)]
        monoid: Option<PathBuf>,
    },
    /// Enumerate the Eilenberg-Moore category of a builtin monad over a
    /// universe of carriers.
    EmEnumerate {
        #[arg(value_enum)]
        kind: MonadKind,
        #[arg(long)]
        universe: PathBuf,
        #[arg(long)]
        monoid: Option<PathBuf>,
    },
    /// Validate an adjunction: triangle identities and transpose bijections.
    AdjunctionCheck { adjunction: PathBuf },
    /// Derive the monad and comonad of an adjunction and re-check their laws.
    InducedMonad { adjunction: PathBuf },
    /// Desk-scale monadicity: is the comparison functor an equivalence?
    Monadicity { adjunction: PathBuf },
    /// Validate a Galois connection given as two monotone maps.
    Galois {
        #[arg(long)]
        lower: PathBuf,
        #[arg(long)]
        upper: PathBuf,
    },
    /// Adjoint functor theorem for preorders: compute the lower adjoint of a
    /// monotone map or report the obstruction.
    Aft { monotone: PathBuf },
    /// Verify the free/forgetful adjunction laws between a graph and a
    /// category on bounded chains.
    FreeForgetful {
        graph: PathBuf,
        category: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let verdict = run(&cli).unwrap_or_else(|e| {
        
        Verdict::error(e)
    });
    print!("{}", verdict.render());
    ExitCode::from(verdict.exit_code() as u8)
}

fn stats(pairs: &[(&str, u64)]) -> BTreeMap<String, u64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn run(cli: &Cli) -> Result<Verdict, CliError> {
    match &cli.command {
        Command::Validate { path, kind } => run_validate(path, *kind),
        Command::Classify { path, morphism } => {
            let cat = cli::parse_category(path)?;
            let class = classify_morphism(&cat, morphism).map_err(CliError::semantic)?;
            let mut v = Verdict::holds(stats(&[("morphisms", cat.morphisms().len() as u64)]));
            v.witness = Some(serde_json::to_value(&class).expect("serializable"));
            Ok(v)
        }
        Command::Commutes { diagram } => {
            let ParsedDiagram::InCategory(d) = cli::parse_diagram(diagram)? else {
                return Err(CliError::Semantic(
                    "commutativity needs a diagram in a category (with an `ambient`)".into(),
                ));
            };
            let verdict = check_commutes(&d);
            Ok(if verdict.commutes {
                Verdict::holds(stats(&[("paths", verdict.paths_checked)]))
            } else {
                let w = verdict.witness.expect("failing verdict carries a witness");
                Verdict::fails(
                    json!({
                        "from": w.from,
                        "to": w.to,
                        "left_path": w.left_path,
                        "left_composite": w.left_composite,
                        "right_path": w.right_path,
                        "right_composite": w.right_composite,
                    }),
                    stats(&[("paths", verdict.paths_checked)]),
                )
            })
        }
        Command::Limit { diagram } => run_limit(diagram, cli.budget, false),
        Command::Colimit { diagram } => run_limit(diagram, cli.budget, true),
        Command::FreeCat { graph, max_len } => {
            let g = cli::parse_graph(graph)?;
            match free_category(&g) {
                Ok(cat) => {
                    let mut v = Verdict::holds(stats(&[
                        ("objects", cat.objects().len() as u64),
                        ("morphisms", cat.morphisms().len() as u64),
                    ]));
                    v.witness = Some(
                        serde_json::from_str(&cli::serialize_category(&cat)).expect("canonical"),
                    );
                    Ok(v)
                }
                Err(fincat::quiver::QuiverError::CyclicGraph(cycle)) => {
                    let (_, counts) = chains_up_to(&g, *max_len);
                    let mut v = Verdict::holds(
                        counts
                            .iter()
                            .enumerate()
                            .map(|(l, c)| (format!("chains_len_{l}"), *c))
                            .collect(),
                    );
                    v.witness = Some(json!({
                        "note": "cyclic graph: free category not materialized, chain counts reported",
                        "cycle": cycle,
                    }));
                    Ok(v)
                }
                Err(e) => Err(CliError::semantic(e)),
            }
        }
        Command::Yoneda { category, object } => {
            let cat = cli::parse_category(category)?;
            let mut all_hold = true;
            let mut nats_total = 0u64;
            for y in cat.objects() {
                let f = representable(&cat, y).map_err(CliError::semantic)?;
                let verdict =
                    yoneda_correspondence(&cat, object, &f, cli.budget).map_err(CliError::semantic)?;
                nats_total += verdict.nat_count as u64;
                all_hold &= verdict.holds();
            }
            let embedding = yoneda_embedding_check(&cat, cli.budget).map_err(CliError::semantic)?;
            let st = stats(&[
                ("transformations", nats_total),
                ("object_pairs", embedding.pairs_checked),
            ]);
            Ok(if all_hold && embedding.holds() {
                Verdict::holds(st)
            } else {
                Verdict::fails(json!({"embedding": format!("{embedding:?}")}), st)
            })
        }
        Command::RepresentableSearch { presheaf } => {
            let f = cli::parse_presheaf(presheaf)?;
            match is_representable(&f, cli.budget).map_err(CliError::semantic)? {
                Some((object, nat)) => {
                    let mut v = Verdict::holds(BTreeMap::new());
                    v.witness = Some(json!({
                        "representing_object": object,
                        "isomorphism": nat.signature(),
                    }));
                    Ok(v)
                }
                None => Ok(Verdict::fails(
                    json!({"note": "no representing object exists"}),
                    BTreeMap::new(),
                )),
            }
        }
        Command::MonadLaws {
            kind,
            size,
            mode,
            samples,
            max_denominator,
            max_length,
            monoid,
        } => {
            let monad = resolve_monad(*kind, *max_denominator, *max_length, monoid.as_deref())?;
            let x = FinSet::range("x", *size);
            let law_mode = match mode {
                Mode::Exhaustive => LawMode::Exhaustive,
                Mode::Bounded => LawMode::Bounded {
                    seed: cli.seed,
                    samples: *samples,
                },
            };
            let report =
                check_monad_laws(&monad, &x, law_mode, cli.budget).map_err(CliError::semantic)?;
            let st = stats(&[
                ("left_unit_instances", report.left_unit.instances),
                ("right_unit_instances", report.right_unit.instances),
                ("associativity_instances", report.associativity.instances),
                ("unit_naturality_instances", report.unit_natural.instances),
                ("mult_naturality_instances", report.mult_natural.instances),
            ]);
            Ok(if report.holds() {
                let mut v = Verdict::holds(st);
                v.witness = Some(json!({"mode": report.mode}));
                v
            } else {
                Verdict::fails(
                    json!({
                        "mode": report.mode,
                        "left_unit": report.left_unit.witness,
                        "right_unit": report.right_unit.witness,
                        "associativity": report.associativity.witness,
                        "unit_naturality": report.unit_natural.witness,
                        "mult_naturality": report.mult_natural.witness,
                    }),
                    st,
                )
            })
        }
        Command::KleisliCompose {
            kind,
            k,
            h,
            max_denominator,
            max_length,
            monoid,
        } => {
            let monad = resolve_monad(*kind, *max_denominator, *max_length, monoid.as_deref())?;
            let kmap = cli::parse_kleisli(k, &monad)?;
            let hmap = cli::parse_kleisli(h, &monad)?;
            let composed = kleisli_compose(&monad, &kmap, &hmap).map_err(CliError::semantic)?;
            let mut v = Verdict::holds(stats(&[("domain", composed.domain.len() as u64)]));
            let rendered: BTreeMap<String, Value> = composed
                .map
                .iter()
                .map(|(x, t)| (x.clone(), cli::term_to_json(&monad, t)))
                .collect();
            v.witness = Some(json!({
                "domain": composed.domain.elements(),
                "codomain": composed.codomain.elements(),
                "map": rendered,
            }));
            Ok(v)
        }
        Command::EmEnumerate {
            kind,
            universe,
            monoid,
        } => {
            let monad = resolve_monad(*kind, 4, 3, monoid.as_deref())?;
            let doc = cli::read_json(universe)?;
            let sets: Vec<Vec<String>> = serde_json::from_value(
                doc.get("sets")
                    .cloned()
                    .ok_or_else(|| CliError::Semantic("universe file needs a `sets` field".into()))?,
            )
            .map_err(|e| CliError::Semantic(e.to_string()))?;
            let mut carriers = Vec::new();
            for s in sets {
                carriers.push(FinSet::new(s).map_err(CliError::semantic)?);
            }
            let em =
                materialize_em_category(&monad, &carriers, cli.budget).map_err(CliError::semantic)?;
            let mut v = Verdict::holds(stats(&[
                ("algebras", em.algebras.len() as u64),
                ("morphisms", em.category.morphisms().len() as u64),
            ]));
            v.witness = Some(json!({
                "algebras": em.algebras.keys().collect::<Vec<_>>(),
            }));
            Ok(v)
        }
        Command::AdjunctionCheck { adjunction } => {
            let adj = cli::parse_adjunction(adjunction)?;
            Ok(Verdict::holds(stats(&[
                ("source_objects", adj.source().objects().len() as u64),
                ("target_objects", adj.target().objects().len() as u64),
            ])))
        }
        Command::InducedMonad { adjunction } => {
            let adj = cli::parse_adjunction(adjunction)?;
            let monad = induced_monad(&adj).map_err(CliError::semantic)?;
            let comonad = induced_comonad(&adj).map_err(CliError::semantic)?;
            let mut v = Verdict::holds(stats(&[
                ("monad_objects", monad.base().objects().len() as u64),
                ("comonad_objects", comonad.base().objects().len() as u64),
            ]));
            v.witness = Some(json!({
                "endofunctor_objects": monad.endofunctor().object_map(),
            }));
            Ok(v)
        }
        Command::Monadicity { adjunction } => {
            let adj = cli::parse_adjunction(adjunction)?;
            let verdict = monadicity_check(&adj, cli.budget).map_err(CliError::semantic)?;
            let st = stats(&[("em_objects", verdict.em_objects as u64)]);
            Ok(if verdict.monadic {
                Verdict::holds(st)
            } else {
                Verdict::fails(json!({"note": "comparison functor is not an equivalence"}), st)
            })
        }
        Command::Galois { lower, upper } => {
            let f = cli::parse_monotone(lower)?;
            let g = cli::parse_monotone(upper)?;
            let verdict = validate_galois(&f, &g);
            let st = stats(&[("pairs", verdict.pairs_checked)]);
            Ok(if verdict.holds {
                Verdict::holds(st)
            } else {
                Verdict::fails(
                    json!({
                        "pair": verdict.witness,
                        "unit_holds": verdict.unit_holds,
                        "counit_holds": verdict.counit_holds,
                    }),
                    st,
                )
            })
        }
        Command::Aft { monotone } => {
            let g = cli::parse_monotone(monotone)?;
            match aft_lower_adjoint(&g).map_err(CliError::semantic)? {
                AftOutcome::LowerAdjoint(f) => {
                    let mut v = Verdict::holds(BTreeMap::new());
                    v.witness = Some(json!({"lower_adjoint": f.mapping()}));
                    Ok(v)
                }
                AftOutcome::NoAdjoint { witness_subset } => Ok(Verdict::fails(
                    json!({"subset": witness_subset}),
                    BTreeMap::new(),
                )),
            }
        }
        Command::FreeForgetful {
            graph,
            category,
            max_len,
        } => {
            let g = cli::parse_graph(graph)?;
            let c = cli::parse_category(category)?;
            let verdict = verify_pu_adjunction(&g, &c, *max_len);
            let st = stats(&[
                ("chains", verdict.chains_checked),
                ("max_len", verdict.max_len as u64),
            ]);
            Ok(if verdict.holds {
                Verdict::holds(st)
            } else {
                Verdict::fails(
                    serde_json::to_value(verdict.violation).expect("serializable"),
                    st,
                )
            })
        }
    }
}

fn run_validate(path: &Path, kind: Kind) -> Result<Verdict, CliError> {
    match kind {
        Kind::Category => {
            let raw = cli::parse_category_raw(path)?;
            match FinCategory::validate(&raw) {
                Ok(cat) => Ok(Verdict::holds(stats(&[
                    ("objects", cat.objects().len() as u64),
                    ("morphisms", cat.morphisms().len() as u64),
                ]))),
                Err(e) => Ok(Verdict {
                    status: Status::Fails,
                    witness: Some(cli::category_error_witness(&e)),
                    stats: BTreeMap::new(),
                }),
            }
        }
        Kind::Graph => {
            let g = cli::parse_graph(path)?;
            Ok(Verdict::holds(stats(&[
                ("vertices", g.vertices().len() as u64),
                ("edges", g.edges().len() as u64),
            ])))
        }
        Kind::Poset => {
            let p = cli::parse_poset(path)?;
            Ok(Verdict::holds(stats(&[
                ("elements", p.elements().len() as u64),
                ("pairs", p.pairs().len() as u64),
                ("antisymmetric", p.is_poset() as u64),
            ])))
        }
        Kind::Functor => {
            let f = cli::parse_functor(path)?;
            Ok(Verdict::holds(stats(&[
                ("objects", f.source().objects().len() as u64),
            ])))
        }
        Kind::Monoid => {
            let m = cli::parse_monoid(path)?;
            Ok(Verdict::holds(stats(&[("elements", m.elements().len() as u64)])))
        }
        Kind::Presheaf => {
            let p = cli::parse_presheaf(path)?;
            Ok(Verdict::holds(stats(&[
                ("objects", p.base().objects().len() as u64),
            ])))
        }
    }
}

fn run_limit(diagram: &Path, budget: u64, colimit: bool) -> Result<Verdict, CliError> {
    match cli::parse_diagram(diagram)? {
        ParsedDiagram::OfSets(d) => {
            if colimit {
                let cocone = finset_colimit(&d).map_err(CliError::semantic)?;
                let mut v = Verdict::holds(stats(&[("bottom_size", cocone.bottom.len() as u64)]));
                v.witness = Some(json!({
                    "bottom": cocone.bottom.elements(),
                    "legs": cocone
                        .legs
                        .iter()
                        .map(|(k, f)| (k.clone(), serde_json::to_value(f.mapping()).unwrap()))
                        .collect::<BTreeMap<String, Value>>(),
                }));
                Ok(v)
            } else {
                let cone = finset_limit(&d).map_err(CliError::semantic)?;
                let mut v = Verdict::holds(stats(&[("tip_size", cone.tip.len() as u64)]));
                v.witness = Some(json!({
                    "tip": cone.tip.elements(),
                    "legs": cone
                        .legs
                        .iter()
                        .map(|(k, f)| (k.clone(), serde_json::to_value(f.mapping()).unwrap()))
                        .collect::<BTreeMap<String, Value>>(),
                }));
                Ok(v)
            }
        }
        ParsedDiagram::InCategory(d) => {
            if colimit {
                match colimit_of(&d, budget).map_err(CliError::semantic)? {
                    Some(cocone) => {
                        let mut v = Verdict::holds(BTreeMap::new());
                        v.witness = Some(json!({
                            "bottom": cocone.bottom,
                            "legs": cocone.components,
                        }));
                        Ok(v)
                    }
                    None => Ok(Verdict::fails(
                        json!({"note": "no colimit exists"}),
                        BTreeMap::new(),
                    )),
                }
            } else {
                match limit_of(&d, budget).map_err(CliError::semantic)? {
                    Some(cone) => {
                        let mut v = Verdict::holds(BTreeMap::new());
                        v.witness = Some(json!({
                            "tip": cone.tip,
                            "legs": cone.components,
                        }));
                        Ok(v)
                    }
                    None => Ok(Verdict::fails(
                        json!({"note": "no limit exists"}),
                        BTreeMap::new(),
                    )),
                }
            }
        }
    }
}

fn resolve_monad(
    kind: MonadKind,
    max_denominator: u64,
    max_length: usize,
    monoid: Option<&std::path::Path>,
) -> Result<BuiltinMonad, CliError> {
    let raw = match kind {
        MonadKind::Powerset => BuiltinMonad::Powerset,
        MonadKind::Distribution => BuiltinMonad::Distribution { max_denominator },
        MonadKind::Maybe => BuiltinMonad::Maybe,
        MonadKind::List => BuiltinMonad::List { max_length },
        MonadKind::Writer => {
            let path = monoid.ok_or_else(|| {
                CliError::Semantic("the writer monad needs --monoid <table.json>".into())
            })?;
            BuiltinMonad::Writer {
                monoid: cli::parse_monoid(path)?,
            }
        }
    };
    builtin_monad(&raw).map_err(CliError::semantic)
}
