//! Separation and synchronization verdicts for `J(n, k)`, reproduction of
//! the `k = 4` clique-number tables, and the pair-kernel coclique check for
//! projective-plane parameters.
//!
//! Complementary class sets `I` and `J` are analyzed together: a clique of
//! `Γ_J` is a coclique of `Γ_I`, so one graph answers both rows.

use std::time::Duration;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    clique_coclique_check, ekr_partition_inequality, equality_filter, ratio_bound_for, wilson_regime,
    CliqueCocliqueCheck, EkrPartition, SizeCap,
};
use crate::combinat::{binom_u64, divisibility_conditions, BigRat, SchemeParams};
use crate::designs::{ekr_coclique, find_steiner, section3_witness_with, BlockFamily, WitnessOptions};
use crate::error::{Error, Result};
use crate::graphs::{adjacency_bytes, build_graph, ClassSet, GraphOptions, SchemeGraph, VertexSet};
use crate::search::{
    enumerate_max_cocliques, find_clique_at_least, find_coclique_at_least, max_clique, max_coclique,
    SearchOptions,
};

/// Default budget for each decision search.
pub const DEFAULT_DECISION_BUDGET: Duration = Duration::from_secs(60);

#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    /// Budget for each search that a verdict depends on.
    pub budget: Option<Duration>,
    /// Budget for each search that only fills in ω and α of an already
    /// decided class set. Zero skips these searches.
    pub value_budget: Duration,
    pub witness: WitnessOptions,
    pub memory_budget_bytes: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            budget: Some(DEFAULT_DECISION_BUDGET),
            value_budget: Duration::from_secs(2),
            witness: WitnessOptions::default(),
            memory_budget_bytes: GraphOptions::default().memory_budget_bytes,
        }
    }
}

impl ClassifyOptions {
    pub fn with_budget(budget: Duration) -> Self {
        ClassifyOptions {
            budget: Some(budget),
            ..Default::default()
        }
    }

    fn graph_options(&self) -> GraphOptions {
        GraphOptions {
            memory_budget_bytes: self.memory_budget_bytes,
        }
    }

    fn search(&self) -> SearchOptions {
        SearchOptions {
            time_budget: self.budget,
            ..Default::default()
        }
    }
}

/// A clique or coclique number: best size found, whether it is proved, and
/// the best known upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Estimate {
    pub value: usize,
    pub proved: bool,
    pub upper_bound: u64,
}

impl Estimate {
    fn unknown(upper_bound: u64) -> Self {
        Estimate {
            value: 0,
            proved: false,
            upper_bound,
        }
    }

    fn exact(value: usize) -> Self {
        Estimate {
            value,
            proved: true,
            upper_bound: value as u64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioSummary {
    /// `1 - deg/τ`: a lower bound on ω whenever `ω·α = v`.
    #[serde(serialize_with = "crate::ser::rat")]
    pub bound: BigRat,
    /// `v / (1 - deg/τ)`, the ratio bound on α.
    #[serde(serialize_with = "crate::ser::rat")]
    pub alpha_bound: BigRat,
    /// `τ | deg`. Informational: equality does not force it.
    pub divides: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FilterSummary {
    pub pairs_tried: usize,
    pub clique_cap: Option<SizeCap>,
    pub coclique_cap: Option<SizeCap>,
    /// `(ω, α)` candidates passing the orthogonality filter and the ratio bounds.
    pub feasible_pairs: Vec<[u64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SeparationReason {
    /// `(1 - deg_I/τ_I)(1 - deg_J/τ_J) > v`.
    RatioProduct,
    /// No factor pair survives the orthogonality filter and ratio bounds.
    Filter,
    /// Every surviving pair was refuted by exact search.
    Search { refuted: Vec<[u64; 2]> },
    /// The proved upper bounds on ω and α multiply to less than `v`.
    UpperBounds,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PairDecision {
    /// A verified clique/coclique pair with product `v` exists.
    Equality { source: String },
    Separated { reason: SeparationReason },
    Undecided { reason: String },
    /// Not examined because another class set already gave a witness.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SteinerNote {
    pub t: usize,
    pub divisibility: bool,
    /// `None` when no search was made because a witness was already known.
    pub design_found: Option<bool>,
}

/// One row of a classification report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassRecord {
    pub classes: ClassSet,
    pub degree: u64,
    #[serde(serialize_with = "crate::ser::int")]
    pub tau: BigInt,
    pub ratio: RatioSummary,
    pub filter: FilterSummary,
    pub steiner: Option<SteinerNote>,
    pub omega: Estimate,
    pub alpha: Estimate,
    /// `"less"` or `"equal"` once the product is settled.
    pub product_vs_v: Option<&'static str>,
    pub decision: PairDecision,
}

/// A clique and coclique of `Γ_classes` whose sizes multiply to `v`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EqualityWitness {
    pub classes: ClassSet,
    pub source: String,
    pub clique: BlockFamily,
    pub coclique: BlockFamily,
    pub check: CliqueCocliqueCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Separating,
    NonSeparating,
    Undecided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SyncVerdict {
    Synchronizing,
    NonSynchronizing,
    Undecided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NoteSource {
    /// Established here by construction or search.
    Computed,
    /// A published theorem or construction, carried as data.
    Cited,
    /// Follows from other entries of the report.
    Derived,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SyncNote {
    pub source: NoteSource,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TEvidence {
    pub t: usize,
    /// Maximum cocliques of `Δ_t` are exactly the EKR families.
    pub wilson_regime: bool,
    pub ekr_partition: EkrPartition,
    /// Divisibility conditions for `S(t, k, n)`.
    pub steiner_divisibility: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessSummary {
    pub case_id: String,
    pub classes: ClassSet,
    pub clique_size: usize,
    pub colours: usize,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SyncEvidence {
    pub n: usize,
    pub k: usize,
    pub verdict: SyncVerdict,
    pub per_t: Vec<TEvidence>,
    pub notes: Vec<SyncNote>,
    pub witness: Option<WitnessSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub k: usize,
    pub v: u64,
    /// The requested `k` when `n < 2k` was answered through `J(n, n-k)`.
    pub reduced_from: Option<usize>,
    pub verdict: Verdict,
    pub witness: Option<EqualityWitness>,
    /// Class sets whose status blocks a verdict.
    pub undecided: Vec<ClassSet>,
    pub per_class: Vec<ClassRecord>,
    pub sync_evidence: SyncEvidence,
}

struct PairWork {
    i: ClassSet,
    j: ClassSet,
    rec_i: ClassRecord,
    rec_j: ClassRecord,
    w_i: BigRat,
    w_j: BigRat,
    steiner_witness: Option<EqualityWitness>,
}

fn floor_div(v: u64, w: &BigRat) -> u64 {
    let q = BigRat::from_integer(BigInt::from(v)) / w;
    q.floor().to_integer().to_u64().unwrap_or(u64::MAX)
}

fn ceil_u64(w: &BigRat) -> u64 {
    w.ceil().to_integer().to_u64().unwrap_or(u64::MAX)
}

fn record(params: &SchemeParams, classes: ClassSet) -> Result<(ClassRecord, BigRat)> {
    let rb = ratio_bound_for(params, &classes)?;
    let rec = ClassRecord {
        classes,
        degree: rb.degree,
        tau: rb.tau.clone(),
        ratio: RatioSummary {
            bound: rb.omega_if_equality.clone(),
            alpha_bound: rb.alpha_bound.clone(),
            divides: rb.divisibility_ok,
        },
        filter: FilterSummary {
            pairs_tried: 0,
            clique_cap: None,
            coclique_cap: None,
            feasible_pairs: Vec::new(),
        },
        steiner: None,
        omega: Estimate::unknown(params.v),
        alpha: Estimate::unknown(floor_div(params.v, &rb.omega_if_equality)),
        product_vs_v: None,
        decision: PairDecision::Skipped,
    };
    Ok((rec, rb.omega_if_equality))
}

/// Steiner system `S(t,k,n)` as a clique of `Δ_t` against an EKR coclique.
fn steiner_stage(
    params: &SchemeParams,
    t: usize,
    opts: &ClassifyOptions,
) -> Result<(SteinerNote, Option<EqualityWitness>)> {
    let (n, k) = (params.n, params.k);
    let divisibility = divisibility_conditions(t, k, n)?.holds;
    let fam = if divisibility {
        find_steiner(t, k, n, opts.budget)?
    } else {
        None
    };
    let note = SteinerNote {
        t,
        divisibility,
        design_found: Some(fam.is_some()),
    };
    let Some(fam) = fam else { return Ok((note, None)) };
    let delta = ClassSet::delta(t, k)?;
    let g = build_graph(params, &delta, &opts.graph_options())?;
    let clique = fam.vertex_set()?;
    let kernel: Vec<usize> = (1..=t).collect();
    let coclique = ekr_coclique(n, k, &kernel)?;
    let check = clique_coclique_check(&g, &clique, &coclique)?;
    if !check.equality {
        return Err(Error::Consistency(format!("{} with an EKR family misses v", fam.label)));
    }
    let witness = EqualityWitness {
        classes: delta,
        source: format!("Steiner system {} against the EKR family on {kernel:?}", fam.label),
        clique: BlockFamily::from_vertex_set(&fam.label, &clique),
        coclique: BlockFamily::from_vertex_set("EKR", &coclique),
        check,
    };
    Ok((note, Some(witness)))
}

struct SearchOutcome {
    decision: PairDecision,
    witness: Option<EqualityWitness>,
    omega: Estimate,
    alpha: Estimate,
}

/// Decides which candidate `(x, y)` pairs are realized in `Γ_I`.
fn search_stage(
    params: &SchemeParams,
    i: ClassSet,
    pairs: &[[u64; 2]],
    mut omega: Estimate,
    mut alpha: Estimate,
    opts: &ClassifyOptions,
) -> Result<SearchOutcome> {
    let g = build_graph(params, &i, &opts.graph_options())?;
    let so = opts.search();
    let mut clique: Option<VertexSet> = None;
    let mut coclique: Option<VertexSet> = None;
    let mut refuted = Vec::new();
    let mut unsettled = Vec::new();
    for &[x, y] in pairs {
        if x > omega.upper_bound || y > alpha.upper_bound {
            refuted.push([x, y]);
            continue;
        }
        let mut open = false;
        if (omega.value as u64) < x {
            let d = find_clique_at_least(&g, x as usize, &so)?;
            match d.answer() {
                Some(true) => {
                    let w = d.witness.expect("positive answer carries a witness");
                    omega.value = w.len();
                    clique = Some(w);
                }
                Some(false) => omega.upper_bound = x - 1,
                None => open = true,
            }
        }
        if omega.upper_bound < x {
            refuted.push([x, y]);
            continue;
        }
        if (alpha.value as u64) < y {
            let d = find_coclique_at_least(&g, y as usize, &so)?;
            match d.answer() {
                Some(true) => {
                    let w = d.witness.expect("positive answer carries a witness");
                    alpha.value = w.len();
                    coclique = Some(w);
                }
                Some(false) => alpha.upper_bound = y - 1,
                None => open = true,
            }
        }
        if alpha.upper_bound < y {
            refuted.push([x, y]);
            continue;
        }
        if let (Some(c), Some(s)) = (&clique, &coclique) {
            if c.len() as u64 * s.len() as u64 >= params.v {
                let check = clique_coclique_check(&g, c, s)?;
                let witness = EqualityWitness {
                    classes: i,
                    source: format!("exact search in Γ_{i}"),
                    clique: BlockFamily::from_vertex_set("clique", c),
                    coclique: BlockFamily::from_vertex_set("coclique", s),
                    check,
                };
                return Ok(SearchOutcome {
                    decision: PairDecision::Equality {
                        source: witness.source.clone(),
                    },
                    witness: Some(witness),
                    omega: Estimate::exact(c.len()),
                    alpha: Estimate::exact(s.len()),
                });
            }
        }
        if open {
            unsettled.push([x, y]);
        }
    }
    let decision = if unsettled.is_empty() {
        PairDecision::Separated {
            reason: SeparationReason::Search { refuted },
        }
    } else {
        PairDecision::Undecided {
            reason: format!("search budget exhausted on candidate pairs {unsettled:?}"),
        }
    };
    Ok(SearchOutcome {
        decision,
        witness: None,
        omega,
        alpha,
    })
}

/// Tightens ω and α of `Γ_I` by maximum searches within `budget`.
fn fill_values(
    params: &SchemeParams,
    i: ClassSet,
    omega: &mut Estimate,
    alpha: &mut Estimate,
    budget: Duration,
    opts: &ClassifyOptions,
) -> Result<()> {
    if budget.is_zero() || (omega.proved && alpha.proved) {
        return Ok(());
    }
    let g = build_graph(params, &i, &opts.graph_options())?;
    for (est, clique) in [(omega, true), (alpha, false)] {
        if est.proved {
            continue;
        }
        let so = SearchOptions {
            time_budget: Some(budget),
            upper_bound_hint: Some(est.upper_bound.min(params.v) as usize),
            ..Default::default()
        };
        let r = if clique { max_clique(&g, &so)? } else { max_coclique(&g, &so)? };
        est.value = est.value.max(r.size);
        est.upper_bound = est.upper_bound.min(r.upper_bound as u64);
        est.proved = r.proved_optimal || est.value as u64 == est.upper_bound;
    }
    Ok(())
}

fn transpose(rec_i: &ClassRecord, rec_j: &mut ClassRecord) {
    rec_j.omega = rec_i.alpha;
    rec_j.alpha = rec_i.omega;
    rec_j.product_vs_v = rec_i.product_vs_v;
    rec_j.decision = rec_i.decision.clone();
    rec_j.steiner = rec_i.steiner.clone();
    rec_j.filter = FilterSummary {
        pairs_tried: rec_i.filter.pairs_tried,
        clique_cap: rec_i.filter.coclique_cap.clone(),
        coclique_cap: rec_i.filter.clique_cap.clone(),
        feasible_pairs: rec_i.filter.feasible_pairs.iter().map(|&[x, y]| [y, x]).collect(),
    };
}

/// Decides whether some non-trivial graph of `J(n, k)` has `ω·α = v`.
///
/// Each complementary pair of class sets passes through: a Steiner-system
/// witness for `Δ_t`; the product of the ratio bounds of both graphs; the
/// orthogonality filter; and exact decision searches on the surviving
/// `(ω, α)` candidates. A timeout never becomes a verdict.
pub fn classify_separation(n: usize, k: usize, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    let original = SchemeParams::new(n, k)?;
    let (k, reduced_from) = if n < 2 * k { (n - k, Some(k)) } else { (k, None) };
    let params = SchemeParams::new(n, k)?;
    let needed = adjacency_bytes(params.v);
    if needed > opts.memory_budget_bytes as u128 {
        return Err(Error::Resource {
            what: format!("adjacency of J({n},{k})"),
            needed,
            budget: opts.memory_budget_bytes as u128,
        });
    }
    debug_assert_eq!(original.v, params.v);

    let mut work = Vec::new();
    for i in ClassSet::all_nontrivial(k) {
        let j = i.complement();
        if j.index() < i.index() {
            continue;
        }
        let (rec_i, w_i) = record(&params, i)?;
        let (rec_j, w_j) = record(&params, j)?;
        work.push(PairWork {
            i,
            j,
            rec_i,
            rec_j,
            w_i,
            w_j,
            steiner_witness: None,
        });
    }

    // Steiner shortcut, smallest t first.
    let mut witness: Option<EqualityWitness> = None;
    let mut deltas: Vec<(usize, usize)> = work
        .iter()
        .enumerate()
        .filter_map(|(idx, p)| p.i.as_delta().or(p.j.as_delta()).map(|t| (t, idx)))
        .collect();
    deltas.sort_unstable();
    for (t, idx) in deltas {
        if witness.is_some() {
            work[idx].rec_i.steiner = Some(SteinerNote {
                t,
                divisibility: divisibility_conditions(t, k, n)?.holds,
                design_found: None,
            });
            continue;
        }
        let (note, w) = steiner_stage(&params, t, opts)?;
        let p = &mut work[idx];
        p.rec_i.steiner = Some(note);
        if let Some(w) = w {
            witness = Some(w.clone());
            p.steiner_witness = Some(w);
        }
    }

    // Ratio and filter stages, then searches where still needed.
    let v = params.v;
    let outcomes: Vec<Result<PairWork>> = work
        .into_par_iter()
        .map(|mut p| {
            let cap_i = floor_div(v, &p.w_j);
            let cap_j = floor_div(v, &p.w_i);
            p.rec_i.omega.upper_bound = p.rec_i.omega.upper_bound.min(cap_i);
            p.rec_i.alpha.upper_bound = p.rec_i.alpha.upper_bound.min(cap_j);
            let f = equality_filter(params.n, k, &p.i)?;
            if let Some(c) = &f.clique_cap {
                p.rec_i.omega.upper_bound = p.rec_i.omega.upper_bound.min(c.value);
            }
            if let Some(c) = &f.coclique_cap {
                p.rec_i.alpha.upper_bound = p.rec_i.alpha.upper_bound.min(c.value);
            }
            let (lo_x, lo_y) = (ceil_u64(&p.w_i), ceil_u64(&p.w_j));
            let mut pairs: Vec<[u64; 2]> = f
                .feasible
                .iter()
                .map(|a| [a.x, a.y])
                .filter(|&[x, y]| x >= lo_x && y >= lo_y)
                .collect();
            pairs.dedup();
            p.rec_i.filter = FilterSummary {
                pairs_tried: f.pairs_tried,
                clique_cap: f.clique_cap.clone(),
                coclique_cap: f.coclique_cap.clone(),
                feasible_pairs: pairs.clone(),
            };
            if let Some(w) = &p.steiner_witness {
                let (x, y) = (w.check.clique_size, w.check.coclique_size);
                let (om, al) = if w.classes == p.i { (x, y) } else { (y, x) };
                p.rec_i.omega = Estimate::exact(om);
                p.rec_i.alpha = Estimate::exact(al);
                p.rec_i.product_vs_v = Some("equal");
                p.rec_i.decision = PairDecision::Equality {
                    source: w.source.clone(),
                };
            } else if &p.w_i * &p.w_j > BigRat::from_integer(BigInt::from(v)) {
                p.rec_i.decision = PairDecision::Separated {
                    reason: SeparationReason::RatioProduct,
                };
            } else if pairs.is_empty() {
                p.rec_i.decision = PairDecision::Separated {
                    reason: SeparationReason::Filter,
                };
            } else if witness.is_none() {
                let out = search_stage(&params, p.i, &pairs, p.rec_i.omega, p.rec_i.alpha, opts)?;
                p.rec_i.omega = out.omega;
                p.rec_i.alpha = out.alpha;
                p.rec_i.decision = out.decision;
                if let Some(w) = out.witness {
                    p.rec_i.product_vs_v = Some("equal");
                    p.steiner_witness = Some(w);
                }
            }
            Ok(p)
        })
        .collect();
    let mut work = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    if witness.is_none() {
        witness = work.iter().find_map(|p| p.steiner_witness.clone());
    }

    let filled: Vec<Result<()>> = work
        .par_iter_mut()
        .map(|p| {
            let (mut om, mut al) = (p.rec_i.omega, p.rec_i.alpha);
            fill_values(&params, p.i, &mut om, &mut al, opts.value_budget, opts)?;
            p.rec_i.omega = om;
            p.rec_i.alpha = al;
            if p.rec_i.product_vs_v.is_none() {
                let separated = matches!(p.rec_i.decision, PairDecision::Separated { .. });
                let ub = om.upper_bound as u128 * al.upper_bound as u128;
                if separated || ub < v as u128 {
                    p.rec_i.product_vs_v = Some("less");
                    if !separated {
                        p.rec_i.decision = PairDecision::Separated {
                            reason: SeparationReason::UpperBounds,
                        };
                    }
                }
            }
            Ok(())
        })
        .collect();
    filled.into_iter().collect::<Result<Vec<_>>>()?;

    let mut per_class = Vec::new();
    let mut undecided = Vec::new();
    for mut p in work {
        if matches!(p.rec_i.decision, PairDecision::Undecided { .. }) {
            undecided.push(p.i);
        }
        transpose(&p.rec_i, &mut p.rec_j);
        per_class.push(p.rec_i);
        per_class.push(p.rec_j);
    }
    per_class.sort_by_key(|r| r.classes.index());

    let verdict = if witness.is_some() {
        Verdict::NonSeparating
    } else if undecided.is_empty() && per_class.iter().all(|r| matches!(r.decision, PairDecision::Separated { .. })) {
        Verdict::Separating
    } else {
        if undecided.is_empty() {
            return Err(Error::Consistency("no witness, yet nothing left undecided".into()));
        }
        Verdict::Undecided
    };
    if witness.is_some() {
        undecided.clear();
    }

    let mut sync_evidence = synchronization_evidence_with(n, k, &opts.witness)?;
    if verdict == Verdict::Separating {
        if sync_evidence.verdict == SyncVerdict::NonSynchronizing {
            return Err(Error::Consistency(format!(
                "J({n},{k}) found separating but recorded as non-synchronizing"
            )));
        }
        sync_evidence.verdict = SyncVerdict::Synchronizing;
        sync_evidence.notes.push(SyncNote {
            source: NoteSource::Derived,
            text: "separating, hence synchronizing".into(),
        });
    }

    Ok(ClassificationReport {
        n,
        k,
        v: params.v,
        reduced_from,
        verdict,
        witness,
        undecided,
        per_class,
        sync_evidence,
    })
}

/// The five small cases with an explicit clique-number-equals-chromatic-number witness.
fn witness_case(n: usize, k: usize) -> Option<&'static str> {
    match (n, k) {
        (7, 3) => Some("k3n7"),
        (8, 3) => Some("k3n8"),
        (9, 4) => Some("k4n9"),
        (11, 5) => Some("k5n11"),
        (12, 5) => Some("k5n12"),
        _ => None,
    }
}

pub fn synchronization_evidence(n: usize, k: usize) -> Result<SyncEvidence> {
    synchronization_evidence_with(n, k, &WitnessOptions::default())
}

/// What is known about synchronization of `J(n, k)` without deciding
/// large-set existence: explicit witnesses, Baranyai's theorem, the
/// complete results for `k = 2, 3`, and cited large sets.
pub fn synchronization_evidence_with(n: usize, k: usize, wopts: &WitnessOptions) -> Result<SyncEvidence> {
    SchemeParams::new(n, k)?;
    let k = if n < 2 * k { n - k } else { k };
    let mut notes = Vec::new();
    let mut verdict = SyncVerdict::Undecided;
    let mut per_t = Vec::new();
    for t in 1..k {
        let steiner_divisibility = divisibility_conditions(t, k, n)?.holds;
        let wr = wilson_regime(n, k, t)?;
        let ekr = ekr_partition_inequality(n, k, t);
        per_t.push(TEvidence {
            t,
            wilson_regime: wr,
            ekr_partition: ekr,
            steiner_divisibility,
        });
    }
    let mut cite = |v: SyncVerdict, text: &str| {
        notes.push(SyncNote {
            source: NoteSource::Cited,
            text: text.to_string(),
        });
        v
    };
    if k == 1 {
        notes.push(SyncNote {
            source: NoteSource::Derived,
            text: "J(n,1) has no non-trivial graph".into(),
        });
        verdict = SyncVerdict::Synchronizing;
    } else if n % k == 0 {
        verdict = cite(
            SyncVerdict::NonSynchronizing,
            "Baranyai: k divides n, so a large set of S(1,k,n) exists and the disjointness graph has clique number equal to chromatic number",
        );
    } else if k == 2 && n >= 5 {
        verdict = cite(
            if n % 2 == 1 { SyncVerdict::Synchronizing } else { SyncVerdict::NonSynchronizing },
            "k = 2, n >= 5: synchronizing if and only if n is odd",
        );
    } else if k == 3 && n >= 7 {
        let sync = [2, 4, 5].contains(&(n % 6)) && n > 8;
        verdict = cite(
            if sync { SyncVerdict::Synchronizing } else { SyncVerdict::NonSynchronizing },
            "k = 3, n >= 7: synchronizing if and only if n = 2, 4, 5 (mod 6) and n > 8",
        );
    } else if (n, k) == (13, 4) {
        verdict = cite(SyncVerdict::NonSynchronizing, "a large set of S(2,4,13) exists");
    } else if (n, k) == (21, 5) {
        verdict = cite(SyncVerdict::NonSynchronizing, "a large set of S(2,5,21) exists");
    } else if (n, k) == (10, 4) {
        verdict = cite(
            SyncVerdict::Synchronizing,
            "no five pairwise disjoint S(3,4,10) exist (Kramer-Mesner), so no large set; not recomputed here",
        );
    }

    let mut witness = None;
    if let Some(case) = witness_case(n, k) {
        let w = section3_witness_with(case, wopts)?;
        witness = Some(WitnessSummary {
            case_id: case.to_string(),
            classes: w.classes,
            clique_size: w.clique.len(),
            colours: w.colouring.parts.len(),
            verified: true,
        });
        if verdict == SyncVerdict::Synchronizing {
            return Err(Error::Consistency(format!("witness {case} contradicts a synchronizing entry")));
        }
        verdict = SyncVerdict::NonSynchronizing;
        notes.push(SyncNote {
            source: NoteSource::Computed,
            text: format!("explicit clique and colouring of Γ_{} with {} colours", w.classes, w.clique.len()),
        });
    }
    if verdict == SyncVerdict::Undecided {
        for e in &per_t {
            if e.wilson_regime && e.ekr_partition.holds {
                notes.push(SyncNote {
                    source: NoteSource::Derived,
                    text: format!(
                        "t = {}: maximum cocliques of Δ_t are EKR families and cannot partition the k-sets",
                        e.t
                    ),
                });
            }
            if e.steiner_divisibility {
                notes.push(SyncNote {
                    source: NoteSource::Derived,
                    text: format!("t = {}: S(t,k,n) is admissible; large-set existence unknown", e.t),
                });
            }
        }
        notes.push(SyncNote {
            source: NoteSource::Derived,
            text: "undecided: large-set existence unknown".into(),
        });
    }
    Ok(SyncEvidence {
        n,
        k,
        verdict,
        per_t,
        notes,
        witness,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Column {
    Omega,
    Alpha,
    /// `1 - deg/τ`, compared after rounding down.
    Ratio,
}

/// A tabulated `k = 4` case: the graph, its columns and the expected rows.
#[derive(Debug, Clone)]
pub struct TableSpec {
    pub name: &'static str,
    pub graph: &'static [usize],
    pub columns: &'static [Column],
    pub rows: &'static [(usize, &'static [u64])],
    /// Rows computed only in extended mode.
    pub extended: &'static [(usize, &'static [u64])],
}

/// Reference values for the four `k = 4` tables.
pub const K4_TABLES: [TableSpec; 4] = [
    TableSpec {
        name: "I={1,3,4}",
        graph: &[2],
        columns: &[Column::Omega, Column::Ratio],
        rows: &[(10, &[5, 11]), (11, &[6, 15]), (12, &[9, 15]), (14, &[13, 16])],
        extended: &[(20, &[13, 21])],
    },
    TableSpec {
        name: "I={1,2,4}",
        graph: &[3],
        columns: &[Column::Omega, Column::Ratio],
        rows: &[
            (10, &[2, 5]),
            (12, &[3, 9]),
            (13, &[3, 13]),
            (14, &[3, 13]),
            (17, &[4, 14]),
            (19, &[4, 15]),
        ],
        extended: &[(29, &[7, 21]), (49, &[12, 34])],
    },
    TableSpec {
        name: "I={1,3}",
        graph: &[1, 3],
        columns: &[Column::Omega, Column::Alpha],
        rows: &[
            (10, &[9, 14]),
            (11, &[9, 14]),
            (12, &[9, 15]),
            (13, &[9, 15]),
            (13, &[13, 15]),
            (14, &[13, 21]),
            (15, &[13, 21]),
            (16, &[13, 28]),
        ],
        extended: &[],
    },
    TableSpec {
        name: "I={1,4}",
        graph: &[1, 4],
        columns: &[Column::Omega, Column::Alpha],
        rows: &[
            (9, &[6, 12]),
            (10, &[10, 15]),
            (11, &[10, 15]),
            (12, &[10, 15]),
            (13, &[10, 15]),
            (14, &[11, 15]),
            (15, &[15, 15]),
            (16, &[15, 15]),
        ],
        extended: &[],
    },
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    Match,
    Mismatch,
    /// The search ran out of budget; the value is a lower bound only.
    Timeout,
    /// The graph exceeds the memory budget.
    TooLarge,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cell {
    pub column: Column,
    pub expected: u64,
    /// Exact rational for ratio cells; the size found for search cells.
    pub computed: Option<String>,
    pub proved: bool,
    pub status: CellStatus,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub n: usize,
    /// Several rows share this `n`; at least one of them is expected to match.
    pub ambiguous: bool,
    pub extended: bool,
    pub cells: Vec<Cell>,
}

impl TableRow {
    pub fn matches(&self) -> bool {
        self.cells.iter().all(|c| c.status == CellStatus::Match)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub name: &'static str,
    pub graph: ClassSet,
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableSet {
    pub tables: Vec<Table>,
    pub matched: usize,
    pub mismatched: usize,
    pub unverified: usize,
    pub full_match: bool,
}

#[derive(Debug, Clone)]
pub struct TableOptions {
    pub extended: bool,
    /// Budget per search.
    pub budget: Option<Duration>,
    pub memory_budget_bytes: u64,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            extended: false,
            budget: Some(Duration::from_secs(300)),
            memory_budget_bytes: GraphOptions::default().memory_budget_bytes,
        }
    }
}

/// Budget for the maximum search run after a mismatch is already settled.
const MISMATCH_REFINE: Duration = Duration::from_secs(10);

fn search_cell(
    g: &SchemeGraph,
    column: Column,
    expected: u64,
    budget: Option<Duration>,
) -> Result<Cell> {
    let so = SearchOptions {
        time_budget: budget,
        ..Default::default()
    };
    // a set above the expected value settles a mismatch without a full search
    let above = expected as usize + 1;
    let d = if column == Column::Omega {
        find_clique_at_least(g, above, &so)?
    } else {
        find_coclique_at_least(g, above, &so)?
    };
    if let Some(w) = d.witness {
        // the mismatch is settled; a short maximum search reports a better value
        let short = SearchOptions {
            time_budget: Some(budget.map_or(MISMATCH_REFINE, |b| b.min(MISMATCH_REFINE))),
            ..Default::default()
        };
        let r = if column == Column::Omega { max_clique(g, &short)? } else { max_coclique(g, &short)? };
        let size = r.size.max(w.len());
        let proved = r.proved_optimal && r.size >= w.len();
        return Ok(Cell {
            column,
            expected,
            computed: Some(size.to_string()),
            proved,
            status: CellStatus::Mismatch,
            note: (!proved).then(|| format!("lower bound; a set of size {size} exists")),
        });
    }
    let r = if column == Column::Omega { max_clique(g, &so)? } else { max_coclique(g, &so)? };
    let status = if (r.upper_bound as u64) < expected {
        CellStatus::Mismatch
    } else if !r.proved_optimal {
        CellStatus::Timeout
    } else if r.size as u64 == expected {
        CellStatus::Match
    } else {
        CellStatus::Mismatch
    };
    Ok(Cell {
        column,
        expected,
        computed: Some(r.size.to_string()),
        proved: r.proved_optimal,
        status,
        note: None,
    })
}

/// For a mismatched ω cell of a single-class graph, checks the next class.
fn shifted_note(params: &SchemeParams, graph: &ClassSet, cell: &Cell, opts: &TableOptions) -> Result<Option<String>> {
    let cls = graph.classes();
    if cell.status != CellStatus::Mismatch || cls.len() != 1 || cls[0] >= params.k {
        return Ok(None);
    }
    let shifted = ClassSet::new(params.k, &[cls[0] + 1])?;
    let g = build_graph(
        params,
        &shifted,
        &GraphOptions {
            memory_budget_bytes: opts.memory_budget_bytes,
        },
    )?;
    let c = search_cell(&g, Column::Omega, cell.expected, opts.budget)?;
    Ok(match c.status {
        CellStatus::Match => Some(format!("expected value is ω(Γ_{shifted}) = {}", cell.expected)),
        _ => None,
    })
}

fn table_row(
    spec: &TableSpec,
    n: usize,
    expected: &[u64],
    ambiguous: bool,
    extended: bool,
    opts: &TableOptions,
) -> Result<TableRow> {
    let params = SchemeParams::new(n, 4)?;
    let graph = ClassSet::new(4, spec.graph)?;
    let too_large = adjacency_bytes(params.v) > opts.memory_budget_bytes as u128;
    let g = if too_large || spec.columns.iter().all(|&c| c == Column::Ratio) {
        None
    } else {
        Some(build_graph(
            &params,
            &graph,
            &GraphOptions {
                memory_budget_bytes: opts.memory_budget_bytes,
            },
        )?)
    };
    let mut cells = Vec::new();
    for (&column, &exp) in spec.columns.iter().zip(expected) {
        let cell = match (column, &g) {
            (Column::Ratio, _) => {
                let rb = ratio_bound_for(&params, &graph)?;
                let fl = rb.omega_if_equality.floor().to_integer();
                Cell {
                    column,
                    expected: exp,
                    computed: Some(crate::combinat::rat_string(&rb.omega_if_equality)),
                    proved: true,
                    status: if fl == BigInt::from(exp) { CellStatus::Match } else { CellStatus::Mismatch },
                    note: (!rb.omega_if_equality.denom().is_one()).then(|| "not integral".to_string()),
                }
            }
            (_, None) => Cell {
                column,
                expected: exp,
                computed: None,
                proved: false,
                status: CellStatus::TooLarge,
                note: Some(format!("adjacency needs {} bytes", adjacency_bytes(params.v))),
            },
            (_, Some(g)) => {
                let mut c = search_cell(g, column, exp, opts.budget)?;
                if column == Column::Omega && !too_large {
                    c.note = shifted_note(&params, &graph, &c, opts)?;
                }
                c
            }
        };
        cells.push(cell);
    }
    Ok(TableRow {
        n,
        ambiguous,
        extended,
        cells,
    })
}

/// Recomputes every cell of the four `k = 4` tables and compares with the
/// reference values. Extended rows run only when requested.
pub fn reproduce_k4_tables(opts: &TableOptions) -> Result<TableSet> {
    let mut jobs = Vec::new();
    for (ti, spec) in K4_TABLES.iter().enumerate() {
        let mut rows: Vec<(usize, &[u64], bool)> = spec.rows.iter().map(|&(n, e)| (n, e, false)).collect();
        if opts.extended {
            rows.extend(spec.extended.iter().map(|&(n, e)| (n, e, true)));
        }
        for &(n, e, ext) in &rows {
            let ambiguous = rows.iter().filter(|r| r.0 == n).count() > 1;
            jobs.push((ti, n, e, ambiguous, ext));
        }
    }
    let rows: Vec<Result<(usize, TableRow)>> = jobs
        .par_iter()
        .map(|&(ti, n, e, amb, ext)| Ok((ti, table_row(&K4_TABLES[ti], n, e, amb, ext, opts)?)))
        .collect();
    let mut tables: Vec<Table> = K4_TABLES
        .iter()
        .map(|s| {
            Ok(Table {
                name: s.name,
                graph: ClassSet::new(4, s.graph)?,
                rows: Vec::new(),
            })
        })
        .collect::<Result<_>>()?;
    for r in rows {
        let (ti, row) = r?;
        tables[ti].rows.push(row);
    }
    let (mut matched, mut mismatched, mut unverified) = (0, 0, 0);
    for t in &tables {
        let mut seen_ambiguous = Vec::new();
        for row in &t.rows {
            if row.ambiguous {
                if seen_ambiguous.contains(&row.n) {
                    continue;
                }
                seen_ambiguous.push(row.n);
                let group: Vec<&TableRow> = t.rows.iter().filter(|r| r.n == row.n).collect();
                if group.iter().any(|r| r.matches()) {
                    matched += 1;
                } else if group.iter().any(|r| r.cells.iter().any(|c| c.status == CellStatus::Mismatch)) {
                    mismatched += 1;
                } else {
                    unverified += 1;
                }
                continue;
            }
            for c in &row.cells {
                match c.status {
                    CellStatus::Match => matched += 1,
                    CellStatus::Mismatch => mismatched += 1,
                    CellStatus::Timeout | CellStatus::TooLarge => unverified += 1,
                }
            }
        }
    }
    Ok(TableSet {
        tables,
        matched,
        mismatched,
        unverified,
        full_match: mismatched == 0 && unverified == 0,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlaneCheck {
    pub q: usize,
    pub n: usize,
    pub k: usize,
    /// `C(q²+q-1, q-1)`, the size of a pair-kernel family.
    pub pair_kernel_size: u64,
    pub max_coclique: Estimate,
    pub maximum_cocliques: usize,
    pub exhaustive: bool,
    /// `None` unless the enumeration finished.
    pub all_pair_kernel: Option<bool>,
    pub non_kernel_example: Option<BlockFamily>,
    /// The conjecture for this `q`: maximum size is the pair-kernel size and
    /// every maximum coclique is a pair-kernel family.
    pub holds: Option<bool>,
}

/// Checks that the maximum cocliques of `Γ_{q}(q²+q+1, q+1)` are exactly the
/// families of all blocks through two fixed points.
pub fn projective_plane_conjecture_check(q: usize, budget: Option<Duration>) -> Result<PlaneCheck> {
    if q < 2 {
        return crate::error::domain(format!("need q >= 2, got {q}"));
    }
    let (n, k) = (q * q + q + 1, q + 1);
    let params = SchemeParams::new(n, k)?;
    let g = build_graph(&params, &ClassSet::new(k, &[q])?, &GraphOptions::default())?;
    let so = SearchOptions {
        time_budget: budget,
        ..Default::default()
    };
    let r = max_coclique(&g, &so)?;
    let pair_kernel_size = binom_u64(n - 2, k - 2);
    let max_coclique = Estimate {
        value: r.size,
        proved: r.proved_optimal,
        upper_bound: r.upper_bound as u64,
    };
    let mut out = PlaneCheck {
        q,
        n,
        k,
        pair_kernel_size,
        max_coclique,
        maximum_cocliques: 0,
        exhaustive: false,
        all_pair_kernel: None,
        non_kernel_example: None,
        holds: None,
    };
    if !r.proved_optimal {
        return Ok(out);
    }
    let e = enumerate_max_cocliques(&g, r.size, 1_000_000, budget)?;
    out.maximum_cocliques = e.sets.len();
    out.exhaustive = e.exhaustive;
    let is_pair_kernel = |s: &VertexSet| {
        let common = s.ksets().iter().fold(u64::MAX, |acc, b| acc & b.mask());
        common.count_ones() >= 2 && s.len() as u64 == pair_kernel_size
    };
    let bad = e.sets.iter().find(|s| !is_pair_kernel(s));
    out.non_kernel_example = bad.map(|s| BlockFamily::from_vertex_set("coclique", s));
    if bad.is_some() {
        out.all_pair_kernel = Some(false);
        out.holds = Some(false);
    } else if e.exhaustive {
        out.all_pair_kernel = Some(true);
        out.holds = Some(r.size as u64 == pair_kernel_size);
    }
    if r.size as u64 != pair_kernel_size {
        out.holds = Some(false);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> ClassifyOptions {
        ClassifyOptions {
            value_budget: Duration::ZERO,
            ..ClassifyOptions::with_budget(Duration::from_secs(60))
        }
    }

    #[test]
    fn nine_four_is_non_separating_via_13() {
        let r = classify_separation(9, 4, &quick()).unwrap();
        assert_eq!(r.verdict, Verdict::NonSeparating);
        let w = r.witness.unwrap();
        assert_eq!(w.classes, ClassSet::new(4, &[1, 3]).unwrap());
        assert_eq!((w.check.clique_size, w.check.coclique_size), (9, 14));
        assert!(w.check.equality && w.check.schur_ok);
    }

    #[test]
    fn ten_four_uses_sqs10() {
        let r = classify_separation(10, 4, &quick()).unwrap();
        assert_eq!(r.verdict, Verdict::NonSeparating);
        let w = r.witness.unwrap();
        assert_eq!(w.classes, ClassSet::delta(3, 4).unwrap());
        assert_eq!((w.clique.len(), w.coclique.len()), (30, 7));
        assert_eq!(r.sync_evidence.verdict, SyncVerdict::Synchronizing);
    }

    #[test]
    fn eleven_four_is_separating() {
        let r = classify_separation(11, 4, &quick()).unwrap();
        assert_eq!(r.verdict, Verdict::Separating, "{:#?}", r.per_class);
        assert_eq!(r.per_class.len(), 14);
        assert!(r.per_class.iter().all(|c| c.product_vs_v == Some("less")));
        assert_eq!(r.sync_evidence.verdict, SyncVerdict::Synchronizing);
    }

    #[test]
    fn records_are_transposed() {
        let r = classify_separation(8, 3, &quick()).unwrap();
        for rec in &r.per_class {
            let other = r.per_class.iter().find(|c| c.classes == rec.classes.complement()).unwrap();
            assert_eq!(rec.omega, other.alpha);
            assert_eq!(rec.decision, other.decision);
        }
    }

    #[test]
    fn small_n_reduces_to_complementary_k() {
        let r = classify_separation(7, 4, &quick()).unwrap();
        assert_eq!((r.k, r.reduced_from), (3, Some(4)));
        assert_eq!(r.sync_evidence.witness.as_ref().unwrap().case_id, "k3n7");
    }

    #[test]
    fn sync_notes() {
        let e = synchronization_evidence(12, 4).unwrap();
        assert_eq!(e.verdict, SyncVerdict::NonSynchronizing);
        assert_eq!(e.notes[0].source, NoteSource::Cited);
        let e = synchronization_evidence(10, 4).unwrap();
        assert_eq!(e.verdict, SyncVerdict::Synchronizing);
        assert_eq!(e.per_t.len(), 3);
        let e = synchronization_evidence(7, 3).unwrap();
        assert_eq!(e.verdict, SyncVerdict::NonSynchronizing);
        assert_eq!(e.witness.unwrap().clique_size, 7);
        let e = synchronization_evidence(17, 4).unwrap();
        assert_eq!(e.verdict, SyncVerdict::Undecided);
    }

    #[test]
    fn plane_q2_has_other_cocliques() {
        let c = projective_plane_conjecture_check(2, None).unwrap();
        assert_eq!((c.n, c.k, c.pair_kernel_size), (7, 3, 5));
        assert!(c.exhaustive);
        assert_eq!(c.holds, Some(false));
    }
}
