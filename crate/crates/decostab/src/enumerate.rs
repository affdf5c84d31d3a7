//! Exhaustive desk-scale model generators and the theorem-verification
//! suites.
//!
//! `enumerate_models` produces a deterministic, duplicate-free stream of
//! small models. Single-subobject and chain catalogs carry free numerical
//! data; catalogs with incomparable subobjects are generated as direct-sum
//! configurations (quadruples additive along the declared joins), which is
//! the family actually realized by decorated bundles — graded-object
//! uniqueness would be meaningless on catalogs no bundle realizes.
//!
//! Every verifier pits two independent code paths against each other
//! (closed form vs. tuple brute force, κ-sum vs. explicit product pattern,
//! subspace inequality vs. one-parameter-subgroup battery) and emits one
//! record per checked instance.

use serde::Serialize;

use crate::error::Error;
use crate::gitpoint::{default_l0, default_m0, equivalence_check, point_from_bundle};
use crate::jh::{all_jh_chains, graded_of, jordan_holder};
use crate::model::{
    BundleData, BundleModel, DecorationType, ProfileData, SubobjectDescriptor, WeightedFiltration,
};
use crate::rational::{format_q, q, qi, sign, Q};
use crate::stability::{
    boundedness_constants, chains, combine_decorations, fr_slope, is_2dgpb_semistable,
    is_dgpb_semistable, is_fr_semistable, mu_filtration, mu_subsheaf, WeightGrid,
};

/// Bounds of an exhaustive enumeration. All streams derived from equal
/// bounds are identical across runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationBounds {
    pub r_max: u32,
    pub d_abs_max: i64,
    pub genus_set: Vec<u32>,
    /// Range for `dim R` and subobject qdims; `None` pins `dim R = r` and
    /// lets subobject qdims roam their full legal range.
    pub qdim_range: Option<(u32, u32)>,
    pub a_max: u32,
    /// Weight numerators `1..=weight_max` over denominator 1.
    pub weight_max: i64,
    /// Catalog size cap, counting the zero subobject and `E`.
    pub catalog_max: usize,
}

impl Default for EnumerationBounds {
    fn default() -> Self {
        EnumerationBounds {
            r_max: 3,
            d_abs_max: 2,
            genus_set: vec![2],
            qdim_range: None,
            a_max: 3,
            weight_max: 3,
            catalog_max: 6,
        }
    }
}

impl EnumerationBounds {
    fn dim_r_choices(&self, rank: u32) -> Vec<u32> {
        match self.qdim_range {
            None => vec![rank],
            Some((lo, hi)) => (lo..=hi.min(2 * rank)).collect(),
        }
    }

    fn qdim_ok(&self, qdim: u32) -> bool {
        match self.qdim_range {
            None => true,
            Some((lo, hi)) => qdim >= lo && qdim <= hi,
        }
    }

    pub fn grid(&self) -> WeightGrid {
        WeightGrid::new((1..=self.weight_max.max(1)).map(qi).collect())
            .expect("weight bound >= 1 gives a nonempty grid")
    }
}

/// Level maps for one subobject: `0..=a`.
fn levels(a: u32) -> impl Iterator<Item = u32> {
    0..=a
}

/// Legal qdims of a proper subobject: within `min(2 rank, dim_r)` and
/// leaving the quotient enough room.
fn legal_qdims(bounds: &EnumerationBounds, rank: u32, sub_rank: u32, dim_r: u32) -> Vec<u32> {
    let hi = (2 * sub_rank).min(dim_r);
    let lo = dim_r.saturating_sub(2 * (rank - sub_rank));
    (lo..=hi).filter(|&v| bounds.qdim_ok(v)).collect()
}

/// Subobject degrees: within the absolute cap and the boundedness slope cap.
fn legal_degrees(
    bounds: &EnumerationBounds,
    deco: &DecorationType,
    rank: u32,
    degree: i64,
    sub_rank: u32,
) -> Vec<i64> {
    let (_, slope_bound) = boundedness_constants(deco, deco, rank, degree);
    (-bounds.d_abs_max..=bounds.d_abs_max)
        .filter(|&df| qi(df) <= qi(i64::from(sub_rank)) * slope_bound)
        .collect()
}

/// Deterministic lexicographic stream of models within the bounds.
pub fn enumerate_models(bounds: &EnumerationBounds) -> Vec<BundleModel> {
    let mut out = Vec::new();
    for rank in 1..=bounds.r_max {
        for degree in -bounds.d_abs_max..=bounds.d_abs_max {
            for &genus in &bounds.genus_set {
                for dim_r in bounds.dim_r_choices(rank) {
                    for a in 1..=bounds.a_max {
                        let deco = DecorationType::new(a, 1, 0, 0, 0);
                        push_shapes(bounds, rank, degree, genus, dim_r, deco, &mut out);
                    }
                }
            }
        }
    }
    out
}

fn push_shapes(
    bounds: &EnumerationBounds,
    rank: u32,
    degree: i64,
    genus: u32,
    dim_r: u32,
    deco: DecorationType,
    out: &mut Vec<BundleModel>,
) {
    let build = |subs: Vec<SubobjectDescriptor>,
                 relations: Vec<(String, String)>,
                 kappa: Vec<(&str, u32)>| {
        BundleModel::new(BundleData {
            rank,
            degree,
            genus,
            dim_r,
            deco,
            subobjects: subs,
            relations,
            profile: ProfileData::kappa(&kappa, true),
        })
        .expect("enumerated data is valid")
    };
    let a = deco.a;

    // trivial catalog
    if bounds.catalog_max >= 2 {
        out.push(build(vec![], vec![], vec![]));
    }

    // one free proper subobject
    if bounds.catalog_max >= 3 {
        for sub_rank in 1..rank {
            for df in legal_degrees(bounds, &deco, rank, degree, sub_rank) {
                for qf in legal_qdims(bounds, rank, sub_rank, dim_r) {
                    for kf in levels(a) {
                        out.push(build(
                            vec![SubobjectDescriptor::new("F", sub_rank, df, qf)],
                            vec![],
                            vec![("F", kf)],
                        ));
                    }
                }
            }
        }
    }

    // chain F1 < F2 with free data (chains force a unique J-H route)
    if bounds.catalog_max >= 4 && rank >= 3 {
        for d1 in legal_degrees(bounds, &deco, rank, degree, 1) {
            for d2 in legal_degrees(bounds, &deco, rank, degree, 2) {
                for q1 in legal_qdims(bounds, rank, 1, dim_r) {
                    for q2 in legal_qdims(bounds, rank, 2, dim_r) {
                        if q2 < q1 || q2 - q1 > 2 {
                            continue;
                        }
                        for k1 in levels(a) {
                            for k2 in k1..=a {
                                out.push(build(
                                    vec![
                                        SubobjectDescriptor::new("F1", 1, d1, q1),
                                        SubobjectDescriptor::new("F2", 2, d2, q2),
                                    ],
                                    vec![("F1".into(), "F2".into())],
                                    vec![("F1", k1), ("F2", k2)],
                                ));
                            }
                        }
                    }
                }
            }
        }
    }

    // rank 2 split into two rank-1 pieces: quadruples add up to E
    if bounds.catalog_max >= 4 && rank == 2 {
        for d1 in legal_degrees(bounds, &deco, rank, degree, 1) {
            let d2 = degree - d1;
            if d2.abs() > bounds.d_abs_max
                || !legal_degrees(bounds, &deco, rank, degree, 1).contains(&d2)
            {
                continue;
            }
            for q1 in legal_qdims(bounds, rank, 1, dim_r) {
                let Some(q2) = dim_r.checked_sub(q1) else {
                    continue;
                };
                if !legal_qdims(bounds, rank, 1, dim_r).contains(&q2) {
                    continue;
                }
                for k1 in levels(a) {
                    for k2 in levels(a) {
                        // avoid the mirror duplicate
                        if (d1, q1, k1) > (d2, q2, k2) {
                            continue;
                        }
                        out.push(build(
                            vec![
                                SubobjectDescriptor::new("A", 1, d1, q1),
                                SubobjectDescriptor::new("B", 1, d2, q2),
                            ],
                            vec![],
                            vec![("A", k1), ("B", k2)],
                        ));
                    }
                }
            }
        }
    }

    // rank 3 split into incomparable rank-1 + rank-2 pieces
    if bounds.catalog_max >= 4 && rank == 3 {
        for d1 in legal_degrees(bounds, &deco, rank, degree, 1) {
            let d2 = degree - d1;
            if !legal_degrees(bounds, &deco, rank, degree, 2).contains(&d2) {
                continue;
            }
            for q1 in legal_qdims(bounds, rank, 1, dim_r) {
                let Some(q2) = dim_r.checked_sub(q1) else {
                    continue;
                };
                if !legal_qdims(bounds, rank, 2, dim_r).contains(&q2) {
                    continue;
                }
                for k1 in levels(a) {
                    for k2 in levels(a) {
                        out.push(build(
                            vec![
                                SubobjectDescriptor::new("A", 1, d1, q1),
                                SubobjectDescriptor::new("G", 2, d2, q2),
                            ],
                            vec![],
                            vec![("A", k1), ("G", k2)],
                        ));
                    }
                }
            }
        }
    }

    // rank 3 diamond: pieces A, B joining in J = A + B below E
    if bounds.catalog_max >= 5 && rank == 3 {
        for d1 in legal_degrees(bounds, &deco, rank, degree, 1) {
            for d2 in legal_degrees(bounds, &deco, rank, degree, 1) {
                let dj = d1 + d2;
                if !legal_degrees(bounds, &deco, rank, degree, 2).contains(&dj) {
                    continue;
                }
                for q1 in legal_qdims(bounds, rank, 1, dim_r) {
                    for q2 in legal_qdims(bounds, rank, 1, dim_r) {
                        let qj = q1 + q2;
                        if !legal_qdims(bounds, rank, 2, dim_r).contains(&qj) {
                            continue;
                        }
                        for k1 in levels(a) {
                            for k2 in levels(a) {
                                if (d1, q1, k1) > (d2, q2, k2) {
                                    continue;
                                }
                                // levels a direct sum J = A ⊕ B can realize:
                                // at most k1 + k2 surviving slots, and the
                                // decoration survives on all of J^{⊗a} only
                                // if it already does on a piece
                                for kj in k1.max(k2)..=a.min(k1 + k2) {
                                    if kj == a && k1 != a && k2 != a {
                                        continue;
                                    }
                                    out.push(build(
                                        vec![
                                            SubobjectDescriptor::new("A", 1, d1, q1),
                                            SubobjectDescriptor::new("B", 1, d2, q2),
                                            SubobjectDescriptor::new("J", 2, dj, qj),
                                        ],
                                        vec![("A".into(), "J".into()), ("B".into(), "J".into())],
                                        vec![("A", k1), ("B", k2), ("J", kj)],
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

/// All weighted filtrations of a model: every strictly increasing catalog
/// chain crossed with every weight tuple from the grid, the empty
/// filtration first, in lexicographic order.
pub fn enumerate_filtrations(model: &BundleModel, weight_max: i64) -> Vec<WeightedFiltration> {
    let weights: Vec<Q> = (1..=weight_max.max(1)).map(qi).collect();
    let mut out = Vec::new();
    for chain in chains(model) {
        let s = chain.len();
        if s == 0 {
            out.push(WeightedFiltration::empty());
            continue;
        }
        let mut picks = vec![0usize; s];
        'tuples: loop {
            out.push(WeightedFiltration::new(
                chain.clone(),
                picks.iter().map(|&i| weights[i]).collect(),
            ));
            let mut pos = s;
            loop {
                if pos == 0 {
                    break 'tuples;
                }
                pos -= 1;
                picks[pos] += 1;
                if picks[pos] < weights.len() {
                    break;
                }
                picks[pos] = 0;
            }
        }
    }
    out
}

/// Worker cap from the `DECOSTAB_THREADS` environment variable (default 1).
pub fn worker_count() -> usize {
    std::env::var("DECOSTAB_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(1)
}

/// Ordered parallel map: results come back in input order regardless of the
/// worker count, so reports stay byte-deterministic.
fn map_ordered<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync) -> Vec<U> {
    let workers = worker_count();
    if workers <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    let mut slots: Vec<Option<Vec<U>>> = Vec::new();
    slots.resize_with(items.chunks(chunk).len(), || None);
    std::thread::scope(|scope| {
        let f = &f;
        let mut handles = Vec::new();
        for piece in items.chunks(chunk) {
            handles.push(scope.spawn(move || piece.iter().map(f).collect::<Vec<U>>()));
        }
        for (slot, handle) in slots.iter_mut().zip(handles) {
            *slot = Some(handle.join().expect("verification worker panicked"));
        }
    });
    slots.into_iter().flatten().flatten().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckVerdict {
    Ok,
    Violation,
}

/// One checked instance of a property, serialized as a JSON line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub instance: String,
    pub property: String,
    pub lhs: String,
    pub rhs: String,
    pub verdict: CheckVerdict,
}

impl CheckRecord {
    fn compare(instance: String, property: &str, lhs: String, rhs: String, ok: bool) -> Self {
        CheckRecord {
            instance,
            property: property.to_string(),
            lhs,
            rhs,
            verdict: if ok {
                CheckVerdict::Ok
            } else {
                CheckVerdict::Violation
            },
        }
    }
}

/// Totals of one suite run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub checked: usize,
    pub violations: usize,
}

fn summarize(suite: &str, records: &[CheckRecord]) -> SuiteSummary {
    SuiteSummary {
        suite: suite.to_string(),
        checked: records.len(),
        violations: records
            .iter()
            .filter(|r| r.verdict == CheckVerdict::Violation)
            .count(),
    }
}

fn filt_brief(model: &BundleModel, filt: &WeightedFiltration) -> String {
    if filt.is_empty() {
        return "[]".to_string();
    }
    let parts: Vec<String> = filt
        .steps
        .iter()
        .zip(&filt.weights)
        .map(|(&s, &w)| format!("{}:{}", model.sub(s).id, format_q(w)))
        .collect();
    format!("[{}]", parts.join(" "))
}

/// Additivity records for one model: the weighted sum of closed-form
/// subobject μ's against the brute-force filtration μ, for every filtration.
pub fn additivity_records(model: &BundleModel, weight_max: i64) -> Vec<CheckRecord> {
    let mut records = Vec::new();
    for filt in enumerate_filtrations(model, weight_max) {
        let closed: Q = filt
            .steps
            .iter()
            .zip(&filt.weights)
            .map(|(&s, &w)| w * mu_subsheaf(model, s))
            .sum();
        let brute = match mu_filtration(model, &filt) {
            Ok(v) => v,
            Err(_) => qi(0),
        };
        records.push(CheckRecord::compare(
            format!("{} flt={}", model.brief(), filt_brief(model, &filt)),
            "additivity",
            format_q(closed),
            format_q(brute),
            closed == brute,
        ));
    }
    records
}

/// Σ α_i μ(E_i, E) = μ(E^•, α; φ) over every κ-profile model in bounds.
pub fn verify_additivity(
    bounds: &EnumerationBounds,
    sink: &mut dyn FnMut(&CheckRecord),
) -> SuiteSummary {
    let models = enumerate_models(bounds);
    let all = map_ordered(&models, |m| additivity_records(m, bounds.weight_max));
    let mut records = Vec::new();
    for batch in all {
        records.extend(batch);
    }
    for r in &records {
        sink(r);
    }
    summarize("additivity", &records)
}

/// Monotone second-decoration profiles over a model's catalog.
fn second_profiles(model: &BundleModel, a2: u32) -> Vec<ProfileData> {
    let proper: Vec<_> = model.proper().collect();
    let mut out = Vec::new();
    let mut levels = vec![0u32; proper.len()];
    loop {
        let monotone = proper.iter().enumerate().all(|(i, &fi)| {
            proper
                .iter()
                .enumerate()
                .all(|(j, &fj)| !model.lt(fi, fj) || levels[i] <= levels[j])
        });
        if monotone {
            out.push(ProfileData::Kappa {
                kappa: proper
                    .iter()
                    .zip(&levels)
                    .map(|(&f, &lv)| (model.sub(f).id.clone(), lv))
                    .collect(),
                global_epsilon: true,
            });
        }
        let mut pos = 0;
        loop {
            if pos == levels.len() {
                return out;
            }
            levels[pos] += 1;
            if levels[pos] <= a2 {
                break;
            }
            levels[pos] = 0;
            pos += 1;
        }
    }
}

/// Explicit-product route for the Segre combination: the combined profile as
/// the literal slot-wise product pattern, independent of the κ-sum rule.
fn combined_explicit(first: &BundleModel, second: &BundleModel) -> Result<BundleModel, Error> {
    let combined = combine_decorations(first, second)?;
    let tuples_first = crate::stability::induced_tuples(first);
    let tuples_second = crate::stability::induced_tuples(second);
    let mut admissible = std::collections::BTreeSet::new();
    for t1 in &tuples_first {
        for t2 in &tuples_second {
            let mut t = t1.clone();
            t.extend(t2.iter().cloned());
            admissible.insert(t);
        }
    }
    let profile = ProfileData::Explicit {
        admissible,
        global_epsilon: first.global_epsilon() && second.global_epsilon(),
    };
    first.with_decoration(*combined.deco(), &profile)
}

/// Segre records for one (first, second) decoration pair.
fn segre_records(
    first: &BundleModel,
    second: &BundleModel,
    weight_max: i64,
    deltas: &[Q],
) -> Vec<CheckRecord> {
    let mut records = Vec::new();
    let combined = combine_decorations(first, second).expect("same catalog by construction");
    let explicit = combined_explicit(first, second).expect("same catalog by construction");
    let instance_base = format!(
        "{} + a2={}:{}",
        first.brief(),
        second.deco().a,
        second
            .proper()
            .map(|f| format!("k{}", second.kappa(f)))
            .collect::<Vec<_>>()
            .join(",")
    );
    for filt in enumerate_filtrations(first, weight_max) {
        let mu_sum = mu_filtration(first, &filt).unwrap() + mu_filtration(second, &filt).unwrap();
        let mu_product = mu_filtration(&explicit, &filt).unwrap();
        let mu_kappa = mu_filtration(&combined, &filt).unwrap();
        let instance = format!("{} flt={}", instance_base, filt_brief(first, &filt));
        records.push(CheckRecord::compare(
            instance.clone(),
            "segre-mu",
            format_q(mu_product),
            format_q(mu_sum),
            mu_product == mu_sum,
        ));
        records.push(CheckRecord::compare(
            instance,
            "segre-kappa-pattern",
            format_q(mu_kappa),
            format_q(mu_product),
            mu_kappa == mu_product,
        ));
    }
    let grid = WeightGrid::new((1..=weight_max.max(1)).map(qi).collect()).unwrap();
    for &delta in deltas {
        let two = is_2dgpb_semistable(first, second, delta, delta, &grid).unwrap();
        let one = is_dgpb_semistable(&combined, delta, &grid).unwrap();
        records.push(CheckRecord::compare(
            format!("{} δ={}", instance_base, format_q(delta)),
            "segre-verdict",
            format!("{:?}@{:?}", two.verdict, two.margin.map(format_q)),
            format!("{:?}@{:?}", one.verdict, one.margin.map(format_q)),
            two.verdict == one.verdict && two.margin == one.margin && two.witness == one.witness,
        ));
    }
    records
}

/// μ-additivity under Segre combination plus verdict equality of the
/// double-decorated and combined checks, for `a1, a2 <= 2`.
///
/// The identity is per-filtration, so the suite walks a narrower instance
/// family than the other verifiers (degree window 1, catalogs up to one
/// chain or split pair) and crosses it with every second profile instead.
pub fn verify_segre(
    bounds: &EnumerationBounds,
    deltas: &[Q],
    sink: &mut dyn FnMut(&CheckRecord),
) -> SuiteSummary {
    let bounds = EnumerationBounds {
        d_abs_max: bounds.d_abs_max.min(1),
        catalog_max: bounds.catalog_max.min(4),
        ..bounds.clone()
    };
    let bounds = &bounds;
    let models: Vec<BundleModel> = enumerate_models(bounds)
        .into_iter()
        .filter(|m| m.deco().a <= 2)
        .collect();
    let all = map_ordered(&models, |first| {
        let mut records = Vec::new();
        for a2 in 1..=2u32.min(bounds.a_max) {
            let deco2 = DecorationType::new(a2, 1, 0, 0, 0);
            for profile in second_profiles(first, a2) {
                let second = first
                    .with_decoration(deco2, &profile)
                    .expect("profile enumerated over the same catalog");
                records.extend(segre_records(first, &second, bounds.weight_max, deltas));
            }
        }
        records
    });
    let mut records = Vec::new();
    for batch in all {
        records.extend(batch);
    }
    for r in &records {
        sink(r);
    }
    summarize("segre", &records)
}

/// fr-semistability implies δ-semistability on every enumerated model.
pub fn verify_fr_implies_delta(
    bounds: &EnumerationBounds,
    deltas: &[Q],
    sink: &mut dyn FnMut(&CheckRecord),
) -> SuiteSummary {
    let models = enumerate_models(bounds);
    let grid = bounds.grid();
    let all = map_ordered(&models, |model| {
        let mut records = Vec::new();
        for &delta in deltas {
            let fr = is_fr_semistable(model, delta);
            let dgpb = is_dgpb_semistable(model, delta, &grid).unwrap();
            let ok = !fr.verdict.is_semistable() || dgpb.verdict.is_semistable();
            records.push(CheckRecord::compare(
                format!("{} δ={}", model.brief(), format_q(delta)),
                "fr-implies-delta",
                format!("fr={}", fr.verdict.label()),
                format!("dgpb={}", dgpb.verdict.label()),
                ok,
            ));
        }
        records
    });
    let mut records = Vec::new();
    for batch in all {
        records.extend(batch);
    }
    for r in &records {
        sink(r);
    }
    summarize("fr", &records)
}

/// Graded-object uniqueness and conservation across every Jordan-Hölder
/// chain of every fr-semistable model.
pub fn verify_jh(
    bounds: &EnumerationBounds,
    deltas: &[Q],
    sink: &mut dyn FnMut(&CheckRecord),
) -> SuiteSummary {
    let models = enumerate_models(bounds);
    let all = map_ordered(&models, |model| {
        let mut records = Vec::new();
        for &delta in deltas {
            if !is_fr_semistable(model, delta).verdict.is_semistable() {
                continue;
            }
            let instance = format!("{} δ={}", model.brief(), format_q(delta));
            let chains = all_jh_chains(model, delta).unwrap();
            if chains.is_empty() {
                // catalog too coarse to exhibit any chain; counted, not failed
                records.push(CheckRecord::compare(
                    instance.clone(),
                    "jh-catalog-incomplete",
                    "0".into(),
                    "chains".into(),
                    true,
                ));
                continue;
            }
            let gradeds: Vec<_> = chains.iter().map(|c| graded_of(model, c)).collect();
            let first = &gradeds[0];
            let unique = gradeds.iter().all(|g| g == first);
            records.push(CheckRecord::compare(
                instance.clone(),
                "jh-gr-unique",
                format!("{} chains", chains.len()),
                format!("{} distinct gr", if unique { 1 } else { 2 }),
                unique,
            ));
            let conserve = gradeds.iter().all(|g| g.conserves(model));
            records.push(CheckRecord::compare(
                instance.clone(),
                "jh-conservation",
                "factor totals".into(),
                "model totals".into(),
                conserve,
            ));
            let greedy = jordan_holder(model, delta).unwrap();
            records.push(CheckRecord::compare(
                instance,
                "jh-greedy-matches",
                "greedy gr".into(),
                "exhaustive gr".into(),
                greedy.graded == *first,
            ));
        }
        records
    });
    let mut records = Vec::new();
    for batch in all {
        records.extend(batch);
    }
    for r in &records {
        sink(r);
    }
    summarize("jh", &records)
}

/// GIT equivalence: the substituted point inequality, the leading
/// coefficient inequality and the fr verdict agree on every (model, F, l),
/// and the one-parameter-subgroup battery reproduces the subspace
/// inequality on bundle-induced points.
///
/// Fails fast if a user-supplied twist violates the positivity
/// preconditions; the per-model defaults never do.
pub fn verify_git(
    bounds: &EnumerationBounds,
    m_override: Option<i64>,
    l_override: Option<&[i64]>,
    deltas: &[Q],
    sink: &mut dyn FnMut(&CheckRecord),
) -> Result<SuiteSummary, Error> {
    let models = enumerate_models(bounds);
    let all = map_ordered(&models, |model| {
        let mut records = Vec::new();
        for &delta in deltas {
            let m = m_override.unwrap_or_else(|| default_m0(model, delta));
            let l0 = default_l0(m);
            let samples: Vec<i64> = match l_override {
                Some(ls) => ls.to_vec(),
                None => vec![l0, 2 * l0, 4 * l0],
            };
            let instance = format!("{} δ={} m={}", model.brief(), format_q(delta), m);
            let report = equivalence_check(model, m, &samples, delta)?;
            for row in &report.rows {
                records.push(CheckRecord::compare(
                    format!("{} F={} l={}", instance, row.sub_id, row.l),
                    "git-equivalence",
                    format!(
                        "sub={}≤{} lead={}≤{}",
                        format_q(row.substituted_lhs),
                        format_q(row.substituted_rhs),
                        format_q(row.leading_lhs),
                        format_q(row.leading_rhs)
                    ),
                    format!("fr={}≤{}", format_q(row.fr_lhs), format_q(row.fr_rhs)),
                    row.agree,
                ));
            }
            let point = point_from_bundle(model, m, l0, delta)?;
            for rec in &point.subspaces {
                let closed = point.subspace_margin(rec);
                let battery = point.three_term_margin(rec)?;
                records.push(CheckRecord::compare(
                    format!("{} Y'={} l={}", instance, rec.id, l0),
                    "git-battery",
                    format_q(battery),
                    format_q(closed),
                    battery == closed,
                ));
                let f = point
                    .bundle
                    .idx(&rec.id)
                    .expect("record ids come from the catalog");
                let fr_diff = fr_slope(&point.bundle, point.bundle.full(), delta)?
                    - fr_slope(&point.bundle, f, delta)?;
                records.push(CheckRecord::compare(
                    format!("{} Y'={} l={}", instance, rec.id, l0),
                    "git-point-sign",
                    format!("point={}", sign(closed)),
                    format!("fr={}", sign(fr_diff)),
                    sign(closed) == sign(fr_diff),
                ));
            }
        }
        Ok(records)
    });
    let mut records = Vec::new();
    for batch in all {
        records.extend(batch?);
    }
    for r in &records {
        sink(r);
    }
    Ok(summarize("git", &records))
}

/// Which suites to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Additivity,
    Segre,
    Fr,
    Jh,
    Git,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "additivity" => Ok(Suite::Additivity),
            "segre" => Ok(Suite::Segre),
            "fr" => Ok(Suite::Fr),
            "jh" => Ok(Suite::Jh),
            "git" => Ok(Suite::Git),
            "all" => Ok(Suite::All),
            other => Err(Error::validation(format!("unknown suite {other:?}"))),
        }
    }
}

/// Options shared by the verification suites.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// δ values for the fr, jh and git suites.
    pub deltas: Vec<Q>,
    /// δ values for the Segre verdict-equality check.
    pub segre_deltas: Vec<Q>,
    pub m: Option<i64>,
    pub l_samples: Option<Vec<i64>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            deltas: vec![q(1, 2), qi(1), qi(2)],
            segre_deltas: vec![q(1, 2), qi(1)],
            m: None,
            l_samples: None,
        }
    }
}

/// Runs a suite (or all of them), streaming records into the sink.
pub fn run_suite(
    suite: Suite,
    bounds: &EnumerationBounds,
    options: &VerifyOptions,
    sink: &mut dyn FnMut(&CheckRecord),
) -> Result<Vec<SuiteSummary>, Error> {
    let mut summaries = Vec::new();
    if matches!(suite, Suite::Additivity | Suite::All) {
        summaries.push(verify_additivity(bounds, sink));
    }
    if matches!(suite, Suite::Segre | Suite::All) {
        summaries.push(verify_segre(bounds, &options.segre_deltas, sink));
    }
    if matches!(suite, Suite::Fr | Suite::All) {
        summaries.push(verify_fr_implies_delta(bounds, &options.deltas, sink));
    }
    if matches!(suite, Suite::Jh | Suite::All) {
        summaries.push(verify_jh(bounds, &options.deltas, sink));
    }
    if matches!(suite, Suite::Git | Suite::All) {
        summaries.push(verify_git(
            bounds,
            options.m,
            options.l_samples.as_deref(),
            &options.deltas,
            sink,
        )?);
    }
    Ok(summaries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_bounds() -> EnumerationBounds {
        EnumerationBounds {
            r_max: 2,
            d_abs_max: 1,
            genus_set: vec![2],
            qdim_range: None,
            a_max: 2,
            weight_max: 3,
            catalog_max: 6,
        }
    }

    #[test]
    fn rank_one_bounds_give_only_trivial_catalogs() {
        let bounds = EnumerationBounds {
            r_max: 1,
            ..tiny_bounds()
        };
        let models = enumerate_models(&bounds);
        assert!(!models.is_empty());
        assert!(models.iter().all(|m| m.catalog_len() == 2));
    }

    #[test]
    fn streams_are_deterministic() {
        let bounds = tiny_bounds();
        let a = enumerate_models(&bounds);
        let b = enumerate_models(&bounds);
        assert_eq!(a.len(), b.len());
        assert!(a.iter().zip(&b).all(|(x, y)| x == y));
    }

    #[test]
    fn streams_are_duplicate_free() {
        let models = enumerate_models(&tiny_bounds());
        for (i, a) in models.iter().enumerate() {
            for b in models.iter().skip(i + 1) {
                assert_ne!(a, b, "duplicate model {}", a.brief());
            }
        }
    }

    #[test]
    fn model_count_regression() {
        // frozen once: r <= 2, |d| <= 1, qdim in 0..=2, a <= 2
        let bounds = EnumerationBounds {
            r_max: 2,
            d_abs_max: 1,
            genus_set: vec![2],
            qdim_range: Some((0, 2)),
            a_max: 2,
            weight_max: 3,
            catalog_max: 6,
        };
        assert_eq!(enumerate_models(&bounds).len(), 584);
    }

    #[test]
    fn filtration_counts_on_small_catalogs() {
        let bounds = tiny_bounds();
        let trivial = enumerate_models(&EnumerationBounds {
            r_max: 1,
            ..bounds.clone()
        })
        .into_iter()
        .next()
        .unwrap();
        assert_eq!(
            enumerate_filtrations(&trivial, 3).len(),
            1,
            "only the empty filtration"
        );

        let one_sub = enumerate_models(&bounds)
            .into_iter()
            .find(|m| m.catalog_len() == 3)
            .unwrap();
        // the empty filtration plus one-step filtrations at weights 1, 2, 3
        assert_eq!(enumerate_filtrations(&one_sub, 3).len(), 1 + 3);
        assert_eq!(enumerate_filtrations(&one_sub, 1).len(), 1 + 1);

        // a two-step chain at weight bound 1 carries exactly one filtration
        let chain = enumerate_models(&EnumerationBounds {
            r_max: 3,
            catalog_max: 4,
            ..bounds.clone()
        })
        .into_iter()
        .find(|m| {
            let proper: Vec<_> = m.proper().collect();
            proper.len() == 2 && m.lt(proper[0], proper[1])
        })
        .unwrap();
        let two_steps: Vec<_> = enumerate_filtrations(&chain, 1)
            .into_iter()
            .filter(|f| f.len() == 2)
            .collect();
        assert_eq!(two_steps.len(), 1);
    }

    #[test]
    fn empty_bounds_give_an_empty_stream() {
        let bounds = EnumerationBounds {
            genus_set: vec![],
            ..tiny_bounds()
        };
        assert!(enumerate_models(&bounds).is_empty());
    }

    #[test]
    fn additivity_suite_is_clean_on_tiny_bounds() {
        let mut count = 0;
        let summary = verify_additivity(&tiny_bounds(), &mut |_r| count += 1);
        assert_eq!(summary.violations, 0);
        assert_eq!(summary.checked, count);
        assert!(summary.checked > 0);
    }

    #[test]
    fn fr_suite_is_clean_on_tiny_bounds() {
        let summary = verify_fr_implies_delta(&tiny_bounds(), &[qi(1)], &mut |_r| {});
        assert_eq!(summary.violations, 0);
    }

    #[test]
    fn jh_suite_is_clean_on_tiny_bounds() {
        let summary = verify_jh(&tiny_bounds(), &[qi(1)], &mut |_r| {});
        assert_eq!(summary.violations, 0);
        assert!(summary.checked > 0);
    }

    #[test]
    fn explicit_pattern_violations_are_reported_not_masked() {
        use crate::model::{BundleData, ProfileData, SubobjectDescriptor};
        let ids = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let mut admissible = std::collections::BTreeSet::new();
        for t in [
            ids(&["E1", "E"]),
            ids(&["E2", "E2"]),
            ids(&["E2", "E"]),
            ids(&["E", "E2"]),
            ids(&["E", "E"]),
        ] {
            admissible.insert(t);
        }
        let model = BundleModel::new(BundleData {
            rank: 3,
            degree: 0,
            genus: 2,
            dim_r: 3,
            deco: DecorationType::new(2, 1, 0, 0, 0),
            subobjects: vec![
                SubobjectDescriptor::new("E1", 1, 0, 1),
                SubobjectDescriptor::new("E2", 2, 0, 2),
            ],
            relations: vec![("E1".into(), "E2".into())],
            profile: ProfileData::Explicit {
                admissible,
                global_epsilon: true,
            },
        })
        .unwrap();
        let records = additivity_records(&model, 3);
        let violations: Vec<_> = records
            .iter()
            .filter(|r| r.verdict == CheckVerdict::Violation)
            .collect();
        assert!(!violations.is_empty(), "the known violation must surface");
        for v in &violations {
            assert_ne!(v.lhs, v.rhs, "report must carry both sides");
        }
    }
}
