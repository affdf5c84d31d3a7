//! Stability functionals: parabolic degree, γ weight vectors, the
//! μ-functionals of tensor decorations, the P-functional, the slope-style
//! fr-functional, and the four (semi)stability predicates built from them.
//!
//! Everything here is exact rational arithmetic. The μ of a weighted
//! filtration is always computed by brute-force minimisation over admissible
//! tensor tuples; the closed form `μ(F, E) = κ(F)·rk E − a·rk F` is kept as
//! an independent code path so the two can cross-check each other.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::model::{
    BundleModel, DecorationType, ProfileData, SubIdx, SubobjectDescriptor, WeightedFiltration,
};
use crate::rational::{qi, Q};

/// Outcome of a semistability scan.
///
/// `StrictlySemistable` means every test value is `>= 0` with at least one
/// exact `0`: semistable but not stable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Stable,
    #[serde(rename = "semistable")]
    StrictlySemistable,
    Unstable,
}

impl Verdict {
    pub fn is_semistable(self) -> bool {
        !matches!(self, Verdict::Unstable)
    }

    pub fn is_stable(self) -> bool {
        matches!(self, Verdict::Stable)
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Stable => "STABLE",
            Verdict::StrictlySemistable => "SEMISTABLE",
            Verdict::Unstable => "UNSTABLE",
        }
    }

    fn from_min(min: Option<Q>) -> Self {
        match min {
            None => Verdict::Stable,
            Some(v) if v > qi(0) => Verdict::Stable,
            Some(v) if v == qi(0) => Verdict::StrictlySemistable,
            Some(_) => Verdict::Unstable,
        }
    }
}

/// Verdict of a filtration-based scan, with the minimising filtration when
/// the minimum is not strictly positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationJudgement {
    pub verdict: Verdict,
    /// Minimum of the functional over proper filtrations; `None` when the
    /// catalog offers no proper filtration at all.
    pub margin: Option<Q>,
    pub witness: Option<WeightedFiltration>,
}

/// Verdict of a subobject-based scan, with the most destabilising subobject.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubobjectJudgement {
    pub verdict: Verdict,
    pub margin: Option<Q>,
    pub witness: Option<SubIdx>,
}

/// Finite grid of positive weights used to sweep weighted filtrations.
///
/// The functionals are positively homogeneous in the weights, so scaling
/// the grid never changes a verdict; numerators `1..=3` over denominator 1
/// are the default.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightGrid {
    values: Vec<Q>,
}

impl WeightGrid {
    pub fn new(values: Vec<Q>) -> Result<Self, Error> {
        if values.is_empty() {
            return Err(Error::EmptyWeightGrid);
        }
        if values.iter().any(|v| *v <= qi(0)) {
            return Err(Error::validation("weight grid: weights must be positive"));
        }
        Ok(WeightGrid { values })
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn scaled(&self, factor: Q) -> Result<Self, Error> {
        Self::new(self.values.iter().map(|v| v * factor).collect())
    }
}

impl Default for WeightGrid {
    fn default() -> Self {
        WeightGrid {
            values: vec![qi(1), qi(2), qi(3)],
        }
    }
}

/// Parabolic degree at the frozen stability parameter α = 1:
/// `deg F − dim q(F_{x1} ⊕ F_{x2})`.
pub fn parabolic_degree(f: &SubobjectDescriptor) -> Q {
    alpha_parabolic_degree(f, qi(1))
}

/// The α-parabolic degree `deg F − α · dim q(F_{x1} ⊕ F_{x2})`. Only α = 1
/// is exercised by the predicates; the general form is kept for reference.
pub fn alpha_parabolic_degree(f: &SubobjectDescriptor, alpha: Q) -> Q {
    qi(f.degree) - alpha * qi(i64::from(f.qdim))
}

/// Parabolic slope `deg_par(F) / rk F`.
pub fn parabolic_slope(f: &SubobjectDescriptor) -> Result<Q, Error> {
    if f.rank == 0 {
        return Err(Error::ZeroRank);
    }
    Ok(parabolic_degree(f) / qi(i64::from(f.rank)))
}

/// The γ weight vector of an abstract weighted filtration:
/// `γ = Σ_j α_j (rk E_j − r, …, rk E_j − r, rk E_j, …, rk E_j)` with the
/// first block repeated `rk E_j` times and the second `r − rk E_j` times.
///
/// Components are non-decreasing and sum to zero.
pub fn gamma_vector(step_ranks: &[u32], weights: &[Q], rank: u32) -> Vec<Q> {
    let r = rank as usize;
    let mut gamma = vec![qi(0); r];
    for (&rk, &w) in step_ranks.iter().zip(weights) {
        let rk = rk as usize;
        for (i, g) in gamma.iter_mut().enumerate() {
            if i < rk {
                *g += w * qi(rk as i64 - r as i64);
            } else {
                *g += w * qi(rk as i64);
            }
        }
    }
    gamma
}

/// γ vector of a filtration drawn from a model's catalog.
pub fn gamma_vector_of(model: &BundleModel, filt: &WeightedFiltration) -> Vec<Q> {
    let ranks: Vec<u32> = filt.steps.iter().map(|&s| model.sub(s).rank).collect();
    gamma_vector(&ranks, &filt.weights, model.rank())
}

/// Per-block γ values of a filtration: entry `j` is the common component of
/// the γ vector on the indices belonging to `E_{j+1} \ E_j` (the last entry
/// is the block of `E` itself).
fn gamma_blocks(model: &BundleModel, filt: &WeightedFiltration) -> Vec<Q> {
    let gamma = gamma_vector_of(model, filt);
    let mut blocks = Vec::with_capacity(filt.len() + 1);
    for (j, &step) in filt.steps.iter().enumerate() {
        let lo = if j == 0 {
            0
        } else {
            model.sub(filt.steps[j - 1]).rank as usize
        };
        debug_assert!((model.sub(step).rank as usize) > lo);
        blocks.push(gamma[lo]);
    }
    let last_lo = filt
        .steps
        .last()
        .map(|&s| model.sub(s).rank as usize)
        .unwrap_or(0);
    blocks.push(if last_lo < gamma.len() {
        gamma[last_lo]
    } else {
        qi(0)
    });
    blocks
}

/// μ of a weighted filtration:
/// `−min { γ_{j1} + … + γ_{ja} }` over tensor tuples on which the decoration
/// does not vanish, block values read off the γ vector.
///
/// Computed by exhaustive enumeration of all `(s+1)^a` tuples; this is the
/// definitional route, deliberately independent of [`mu_subsheaf`].
pub fn mu_filtration(model: &BundleModel, filt: &WeightedFiltration) -> Result<Q, Error> {
    model.validate_filtration(filt)?;
    let blocks = gamma_blocks(model, filt);
    let a = model.deco().a as usize;
    let nblocks = filt.len() + 1;
    let mut tuple = vec![0usize; a];
    let mut best: Option<Q> = None;
    loop {
        if model.tuple_admissible(&filt.steps, &tuple) {
            let sum: Q = tuple.iter().map(|&b| blocks[b]).sum();
            best = Some(match best {
                None => sum,
                Some(b) if sum < b => sum,
                Some(b) => b,
            });
        }
        // next tuple in base (s+1)
        let mut pos = 0;
        loop {
            if pos == a {
                return best.map(|b| -b).ok_or(Error::NoAdmissibleTuple);
            }
            tuple[pos] += 1;
            if tuple[pos] < nblocks {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
    }
}

/// The vanishing pattern a filtration derives from the profile: all tensor
/// tuples (as vectors of block indices, block `s` being `E` itself) on
/// which the decoration does not vanish. Up-closed under the componentwise
/// order on blocks for κ-profiles.
pub fn vanishing_pattern(model: &BundleModel, filt: &WeightedFiltration) -> Vec<Vec<usize>> {
    let a = model.deco().a as usize;
    let nblocks = filt.len() + 1;
    let mut tuple = vec![0usize; a];
    let mut out = Vec::new();
    loop {
        if model.tuple_admissible(&filt.steps, &tuple) {
            out.push(tuple.clone());
        }
        let mut pos = 0;
        loop {
            if pos == a {
                return out;
            }
            tuple[pos] += 1;
            if tuple[pos] < nblocks {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
    }
}

/// μ of the one-step filtration `(0 ⊂ F ⊂ E, (1))` in closed form:
/// `κ(F) · rk E − a · rk F`.
pub fn mu_subsheaf(model: &BundleModel, f: SubIdx) -> Q {
    let kf = i64::from(model.kappa(f));
    let r = i64::from(model.rank());
    let a = i64::from(model.deco().a);
    let rk_f = i64::from(model.sub(f).rank);
    qi(kf * r - a * rk_f)
}

/// The parabolic P-functional of a weighted filtration:
/// `Σ_j α_j [ rk E_j · deg_par(E) − rk E · deg_par(E_j) ]`.
pub fn p_functional(model: &BundleModel, filt: &WeightedFiltration) -> Q {
    filt.steps
        .iter()
        .zip(&filt.weights)
        .map(|(&step, &w)| w * p_one_step(model, step))
        .sum()
}

/// P of the one-step filtration through `F`.
pub fn p_one_step(model: &BundleModel, f: SubIdx) -> Q {
    let deg_par_e = parabolic_degree(model.sub(model.full()));
    let deg_par_f = parabolic_degree(model.sub(f));
    qi(i64::from(model.sub(f).rank)) * deg_par_e - qi(i64::from(model.rank())) * deg_par_f
}

/// μ contribution of a decoration to a stability functional: zero when the
/// decoration vanishes identically, the brute-force μ otherwise.
fn mu_term(model: &BundleModel, filt: &WeightedFiltration) -> Result<Q, Error> {
    if model.global_epsilon() {
        mu_filtration(model, filt)
    } else {
        Ok(qi(0))
    }
}

/// All strictly increasing chains of proper subobjects, the empty chain
/// first, in lexicographic catalog order.
pub fn chains(model: &BundleModel) -> Vec<Vec<SubIdx>> {
    fn extend(model: &BundleModel, prefix: &mut Vec<SubIdx>, out: &mut Vec<Vec<SubIdx>>) {
        let start = prefix.last().map(|s| s.0 + 1).unwrap_or(1);
        for next in start..model.full().0 {
            let next = SubIdx(next);
            if prefix.last().is_none_or(|&last| model.lt(last, next)) {
                prefix.push(next);
                out.push(prefix.clone());
                extend(model, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = vec![Vec::new()];
    extend(model, &mut Vec::new(), &mut out);
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Primitive representative of a weight tuple under positive scaling:
/// cleared to integers and divided by their gcd.
pub fn canonical_weights(weights: &[Q]) -> Vec<Q> {
    let lcm = weights
        .iter()
        .fold(1i64, |acc, w| acc / gcd(acc, *w.denom()) * w.denom());
    let numers: Vec<i64> = weights
        .iter()
        .map(|w| w.numer() * (lcm / w.denom()))
        .collect();
    let g = numers.iter().fold(0i64, |acc, &n| gcd(acc, n)).max(1);
    numers.iter().map(|&n| qi(n / g)).collect()
}

/// All weighted filtrations over a chain for a weight grid, one per scaling
/// class (the functionals are homogeneous, so scaled copies carry no new
/// information), in lexicographic grid order.
pub fn weightings(chain: &[SubIdx], grid: &WeightGrid) -> Vec<WeightedFiltration> {
    let s = chain.len();
    if s == 0 {
        return vec![WeightedFiltration::empty()];
    }
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let g = grid.values();
    let mut picks = vec![0usize; s];
    loop {
        let weights = canonical_weights(&picks.iter().map(|&i| g[i]).collect::<Vec<_>>());
        if seen.insert(weights.clone()) {
            out.push(WeightedFiltration::new(chain.to_vec(), weights));
        }
        let mut pos = s;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            picks[pos] += 1;
            if picks[pos] < g.len() {
                break;
            }
            picks[pos] = 0;
        }
    }
}

fn scan<F>(
    model: &BundleModel,
    grid: &WeightGrid,
    mut value: F,
) -> Result<FiltrationJudgement, Error>
where
    F: FnMut(&WeightedFiltration) -> Result<Q, Error>,
{
    if grid.values().is_empty() {
        return Err(Error::EmptyWeightGrid);
    }
    let mut min: Option<(Q, WeightedFiltration)> = None;
    for chain in chains(model) {
        if chain.is_empty() {
            continue;
        }
        for filt in weightings(&chain, grid) {
            let v = value(&filt)?;
            // strict '<' keeps the first (lexicographically smallest) witness
            if min.as_ref().is_none_or(|(best, _)| v < *best) {
                min = Some((v, filt));
            }
        }
    }
    let verdict = Verdict::from_min(min.as_ref().map(|(v, _)| *v));
    let (margin, witness) = match min {
        Some((v, w)) => (Some(v), (v <= qi(0)).then_some(w)),
        None => (None, None),
    };
    Ok(FiltrationJudgement {
        verdict,
        margin,
        witness,
    })
}

/// δ-semistability of a decorated model: `P(E^•, α) + δ μ(E^•, α; φ) >= 0`
/// over every weighted filtration from the catalog and weight grid.
pub fn is_dgpb_semistable(
    model: &BundleModel,
    delta: Q,
    grid: &WeightGrid,
) -> Result<FiltrationJudgement, Error> {
    scan(model, grid, |filt| {
        Ok(p_functional(model, filt) + delta * mu_term(model, filt)?)
    })
}

/// One-step reduction of δ-semistability: checks
/// `P(F) + δ μ(F, E) >= 0` on single subobjects only, entirely in closed
/// form. For κ-profiles μ is additive over filtrations, so this verdict
/// agrees with the full scan; for explicit patterns additivity can fail and
/// the full [`is_dgpb_semistable`] scan is authoritative.
pub fn is_dgpb_semistable_one_step(model: &BundleModel, delta: Q) -> FiltrationJudgement {
    let mut min: Option<(Q, SubIdx)> = None;
    for f in model.proper() {
        let mu = if model.global_epsilon() {
            mu_subsheaf(model, f)
        } else {
            qi(0)
        };
        let value = p_one_step(model, f) + delta * mu;
        if min.as_ref().is_none_or(|(best, _)| value < *best) {
            min = Some((value, f));
        }
    }
    let verdict = Verdict::from_min(min.as_ref().map(|(v, _)| *v));
    let (margin, witness) = match min {
        Some((v, f)) => (
            Some(v),
            (v <= qi(0)).then(|| WeightedFiltration::new(vec![f], vec![qi(1)])),
        ),
        None => (None, None),
    };
    FiltrationJudgement {
        verdict,
        margin,
        witness,
    }
}

/// (δ1, δ2)-semistability of a doubly decorated model:
/// `P + δ1 μ_{ρ_{a1,b1}} + δ2 μ_{ρ_{a2,b2}} >= 0` over every filtration.
///
/// The two models must share the bundle core and catalog.
pub fn is_2dgpb_semistable(
    first: &BundleModel,
    second: &BundleModel,
    delta1: Q,
    delta2: Q,
    grid: &WeightGrid,
) -> Result<FiltrationJudgement, Error> {
    check_same_core(first, second)?;
    scan(first, grid, |filt| {
        Ok(p_functional(first, filt)
            + delta1 * mu_term(first, filt)?
            + delta2 * mu_term(second, filt)?)
    })
}

fn check_same_core(first: &BundleModel, second: &BundleModel) -> Result<(), Error> {
    let same = first.rank() == second.rank()
        && first.degree() == second.degree()
        && first.genus() == second.genus()
        && first.dim_r() == second.dim_r()
        && first.catalog_len() == second.catalog_len()
        && first.all().all(|i| first.sub(i) == second.sub(i))
        && first
            .all()
            .all(|i| first.all().all(|j| first.leq(i, j) == second.leq(i, j)));
    if same {
        Ok(())
    } else {
        Err(Error::CatalogMismatch)
    }
}

/// Segre combination of two decorations over the same bundle:
/// `a = a1 + a2`, `b = b1 b2`, `c = c1 + c2`, `deg L = deg L1 + deg L2`.
///
/// A tensor tuple is admissible for the combination exactly when its first
/// `a1` slots are admissible for the first profile and its last `a2` slots
/// for the second; for κ-profiles this collapses to `κ = κ1 + κ2`.
pub fn combine_decorations(
    first: &BundleModel,
    second: &BundleModel,
) -> Result<BundleModel, Error> {
    check_same_core(first, second)?;
    let (d1, d2) = (*first.deco(), *second.deco());
    if d1.deg_d != d2.deg_d {
        return Err(Error::validation(
            "combine: decorations fix different determinants",
        ));
    }
    let deco = DecorationType::new(
        d1.a + d2.a,
        d1.b * d2.b,
        d1.c + d2.c,
        d1.deg_l + d2.deg_l,
        d1.deg_d,
    );
    let epsilon = first.global_epsilon() && second.global_epsilon();
    let profile = if !epsilon {
        ProfileData::Kappa {
            kappa: first
                .proper()
                .map(|i| (first.sub(i).id.clone(), 0))
                .collect(),
            global_epsilon: false,
        }
    } else if first.is_kappa_profile() && second.is_kappa_profile() {
        ProfileData::Kappa {
            kappa: first
                .proper()
                .map(|i| (first.sub(i).id.clone(), first.kappa(i) + second.kappa(i)))
                .collect(),
            global_epsilon: true,
        }
    } else {
        ProfileData::Explicit {
            admissible: product_pattern(first, second),
            global_epsilon: true,
        }
    };
    first.with_decoration(deco, &profile)
}

/// Catalog-id tuples of the slot-wise product of two profiles.
fn product_pattern(
    first: &BundleModel,
    second: &BundleModel,
) -> std::collections::BTreeSet<Vec<String>> {
    let s1 = induced_tuples(first);
    let s2 = induced_tuples(second);
    let mut out = std::collections::BTreeSet::new();
    for t1 in &s1 {
        for t2 in &s2 {
            let mut t = t1.clone();
            t.extend(t2.iter().cloned());
            out.insert(t);
        }
    }
    out
}

/// The full admissible-tuple set of a profile over the catalog, by ids.
pub(crate) fn induced_tuples(model: &BundleModel) -> Vec<Vec<String>> {
    let a = model.deco().a as usize;
    let n = model.catalog_len();
    let mut out = Vec::new();
    if !model.global_epsilon() {
        return out;
    }
    let mut tuple = vec![1usize; a];
    loop {
        if model.tuple_admissible_catalog(&tuple) {
            out.push(
                tuple
                    .iter()
                    .map(|&g| model.sub(SubIdx(g)).id.clone())
                    .collect(),
            );
        }
        let mut pos = 0;
        loop {
            if pos == a {
                return out;
            }
            tuple[pos] += 1;
            if tuple[pos] < n {
                break;
            }
            tuple[pos] = 1;
            pos += 1;
        }
    }
}

/// Does the combined decoration's μ split as `μ1 + μ2` on this filtration,
/// with each side computed by its own tuple enumeration?
pub fn mu_segre_additive_check(
    first: &BundleModel,
    second: &BundleModel,
    filt: &WeightedFiltration,
) -> Result<bool, Error> {
    let combined = combine_decorations(first, second)?;
    let lhs = mu_term(&combined, filt)?;
    let rhs = mu_term(first, filt)? + mu_term(second, filt)?;
    Ok(lhs == rhs)
}

/// fr-slope of a subobject:
/// `deg_par(F)/rk F − δ a ε(φ|_F)/rk F`, with `ε(φ|_F) = [κ(F) = a]`.
pub fn fr_slope(model: &BundleModel, f: SubIdx, delta: Q) -> Result<Q, Error> {
    let sub = model.sub(f);
    if sub.rank == 0 {
        return Err(Error::ZeroRank);
    }
    let eps = i64::from(model.eps_restricted(f));
    let a = i64::from(model.deco().a);
    Ok((parabolic_degree(sub) - delta * qi(a * eps)) / qi(i64::from(sub.rank)))
}

/// fr-semistability: `μ^fr(E, φ) − μ^fr(F, φ|_F) >= 0` for every proper
/// nonzero catalog subobject, with the most destabilising subobject as
/// witness.
pub fn is_fr_semistable(model: &BundleModel, delta: Q) -> SubobjectJudgement {
    let slope_e = fr_slope(model, model.full(), delta).expect("full bundle has positive rank");
    let mut min: Option<(Q, SubIdx)> = None;
    for f in model.proper() {
        let diff = slope_e - fr_slope(model, f, delta).expect("proper subobjects have rank >= 1");
        if min.as_ref().is_none_or(|(best, _)| diff < *best) {
            min = Some((diff, f));
        }
    }
    let verdict = Verdict::from_min(min.as_ref().map(|(v, _)| *v));
    let (margin, witness) = match min {
        Some((v, w)) => (Some(v), (v <= qi(0)).then_some(w)),
        None => (None, None),
    };
    SubobjectJudgement {
        verdict,
        margin,
        witness,
    }
}

/// Numerical shadow of the vanishing dichotomy behind the δ threshold: for
/// descending models, `μ1 = 0` exactly on β-filtrations and `μ2 = 0`
/// exactly on Higgs-invariant ones. The flags are user data; this reports
/// whether they are consistent with the μ values, it never assumes so.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlagReport {
    pub mu1_zero: bool,
    pub beta_chain: bool,
    pub mu2_zero: bool,
    pub higgs_chain: bool,
}

impl FlagReport {
    pub fn consistent(&self) -> bool {
        self.mu1_zero == self.beta_chain && self.mu2_zero == self.higgs_chain
    }
}

/// Compares the vanishing of the two decoration μ's on a filtration with
/// the β- and Higgs-invariance flags carried by its steps.
pub fn flag_report(
    first: &BundleModel,
    second: &BundleModel,
    filt: &WeightedFiltration,
) -> Result<FlagReport, Error> {
    check_same_core(first, second)?;
    first.validate_filtration(filt)?;
    Ok(FlagReport {
        mu1_zero: mu_term(first, filt)? == qi(0),
        beta_chain: filt.steps.iter().all(|&s| first.sub(s).beta_flag),
        mu2_zero: mu_term(second, filt)? == qi(0),
        higgs_chain: filt.steps.iter().all(|&s| first.sub(s).higgs_flag),
    })
}

/// Boundedness constants of the family of (δ1, δ2)-semistable models:
/// `C = −a1(r−1) − a2(r−1)` and the slope cap `(d + r² − C)/r`.
pub fn boundedness_constants(
    deco1: &DecorationType,
    deco2: &DecorationType,
    rank: u32,
    degree: i64,
) -> (Q, Q) {
    let r = i64::from(rank);
    let c = qi(-(i64::from(deco1.a) * (r - 1)) - i64::from(deco2.a) * (r - 1));
    let bound = (qi(degree) + qi(r * r) - c) / qi(r);
    (c, bound)
}

/// The δ threshold above which descending semistability and decorated
/// semistability agree: `max(|C|·r·α·(r−1), |C|·(r−1))`.
///
/// The magnitude of `C` is used so the threshold is nonnegative for the
/// negative `C` produced by [`boundedness_constants`].
pub fn delta_threshold(c: Q, rank: u32, alpha_max: Q) -> Q {
    let r = i64::from(rank);
    let abs_c = if c < qi(0) { -c } else { c };
    let first = abs_c * qi(r) * alpha_max * qi(r - 1);
    let second = abs_c * qi(r - 1);
    if first > second {
        first
    } else {
        second
    }
}

/// Reduces an n-uple of twisted endomorphisms `φ_i: E → E ⊗ L_i` to the
/// decoration type of the single pair `φ: E → E ⊗ L` with `L = ⊗ L_i`.
///
/// Zero morphisms must already be dropped by the caller (every subobject is
/// invariant under them). The pair lives inside `E^{⊗r} ⊗ (det E)^{⊗-1}`,
/// so the host type is `(a, b, c) = (r, 1, 1)`.
pub fn nuple_reduce(rank: u32, target_degrees: &[i64]) -> Result<DecorationType, Error> {
    if target_degrees.is_empty() {
        return Err(Error::EmptyList);
    }
    Ok(DecorationType::new(
        rank.max(1),
        1,
        1,
        target_degrees.iter().sum(),
        0,
    ))
}
