//! Hilbert-Mumford point stability for the parameter-scheme model.
//!
//! A point of the parameter scheme is tested against nontrivial proper
//! subspaces `Y' ⊂ Y` via the special one-parameter subgroups
//! `ξ^{(i)} = (i−k, …, i−k, i, …, i)`. Two equivalent forms are kept as
//! independent code paths: the raw three-term `μ(λ)` combination read off a
//! `ϖ` profile, and the closed subspace inequality
//! `dim Y' (n1 P_E(l) + r n2 + a n3) ≤ dim Y (n1 P_{E'}(l) + n2 qdim + a n3 ε)`.
//! Substituting the linearization ratios and comparing leading coefficients
//! in `l` reduces point stability back to the fr-semistability of the
//! bundle model; `equivalence_check` crosses all three routes.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::model::{BundleModel, SubIdx};
use crate::rational::{qi, sign, Q};
use crate::stability::fr_slope;
use crate::stability::Verdict;

/// Hilbert polynomial of a sheaf of the given rank, degree and genus,
/// evaluated at the twist `l`: `rank·l + degree + (1−genus)·rank`.
pub fn hilbert(rank: u32, degree: i64, genus: u32, l: i64) -> i64 {
    let r = i64::from(rank);
    r * l + degree + (1 - i64::from(genus)) * r
}

/// Decorated Hilbert polynomial `P̃ = P − qdim − a·δ·ε` at the twist `l`.
#[allow(clippy::too_many_arguments)]
pub fn decorated_hilbert(
    rank: u32,
    degree: i64,
    genus: u32,
    qdim: u32,
    a: u32,
    delta: Q,
    eps: bool,
    l: i64,
) -> Q {
    qi(hilbert(rank, degree, genus, l))
        - qi(i64::from(qdim))
        - qi(i64::from(a)) * delta * qi(i64::from(eps))
}

/// `P̃` of a catalog subobject, with `ε(φ|_F) = [κ(F) = a]`.
pub fn decorated_hilbert_sub(model: &BundleModel, f: SubIdx, delta: Q, l: i64) -> Q {
    let s = model.sub(f);
    let eps = if f == model.full() {
        model.global_epsilon()
    } else {
        model.eps_restricted(f)
    };
    decorated_hilbert(
        s.rank,
        s.degree,
        model.genus(),
        s.qdim,
        model.deco().a,
        delta,
        eps,
        l,
    )
}

/// Relative linearization weights `(n2/n1, n3/n1)` matching bundle
/// semistability: `n2/n1 = P̃(l)/P̃(m) − 1` and `n3/n1 = δ P̃(l)/P̃(m) − δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinearizationRatios {
    pub n2_over_n1: Q,
    pub n3_over_n1: Q,
}

pub fn linearization_ratios(
    model: &BundleModel,
    m: i64,
    l: i64,
    delta: Q,
) -> Result<LinearizationRatios, Error> {
    let at_m = decorated_hilbert_sub(model, model.full(), delta, m);
    if at_m <= qi(0) {
        return Err(Error::NonpositiveDecoratedPolynomial(m));
    }
    let ratio = decorated_hilbert_sub(model, model.full(), delta, l) / at_m;
    Ok(LinearizationRatios {
        n2_over_n1: ratio - qi(1),
        n3_over_n1: delta * ratio - delta,
    })
}

/// Weight vector of a one-parameter subgroup of the special linear group:
/// non-decreasing integers summing to zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneParameterWeights {
    xi: Vec<i64>,
}

impl OneParameterWeights {
    pub fn new(xi: Vec<i64>) -> Result<Self, Error> {
        if xi.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::validation("weights must be non-decreasing"));
        }
        if xi.iter().sum::<i64>() != 0 {
            return Err(Error::validation("weights must sum to zero"));
        }
        Ok(OneParameterWeights { xi })
    }

    pub fn xi(&self) -> &[i64] {
        &self.xi
    }
}

/// The special battery `ξ^{(i)} = (i−k × i, i × (k−i))` for `1 ≤ i ≤ k−1`.
pub fn special_weights(k: usize, i: usize) -> Result<OneParameterWeights, Error> {
    if i == 0 || i >= k {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: k.saturating_sub(1),
        });
    }
    let (ik, kk) = (i as i64, k as i64);
    let mut xi = vec![ik - kk; i];
    xi.extend(std::iter::repeat_n(ik, k - i));
    OneParameterWeights::new(xi)
}

/// `μ(λ; 𝔥'') = −Σ_i ξ_i (ϖ(i) − ϖ(i−1))` for a dimension profile
/// `ϖ: {0..k} → ℕ` with `ϖ(0) = 0`.
pub fn mu_hilbert_mumford(xi: &OneParameterWeights, wpi: &[i64]) -> Result<i64, Error> {
    let k = xi.xi.len();
    validate_wpi(wpi, k)?;
    Ok(-(1..=k)
        .map(|i| xi.xi[i - 1] * (wpi[i] - wpi[i - 1]))
        .sum::<i64>())
}

fn validate_wpi(wpi: &[i64], k: usize) -> Result<(), Error> {
    if wpi.len() != k + 1 {
        return Err(Error::validation(format!(
            "wpi must have {} entries, got {}",
            k + 1,
            wpi.len()
        )));
    }
    if wpi[0] != 0 {
        return Err(Error::validation("wpi(0) must be 0"));
    }
    if wpi.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::validation("wpi must be non-decreasing"));
    }
    Ok(())
}

/// One recorded subspace `Y' ⊂ Y`: its dimension, the dimension profile
/// `ϖ` of an adapted basis, `dim g(Y'_1 ⊕ Y'_2)`, and whether the decoration
/// survives on `Y'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceRecord {
    pub id: String,
    pub dim_y_prime: usize,
    pub wpi: Vec<i64>,
    pub gdim: u32,
    pub eps: bool,
}

/// Numerical avatar of a point of the parameter scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GitPointModel {
    pub bundle: BundleModel,
    pub m: i64,
    pub l: i64,
    /// `dim Y`; equals `P_E(m)` for bundle-induced points.
    pub k: usize,
    pub subspaces: Vec<SubspaceRecord>,
    /// `(n1, n2, n3)`, all positive.
    pub linearization: (Q, Q, Q),
}

impl GitPointModel {
    pub fn new(
        bundle: BundleModel,
        m: i64,
        l: i64,
        k: usize,
        subspaces: Vec<SubspaceRecord>,
        linearization: (Q, Q, Q),
    ) -> Result<Self, Error> {
        let point = GitPointModel {
            bundle,
            m,
            l,
            k,
            subspaces,
            linearization,
        };
        point.validate()?;
        Ok(point)
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.k == 0 {
            return Err(Error::validation("git point: k must be >= 1"));
        }
        let (n1, n2, n3) = self.linearization;
        if n1 <= qi(0) || n2 <= qi(0) || n3 <= qi(0) {
            return Err(Error::validation(
                "git point: linearization weights must be positive",
            ));
        }
        let p_l = hilbert(
            self.bundle.rank(),
            self.bundle.degree(),
            self.bundle.genus(),
            self.l,
        );
        for rec in &self.subspaces {
            if rec.dim_y_prime > self.k {
                return Err(Error::validation(format!(
                    "subspace {}: dim Y' exceeds k",
                    rec.id
                )));
            }
            validate_wpi(&rec.wpi, self.k)?;
            if rec.wpi[self.k] != p_l {
                return Err(Error::validation(format!(
                    "subspace {}: wpi(k) = {} must equal P_E(l) = {}",
                    rec.id, rec.wpi[self.k], p_l
                )));
            }
            if u64::from(rec.gdim) > (2 * rec.dim_y_prime) as u64 || rec.gdim > self.bundle.dim_r()
            {
                return Err(Error::validation(format!(
                    "subspace {}: gdim exceeds min(2 dim Y', dim R)",
                    rec.id
                )));
            }
        }
        Ok(())
    }

    fn p_l(&self) -> i64 {
        hilbert(
            self.bundle.rank(),
            self.bundle.degree(),
            self.bundle.genus(),
            self.l,
        )
    }

    /// Margin `RHS − LHS` of the subspace inequality for one record.
    pub fn subspace_margin(&self, rec: &SubspaceRecord) -> Q {
        let (n1, n2, n3) = self.linearization;
        let a = qi(i64::from(self.bundle.deco().a));
        let r = qi(i64::from(self.bundle.rank()));
        let lhs = qi(rec.dim_y_prime as i64) * (n1 * qi(self.p_l()) + r * n2 + a * n3);
        let rhs = qi(self.k as i64)
            * (n1 * qi(rec.wpi[rec.dim_y_prime])
                + n2 * qi(i64::from(rec.gdim))
                + a * n3 * qi(i64::from(rec.eps)));
        rhs - lhs
    }

    /// The same margin through the raw one-parameter-subgroup route:
    /// `n1 μ(λ^{(i)}; 𝔥'') + n2 μ(λ^{(i)}; g) + n3 μ^fr(λ^{(i)}; f)`
    /// for the special subgroup at `i = dim Y'`. Only defined for
    /// `0 < dim Y' < k`.
    pub fn three_term_margin(&self, rec: &SubspaceRecord) -> Result<Q, Error> {
        let i = rec.dim_y_prime;
        let xi = special_weights(self.k, i)?;
        let mu1 = mu_hilbert_mumford(&xi, &rec.wpi)?;
        let k = self.k as i64;
        let r = i64::from(self.bundle.rank());
        let a = i64::from(self.bundle.deco().a);
        let mu2 = k * i64::from(rec.gdim) - r * i as i64;
        let mu3 = if rec.eps {
            a * (k - i as i64)
        } else {
            -a * i as i64
        };
        let (n1, n2, n3) = self.linearization;
        Ok(n1 * qi(mu1) + n2 * qi(mu2) + n3 * qi(mu3))
    }
}

/// Judgement of a point against its recorded subspaces, with the most
/// violating record as witness. Trivial records (`dim Y'` equal to 0 or k)
/// never decide the verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointJudgement {
    pub verdict: Verdict,
    pub margin: Option<Q>,
    pub witness: Option<usize>,
}

pub fn is_git_semistable_point(point: &GitPointModel) -> PointJudgement {
    let mut min: Option<(Q, usize)> = None;
    for (idx, rec) in point.subspaces.iter().enumerate() {
        if rec.dim_y_prime == 0 || rec.dim_y_prime == point.k {
            continue;
        }
        let margin = point.subspace_margin(rec);
        if min.as_ref().is_none_or(|(best, _)| margin < *best) {
            min = Some((margin, idx));
        }
    }
    let verdict = match min {
        None => Verdict::Stable,
        Some((v, _)) if v > qi(0) => Verdict::Stable,
        Some((v, _)) if v == qi(0) => Verdict::StrictlySemistable,
        Some(_) => Verdict::Unstable,
    };
    let (margin, witness) = match min {
        Some((v, w)) => (Some(v), (v <= qi(0)).then_some(w)),
        None => (None, None),
    };
    PointJudgement {
        verdict,
        margin,
        witness,
    }
}

/// Smallest twist making `P̃_F > 0` for every positive-rank catalog entry.
pub fn default_m0(model: &BundleModel, delta: Q) -> i64 {
    let mut m0 = i64::MIN;
    for f in model.proper().chain([model.full()]) {
        // smallest integer m with rank·m + offset > 0
        let s = model.sub(f);
        let offset = decorated_hilbert_sub(model, f, delta, 0);
        let rank = qi(i64::from(s.rank));
        // smallest integer strictly above -offset/rank
        let bound = -offset / rank;
        m0 = m0.max(bound.floor().to_integer() + 1);
    }
    m0
}

/// Default sample base: twice the default `m0`, and always beyond it.
pub fn default_l0(m0: i64) -> i64 {
    (2 * m0).max(m0 + 1)
}

/// Builds the bundle-induced point at twists `(m, l)`: `k = P_E(m)`,
/// linearization `(1, n2/n1, n3/n1)`, one subspace record per proper
/// subobject with `dim Y' = P_F(m)` and a synthesized `ϖ` staircase hitting
/// `P_F(l)` at `dim Y'`.
pub fn point_from_bundle(
    model: &BundleModel,
    m: i64,
    l: i64,
    delta: Q,
) -> Result<GitPointModel, Error> {
    if l <= m {
        return Err(Error::validation("git point: l must exceed m"));
    }
    if delta <= qi(0) {
        return Err(Error::validation("git point: delta must be positive"));
    }
    let ratios = linearization_ratios(model, m, l, delta)?;
    let k_int = hilbert(model.rank(), model.degree(), model.genus(), m);
    if k_int <= 0 {
        return Err(Error::validation("git point: P_E(m) must be positive"));
    }
    let k = k_int as usize;
    let p_l = hilbert(model.rank(), model.degree(), model.genus(), l);
    let mut subspaces = Vec::new();
    for f in model.proper() {
        let s = model.sub(f);
        let dim = hilbert(s.rank, s.degree, model.genus(), m);
        if dim <= 0 || dim >= k_int {
            continue;
        }
        let value = hilbert(s.rank, s.degree, model.genus(), l).clamp(0, p_l);
        subspaces.push(SubspaceRecord {
            id: s.id.clone(),
            dim_y_prime: dim as usize,
            wpi: staircase(k, dim as usize, value, p_l),
            gdim: s.qdim,
            eps: model.eps_restricted(f),
        });
    }
    GitPointModel::new(
        model.clone(),
        m,
        l,
        k,
        subspaces,
        (qi(1), ratios.n2_over_n1, ratios.n3_over_n1),
    )
}

/// Monotone integer staircase through `(0, 0)`, `(i0, v0)` and `(k, p_l)`.
fn staircase(k: usize, i0: usize, v0: i64, p_l: i64) -> Vec<i64> {
    let mut wpi = Vec::with_capacity(k + 1);
    for i in 0..=k {
        let value = if i <= i0 {
            if i0 == 0 {
                0
            } else {
                v0 * i as i64 / i0 as i64
            }
        } else {
            v0 + (p_l - v0) * (i - i0) as i64 / (k - i0) as i64
        };
        wpi.push(value);
    }
    wpi
}

/// `r·P̃_{E'}(m) ≤ rk E'·P̃_E(m)`: the leading-coefficient reduction of the
/// substituted point inequality. Returns both sides and whether it holds.
pub fn leading_coefficient_reduction(
    model: &BundleModel,
    f: SubIdx,
    m: i64,
    delta: Q,
) -> (Q, Q, bool) {
    let lhs = qi(i64::from(model.rank())) * decorated_hilbert_sub(model, f, delta, m);
    let rhs =
        qi(i64::from(model.sub(f).rank)) * decorated_hilbert_sub(model, model.full(), delta, m);
    (lhs, rhs, lhs <= rhs)
}

/// One row of the equivalence report: for a proper subobject and a sampled
/// twist, both sides of the substituted point inequality, of the
/// leading-coefficient inequality, and of the fr-slope inequality
/// (each in `lhs ≤ rhs ⟺ semistable with respect to F` form).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceRow {
    pub sub_id: String,
    pub l: i64,
    #[serde(with = "crate::rational::serde_pq")]
    pub substituted_lhs: Q,
    #[serde(with = "crate::rational::serde_pq")]
    pub substituted_rhs: Q,
    #[serde(with = "crate::rational::serde_pq")]
    pub leading_lhs: Q,
    #[serde(with = "crate::rational::serde_pq")]
    pub leading_rhs: Q,
    #[serde(with = "crate::rational::serde_pq")]
    pub fr_lhs: Q,
    #[serde(with = "crate::rational::serde_pq")]
    pub fr_rhs: Q,
    /// The three margins have identical sign.
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub rows: Vec<EquivalenceRow>,
    pub all_agree: bool,
}

/// Evaluates, for every proper subobject and every sampled `l`, the
/// substituted point inequality `P̃_E(l) P̃_{E'}(m) ≤ P̃_E(m) P̃_{E'}(l)`,
/// the leading-coefficient inequality, and the fr-slope inequality, and
/// reports whether their margins agree in sign. All arithmetic exact.
pub fn equivalence_check(
    model: &BundleModel,
    m: i64,
    l_samples: &[i64],
    delta: Q,
) -> Result<EquivalenceReport, Error> {
    let e_at_m = decorated_hilbert_sub(model, model.full(), delta, m);
    if e_at_m <= qi(0) {
        return Err(Error::NonpositiveDecoratedPolynomial(m));
    }
    for &l in l_samples {
        if l <= m {
            return Err(Error::validation(format!(
                "equivalence: sampled l = {l} must exceed m = {m}"
            )));
        }
    }
    let fr_rhs = fr_slope(model, model.full(), delta)?;
    let mut rows = Vec::new();
    for f in model.proper() {
        let f_at_m = decorated_hilbert_sub(model, f, delta, m);
        let (lead_lhs, lead_rhs, _) = leading_coefficient_reduction(model, f, m, delta);
        let fr_lhs = fr_slope(model, f, delta)?;
        for &l in l_samples {
            let substituted_lhs = decorated_hilbert_sub(model, model.full(), delta, l) * f_at_m;
            let substituted_rhs = e_at_m * decorated_hilbert_sub(model, f, delta, l);
            let s1 = sign(substituted_rhs - substituted_lhs);
            let s2 = sign(lead_rhs - lead_lhs);
            let s3 = sign(fr_rhs - fr_lhs);
            rows.push(EquivalenceRow {
                sub_id: model.sub(f).id.clone(),
                l,
                substituted_lhs,
                substituted_rhs,
                leading_lhs: lead_lhs,
                leading_rhs: lead_rhs,
                fr_lhs,
                fr_rhs,
                agree: s1 == s2 && s2 == s3,
            });
        }
    }
    let all_agree = rows.iter().all(|r| r.agree);
    Ok(EquivalenceReport { rows, all_agree })
}
