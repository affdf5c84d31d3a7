//! Jordan-Hölder filtrations, graded objects and S-equivalence for
//! fr-semistable models.
//!
//! A Jordan-Hölder chain is a chain of catalog subobjects, each of fr-slope
//! equal to the slope of `E`, whose consecutive factors are fr-stable. The
//! graded object is the multiset of factor quadruples
//! `(rank, degree, qdim, ε)`; two semistable models of equal slope are
//! S-equivalent when their graded multisets coincide — the finest invariant
//! available at the numerical level.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::model::{BundleModel, SubIdx};
use crate::rational::{qi, Q};
use crate::stability::{fr_slope, is_fr_semistable};

/// Numerical type of a subquotient: rank, degree, parabolic quotient
/// dimension, and the indicator of the induced decoration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FactorQuad {
    pub rank: u32,
    pub degree: i64,
    pub qdim: u32,
    pub epsilon: u32,
}

impl FactorQuad {
    /// fr-slope of the factor with the induced decoration.
    pub fn slope(&self, a: u32, delta: Q) -> Result<Q, Error> {
        if self.rank == 0 {
            return Err(Error::ZeroRank);
        }
        Ok((qi(self.degree)
            - qi(i64::from(self.qdim))
            - delta * qi(i64::from(a) * i64::from(self.epsilon)))
            / qi(i64::from(self.rank)))
    }
}

/// Multiset of Jordan-Hölder factor quadruples, kept sorted so equality is
/// multiset equality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedObject {
    factors: Vec<FactorQuad>,
}

impl GradedObject {
    pub fn new(mut factors: Vec<FactorQuad>) -> Self {
        factors.sort();
        GradedObject { factors }
    }

    pub fn factors(&self) -> &[FactorQuad] {
        &self.factors
    }

    /// Factor totals must reproduce the ambient model: ranks sum to `r`,
    /// degrees to `d`, qdims to `dim R`, epsilons to `ε(φ)`.
    pub fn conserves(&self, model: &BundleModel) -> bool {
        let rank: u32 = self.factors.iter().map(|f| f.rank).sum();
        let degree: i64 = self.factors.iter().map(|f| f.degree).sum();
        let qdim: u32 = self.factors.iter().map(|f| f.qdim).sum();
        let eps: u32 = self.factors.iter().map(|f| f.epsilon).sum();
        rank == model.rank()
            && degree == model.degree()
            && qdim == model.dim_r()
            && eps == u32::from(model.global_epsilon())
    }
}

/// A Jordan-Hölder filtration: the proper chain steps, the graded object,
/// and the common fr-slope of all factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanHolder {
    pub steps: Vec<SubIdx>,
    pub graded: GradedObject,
    pub slope: Q,
}

/// Numerical type of the decorated quotient `E/F`: ranks, degrees and qdims
/// subtract, and `ε(φ̄) = ε(φ) − ε(φ|_F)` (the induced decoration on the
/// quotient vanishes exactly when φ already survives on `F^{⊗a}`).
pub fn quotient_descriptor(model: &BundleModel, f: SubIdx) -> FactorQuad {
    factor_quad(model, f, model.full())
}

/// Numerical type of the subquotient `G/F` with its induced decoration.
pub fn factor_quad(model: &BundleModel, f: SubIdx, g: SubIdx) -> FactorQuad {
    let (sf, sg) = (model.sub(f), model.sub(g));
    FactorQuad {
        rank: sg.rank - sf.rank,
        degree: sg.degree - sf.degree,
        qdim: sg.qdim - sf.qdim,
        epsilon: u32::from(model.eps_restricted(g)) - u32::from(model.eps_restricted(f)),
    }
}

/// Is the induced model on the catalog interval `[F, G]` fr-stable at δ?
/// Every catalog element strictly between must give a factor of strictly
/// smaller fr-slope.
pub fn is_stable_factor(
    model: &BundleModel,
    f: SubIdx,
    g: SubIdx,
    delta: Q,
) -> Result<bool, Error> {
    if !model.lt(f, g) {
        return Err(Error::EmptyInterval);
    }
    let a = model.deco().a;
    let ambient = factor_quad(model, f, g).slope(a, delta)?;
    for h in model.all() {
        if model.lt(f, h) && model.lt(h, g) {
            let sub = factor_quad(model, f, h).slope(a, delta)?;
            if sub >= ambient {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn graded_of_chain(model: &BundleModel, steps: &[SubIdx]) -> GradedObject {
    let mut endpoints = Vec::with_capacity(steps.len() + 2);
    endpoints.push(model.zero());
    endpoints.extend_from_slice(steps);
    endpoints.push(model.full());
    GradedObject::new(
        endpoints
            .windows(2)
            .map(|w| factor_quad(model, w[0], w[1]))
            .collect(),
    )
}

/// Greedy Jordan-Hölder filtration of an fr-semistable model: at every
/// stage the minimal-rank catalog subobject above the current step with
/// fr-slope equal to the slope of `E` and a stable interval is selected
/// (ties broken by the deterministic catalog order).
pub fn jordan_holder(model: &BundleModel, delta: Q) -> Result<JordanHolder, Error> {
    if !is_fr_semistable(model, delta).verdict.is_semistable() {
        return Err(Error::NotSemistable);
    }
    let slope = fr_slope(model, model.full(), delta)?;
    let mut steps: Vec<SubIdx> = Vec::new();
    let mut current = model.zero();
    loop {
        let mut chosen = None;
        for g in model.all() {
            if g == model.zero() || !model.lt(current, g) {
                continue;
            }
            if fr_slope(model, g, delta)? != slope {
                continue;
            }
            if is_stable_factor(model, current, g, delta)? {
                chosen = Some(g);
                break;
            }
        }
        match chosen {
            None => return Err(Error::CatalogIncomplete),
            Some(g) if g == model.full() => {
                return Ok(JordanHolder {
                    graded: graded_of_chain(model, &steps),
                    steps,
                    slope,
                });
            }
            Some(g) => {
                steps.push(g);
                current = g;
            }
        }
    }
}

/// Every Jordan-Hölder chain the catalog realizes: all chains of equal-slope
/// steps whose consecutive factors are stable. Used to test that the graded
/// object does not depend on the chain.
pub fn all_jh_chains(model: &BundleModel, delta: Q) -> Result<Vec<Vec<SubIdx>>, Error> {
    if !is_fr_semistable(model, delta).verdict.is_semistable() {
        return Err(Error::NotSemistable);
    }
    let slope = fr_slope(model, model.full(), delta)?;
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    descend(model, delta, slope, model.zero(), &mut prefix, &mut out)?;
    Ok(out)
}

fn descend(
    model: &BundleModel,
    delta: Q,
    slope: Q,
    current: SubIdx,
    prefix: &mut Vec<SubIdx>,
    out: &mut Vec<Vec<SubIdx>>,
) -> Result<(), Error> {
    for g in model.all() {
        if g == model.zero() || !model.lt(current, g) {
            continue;
        }
        if fr_slope(model, g, delta)? != slope || !is_stable_factor(model, current, g, delta)? {
            continue;
        }
        if g == model.full() {
            out.push(prefix.clone());
        } else {
            prefix.push(g);
            descend(model, delta, slope, g, prefix, out)?;
            prefix.pop();
        }
    }
    Ok(())
}

/// Graded object of an explicit chain (steps must be proper and increasing).
pub fn graded_of(model: &BundleModel, steps: &[SubIdx]) -> GradedObject {
    graded_of_chain(model, steps)
}

/// S-equivalence: both models fr-semistable of the same slope, with equal
/// graded multisets.
pub fn s_equivalent(a: &BundleModel, b: &BundleModel, delta: Q) -> Result<bool, Error> {
    let jh_a = jordan_holder(a, delta)?;
    let jh_b = jordan_holder(b, delta)?;
    if jh_a.slope != jh_b.slope {
        return Err(Error::SlopeMismatch);
    }
    Ok(jh_a.graded == jh_b.graded)
}
